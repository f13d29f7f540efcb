//! Dense exact-rational matrices with Gaussian elimination.

use crate::scalar::{self, Scalar};
use num_traits::Zero;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    pub nrows: usize,
    pub ncols: usize,
    data: Vec<Scalar>,
}

impl RatMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        RatMatrix {
            nrows,
            ncols,
            data: vec![scalar::zero(); nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = scalar::one();
        }
        m
    }

    pub fn from_fn(nrows: usize, ncols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut m = Self::zeros(nrows, ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Build from columns (each of length `nrows`).
    pub fn from_columns(nrows: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for i in 0..nrows {
                m[(i, j)] = col[i].clone();
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.nrows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn transpose(&self) -> RatMatrix {
        Self::from_fn(self.ncols, self.nrows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in matmul");
        let mut out = Self::zeros(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        Self::from_fn(self.nrows, self.ncols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn scale(&self, s: &Scalar) -> RatMatrix {
        Self::from_fn(self.nrows, self.ncols, |i, j| &self[(i, j)] * s)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ncols);
        (0..self.nrows)
            .map(|i| {
                let mut s = scalar::zero();
                for j in 0..self.ncols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        s += &self[(i, j)] * &v[j];
                    }
                }
                s
            })
            .collect()
    }

    /// Row-reduce in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.ncols {
            if row >= self.nrows {
                break;
            }
            // Find a pivot.
            let mut piv = None;
            for r in row..self.nrows {
                if !self[(r, col)].is_zero() {
                    piv = Some(r);
                    break;
                }
            }
            let Some(p) = piv else { continue };
            self.swap_rows(row, p);
            let inv = self[(row, col)].clone();
            for j in col..self.ncols {
                let v = &self[(row, j)] / &inv;
                self[(row, j)] = v;
            }
            for r in 0..self.nrows {
                if r != row && !self[(r, col)].is_zero() {
                    let factor = self[(r, col)].clone();
                    for j in col..self.ncols {
                        let v = &self[(r, j)] - &(&factor * &self[(row, j)]);
                        self[(r, j)] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.ncols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![scalar::zero(); self.ncols];
            v[free] = scalar::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(row, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `self * x = rhs`; returns one solution if consistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(rhs.len(), self.nrows);
        let mut aug = RatMatrix::zeros(self.nrows, self.ncols + 1);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.ncols)] = rhs[i].clone();
        }
        let pivots = aug.rref_in_place();
        if pivots.contains(&self.ncols) {
            return None;
        }
        let mut x = vec![scalar::zero(); self.ncols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(row, self.ncols)].clone();
        }
        Some(x)
    }

    /// Exact determinant (square matrices).
    pub fn det(&self) -> Scalar {
        assert_eq!(self.nrows, self.ncols, "determinant of non-square matrix");
        let n = self.nrows;
        let mut m = self.clone();
        let mut det = scalar::one();
        for col in 0..n {
            let mut piv = None;
            for r in col..n {
                if !m[(r, col)].is_zero() {
                    piv = Some(r);
                    break;
                }
            }
            let Some(p) = piv else {
                return scalar::zero();
            };
            if p != col {
                m.swap_rows(col, p);
                det = -det;
            }
            det *= &m[(col, col)].clone();
            let inv = m[(col, col)].clone();
            for r in col + 1..n {
                if !m[(r, col)].is_zero() {
                    let factor = &m[(r, col)] / &inv;
                    for j in col..n {
                        let v = &m[(r, j)] - &(&factor * &m[(col, j)]);
                        m[(r, j)] = v;
                    }
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.ncols {
            self.data.swap(a * self.ncols + j, b * self.ncols + j);
        }
    }

    /// Stack vertically: `[self; other]`.
    pub fn vstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.ncols, other.ncols);
        let mut m = RatMatrix::zeros(self.nrows + other.nrows, self.ncols);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.nrows {
            for j in 0..self.ncols {
                m[(self.nrows + i, j)] = other[(i, j)].clone();
            }
        }
        m
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.ncols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.ncols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.nrows, self.ncols)?;
        for i in 0..self.nrows {
            write!(f, "  ")?;
            for j in 0..self.ncols {
                write!(f, "{} ", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn rank_and_kernel() {
        // [[1,2,3],[2,4,6]] has rank 1, kernel dim 2.
        let m = RatMatrix::from_fn(2, 3, |i, j| int(((i + 1) * (j + 1)) as i64));
        assert_eq!(m.rank(), 1);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = RatMatrix::from_fn(2, 2, |i, j| int(if i == j { 2 } else { 0 }));
        let x = m.solve(&[int(4), int(6)]).unwrap();
        assert_eq!(x, vec![int(2), int(3)]);
        let singular = RatMatrix::from_fn(2, 2, |_, _| int(1));
        assert!(singular.solve(&[int(1), int(2)]).is_none());
    }

    #[test]
    fn determinant() {
        let m = RatMatrix::from_fn(2, 2, |i, j| int([[0, 1], [1, 0]][i][j]));
        assert_eq!(m.det(), int(-1));
        let s = RatMatrix::from_fn(2, 2, |i, j| int([[2, 0], [0, 0]][i][j]));
        assert_eq!(s.det(), int(0));
    }
}

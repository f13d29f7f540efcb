//! Multidegrees and the Koszul sign rule.
//!
//! Every object in the library is graded over five named integer axes:
//! intrinsic, first equivariant, second equivariant, Hodge and weight.
//! The weight axis is sign-inert: it never contributes to Koszul signs.

use crate::scalar::{sign, Scalar};
use std::fmt;
use std::ops::{Add, Neg, Sub};

pub const NUM_AXES: usize = 5;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Axis {
    Intrinsic = 0,
    Equivariant1 = 1,
    Equivariant2 = 2,
    Hodge = 3,
    Weight = 4,
}

pub const AXES: [Axis; NUM_AXES] = [
    Axis::Intrinsic,
    Axis::Equivariant1,
    Axis::Equivariant2,
    Axis::Hodge,
    Axis::Weight,
];

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::Intrinsic => "intrinsic",
            Axis::Equivariant1 => "equivariant1",
            Axis::Equivariant2 => "equivariant2",
            Axis::Hodge => "hodge",
            Axis::Weight => "weight",
        }
    }

    /// Whether the axis participates in Koszul signs.
    pub fn is_active(self) -> bool {
        !matches!(self, Axis::Weight)
    }
}

/// An ordered tuple of integer degrees, one per axis.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct MultiDegree(pub [i32; NUM_AXES]);

impl MultiDegree {
    pub fn zero() -> Self {
        MultiDegree([0; NUM_AXES])
    }

    pub fn new(intrinsic: i32, eq1: i32, eq2: i32, hodge: i32, weight: i32) -> Self {
        MultiDegree([intrinsic, eq1, eq2, hodge, weight])
    }

    pub fn intrinsic(n: i32) -> Self {
        MultiDegree([n, 0, 0, 0, 0])
    }

    pub fn get(&self, axis: Axis) -> i32 {
        self.0[axis as usize]
    }

    pub fn set(&mut self, axis: Axis, v: i32) {
        self.0[axis as usize] = v;
    }

    pub fn with(mut self, axis: Axis, v: i32) -> Self {
        self.set(axis, v);
        self
    }

    /// Sum of the active axes: the degree seen by a fully collapsed
    /// single complex. Weight is excluded.
    pub fn total(&self) -> i32 {
        self.0[0] + self.0[1] + self.0[2] + self.0[3]
    }

    pub fn weight(&self) -> i32 {
        self.0[Axis::Weight as usize]
    }

    /// Parity of the sum over active axes, i.e. whether the degree is
    /// odd for the Koszul rule.
    pub fn active_parity(&self) -> bool {
        self.total() & 1 == 1
    }

    /// Parity of sum over active axes of the products of components.
    pub fn koszul_parity(&self, other: &MultiDegree) -> bool {
        let mut s: i64 = 0;
        for axis in AXES {
            if axis.is_active() {
                s += self.get(axis) as i64 * other.get(axis) as i64;
            }
        }
        s & 1 == 1
    }

    pub fn scaled(&self, n: i32) -> Self {
        let mut d = *self;
        for v in d.0.iter_mut() {
            *v *= n;
        }
        d
    }
}

impl Add for MultiDegree {
    type Output = MultiDegree;
    fn add(self, rhs: MultiDegree) -> MultiDegree {
        let mut out = self;
        for (a, b) in out.0.iter_mut().zip(rhs.0.iter()) {
            *a += b;
        }
        out
    }
}

impl Sub for MultiDegree {
    type Output = MultiDegree;
    fn sub(self, rhs: MultiDegree) -> MultiDegree {
        let mut out = self;
        for (a, b) in out.0.iter_mut().zip(rhs.0.iter()) {
            *a -= b;
        }
        out
    }
}

impl Neg for MultiDegree {
    type Output = MultiDegree;
    fn neg(self) -> MultiDegree {
        let mut out = self;
        for a in out.0.iter_mut() {
            *a = -*a;
        }
        out
    }
}

impl fmt::Debug for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{})",
            self.0[0], self.0[1], self.0[2], self.0[3], self.0[4]
        )
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The Koszul sign (-1)^{sum over active axes of m_i * n_i}.
pub fn koszul_sign(x: &MultiDegree, y: &MultiDegree) -> Scalar {
    sign(x.koszul_parity(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn odd_odd_swap() {
        let d = MultiDegree::new(1, 0, 0, 0, 0);
        assert_eq!(koszul_sign(&d, &d), int(-1));
    }

    #[test]
    fn weight_axis_is_inert() {
        let x = MultiDegree::new(0, 0, 0, 0, 3);
        let y = MultiDegree::new(1, 1, 1, 1, 5);
        assert_eq!(koszul_sign(&x, &y), int(1));
    }

    #[test]
    fn mixed_axes() {
        // sum of products 1*3 + 2*1 = 5, odd.
        let x = MultiDegree::new(1, 2, 0, 0, 0);
        let y = MultiDegree::new(3, 1, 0, 0, 0);
        assert_eq!(koszul_sign(&x, &y), int(-1));
    }

    #[test]
    fn addition_is_componentwise_and_commutative() {
        let x = MultiDegree::new(1, -2, 3, 0, 7);
        let y = MultiDegree::new(4, 5, -6, 1, 0);
        assert_eq!(x + y, y + x);
        assert_eq!((x + y).0, [5, 3, -3, 1, 7]);
    }
}

//! Group and Lie-algebra action data: torus weights, structure
//! constants, comodule maps and the Reynolds projection.

use crate::algebra::{AlgElement, AlgebraCore, GenId, Monomial};
use crate::degree::MultiDegree;
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::Arc;

/// Torus weight bookkeeping for the generators of one algebra. Carrier
/// builders extend the table of the base algebra to derived symbols
/// (forms, dual derivations, adjoint copies).
#[derive(Clone, Debug)]
pub struct WeightTable {
    pub rank: usize,
    weights: HashMap<GenId, Vec<i64>>,
}

impl WeightTable {
    pub fn new(rank: usize) -> Self {
        WeightTable {
            rank,
            weights: HashMap::new(),
        }
    }

    pub fn set(&mut self, g: GenId, w: Vec<i64>) {
        assert_eq!(w.len(), self.rank);
        self.weights.insert(g, w);
    }

    pub fn weight_of_gen(&self, g: GenId) -> Vec<i64> {
        self.weights
            .get(&g)
            .cloned()
            .unwrap_or_else(|| vec![0; self.rank])
    }

    pub fn weight_of_monomial(&self, m: &Monomial) -> Vec<i64> {
        let mut w = vec![0i64; self.rank];
        for &(g, e) in &m.0 {
            if let Some(wg) = self.weights.get(&g) {
                for (a, b) in w.iter_mut().zip(wg.iter()) {
                    *a += b * e as i64;
                }
            }
        }
        w
    }

    pub fn is_invariant(&self, a: &AlgElement) -> bool {
        a.terms
            .keys()
            .all(|m| self.weight_of_monomial(m).iter().all(|&x| x == 0))
    }

    /// Weight-zero projection: the Reynolds operator in torus mode.
    pub fn reynolds(&self, a: &AlgElement) -> AlgElement {
        let mut out = AlgElement::zero(&a.core);
        for (m, c) in &a.terms {
            if self.weight_of_monomial(m).iter().all(|&x| x == 0) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }
}

/// Structure constants of a finite-dimensional Lie algebra:
/// `[e_i, e_j] = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug)]
pub struct LieStructure {
    pub names: Vec<String>,
    pub c: Vec<Vec<Vec<Scalar>>>,
}

impl LieStructure {
    pub fn new(names: Vec<String>, c: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let n = names.len();
        assert_eq!(c.len(), n);
        for row in &c {
            assert_eq!(row.len(), n);
            for v in row {
                assert_eq!(v.len(), n);
            }
        }
        // Antisymmetry.
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if c[i][j][k] != -c[j][i][k].clone() {
                        return Err(Error::NotAntisymmetric { i, j });
                    }
                }
            }
        }
        // Jacobi: [[ei,ej],ek] + [[ej,ek],ei] + [[ek,ei],ej] = 0.
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut s = scalar::zero();
                        for m in 0..n {
                            s += &c[i][j][m] * &c[m][k][l]
                                + &c[j][k][m] * &c[m][i][l]
                                + &c[k][i][m] * &c[m][j][l];
                        }
                        if !s.is_zero() {
                            return Err(Error::JacobiViolation { i, j, k });
                        }
                    }
                }
            }
        }
        Ok(LieStructure { names, c })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn abelian(rank: usize) -> Self {
        let names = (1..=rank).map(|i| format!("e{i}")).collect();
        let c = vec![vec![vec![scalar::zero(); rank]; rank]; rank];
        LieStructure { names, c }
    }

    /// sl2 with basis e, h, f and [h,e] = 2e, [h,f] = -2f, [e,f] = h.
    pub fn sl2() -> Self {
        let names = vec!["e".to_string(), "h".to_string(), "f".to_string()];
        let mut c = vec![vec![vec![scalar::zero(); 3]; 3]; 3];
        let set = |c: &mut Vec<Vec<Vec<Scalar>>>, i: usize, j: usize, k: usize, v: i64| {
            c[i][j][k] = scalar::int(v);
            c[j][i][k] = scalar::int(-v);
        };
        set(&mut c, 1, 0, 0, 2); // [h,e] = 2e
        set(&mut c, 1, 2, 2, -2); // [h,f] = -2f
        set(&mut c, 0, 2, 1, 1); // [e,f] = h
        LieStructure::new(names, c).expect("sl2 satisfies Jacobi")
    }

    /// Heisenberg algebra: [x,y] = z.
    pub fn heisenberg() -> Self {
        let names = vec!["x".to_string(), "y".to_string(), "z".to_string()];
        let mut c = vec![vec![vec![scalar::zero(); 3]; 3]; 3];
        c[0][1][2] = scalar::one();
        c[1][0][2] = -scalar::one();
        LieStructure::new(names, c).expect("heisenberg satisfies Jacobi")
    }

    /// Two-dimensional non-abelian algebra: [a,b] = b.
    pub fn affine2() -> Self {
        let names = vec!["a".to_string(), "b".to_string()];
        let mut c = vec![vec![vec![scalar::zero(); 2]; 2]; 2];
        c[0][1][1] = scalar::one();
        c[1][0][1] = -scalar::one();
        LieStructure::new(names, c).expect("affine algebra satisfies Jacobi")
    }
}

/// Comodule assignment for a Lie-mode action: for each generator of
/// the base algebra, the value of `beta` as pairs (coefficient in A,
/// dual-basis index).
pub type ComoduleAssignment = HashMap<GenId, Vec<(AlgElement, usize)>>;

#[derive(Clone, Debug)]
pub enum ActionData {
    Torus {
        rank: usize,
        weights: WeightTable,
    },
    Lie {
        structure: LieStructure,
        comodule: ComoduleAssignment,
    },
}

impl ActionData {
    pub fn torus(rank: usize, weights: WeightTable) -> Self {
        assert_eq!(rank, weights.rank);
        ActionData::Torus { rank, weights }
    }

    pub fn lie(structure: LieStructure, comodule: ComoduleAssignment) -> Self {
        ActionData::Lie {
            structure,
            comodule,
        }
    }

    /// Dimension of the acting Lie algebra / torus rank.
    pub fn dim(&self) -> usize {
        match self {
            ActionData::Torus { rank, .. } => *rank,
            ActionData::Lie { structure, .. } => structure.dim(),
        }
    }

    pub fn is_torus(&self) -> bool {
        matches!(self, ActionData::Torus { .. })
    }

    /// Dual-basis names for the acting algebra.
    pub fn dual_names(&self) -> Vec<String> {
        match self {
            ActionData::Torus { rank, .. } => (1..=*rank).map(|i| format!("eps_{i}")).collect(),
            ActionData::Lie { structure, .. } => structure
                .names
                .iter()
                .map(|n| format!("eps_{n}"))
                .collect(),
        }
    }

    /// Structure constants (zero for a torus).
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        match self {
            ActionData::Torus { .. } => scalar::zero(),
            ActionData::Lie { structure, .. } => structure.c[i][j][k].clone(),
        }
    }

    pub fn torus_weights(&self) -> Option<&WeightTable> {
        match self {
            ActionData::Torus { weights, .. } => Some(weights),
            ActionData::Lie { .. } => None,
        }
    }
}

/// The comodule map `beta` realized as a derivation on a carrier that
/// contains the base generators together with the dual-basis family
/// `eps` (one generator per torus factor / Lie basis vector).
///
/// In torus mode `beta(x) = sum_i w_i(x) x eps_i`; in Lie mode the
/// values come from the explicit comodule assignment.
pub fn beta_from_action(
    carrier: &Arc<AlgebraCore>,
    act: &ActionData,
    base_gens: &[GenId],
    eps: &[GenId],
    name: &str,
) -> Result<Derivation> {
    assert_eq!(eps.len(), act.dim());
    let eps_degree = carrier.degree(eps[0]);
    let mut values = Vec::new();
    match act {
        ActionData::Torus { weights, .. } => {
            for &g in base_gens {
                let w = weights.weight_of_gen(g);
                let mut v = AlgElement::zero(carrier);
                for (i, &wi) in w.iter().enumerate() {
                    if wi != 0 {
                        let term = AlgElement::gen(carrier, g)
                            .mul(&AlgElement::gen(carrier, eps[i]))
                            .scale(&scalar::int(wi));
                        v = v.add(&term);
                    }
                }
                values.push((g, v));
            }
        }
        ActionData::Lie { comodule, .. } => {
            for &g in base_gens {
                let assignment = comodule.get(&g).ok_or_else(|| {
                    Error::Other(format!(
                        "Lie mode requires a comodule assignment for generator `{}`",
                        carrier.gen(g).name
                    ))
                })?;
                let mut v = AlgElement::zero(carrier);
                for (coeff, idx) in assignment {
                    // Coefficients are expressed in the carrier already.
                    v = v.add(&coeff.mul(&AlgElement::gen(carrier, eps[*idx])));
                }
                values.push((g, v));
            }
        }
    }
    Derivation::new(name, carrier, eps_degree, values)
}

/// Reynolds projection onto invariants. Torus mode only: projects onto
/// total weight zero. Lie mode is reported unsupported.
pub fn reynolds_project(act: &ActionData, table: &WeightTable, v: &AlgElement) -> Result<AlgElement> {
    match act {
        ActionData::Torus { .. } => Ok(table.reynolds(v)),
        ActionData::Lie { .. } => Err(Error::UnsupportedLieMode(
            "no algorithmic Reynolds operator in Lie mode".into(),
        )),
    }
}

/// Convenience: build a polynomial base algebra `k[x_1..]` in degree 0
/// with given torus weights.
pub fn polynomial_torus_base(
    names_weights: &[(&str, Vec<i64>)],
    rank: usize,
) -> (Arc<AlgebraCore>, Vec<GenId>, ActionData) {
    let mut b = crate::algebra::AlgebraBuilder::new();
    let mut gens = Vec::new();
    for (n, _) in names_weights {
        gens.push(b.add_gen(n, MultiDegree::zero()));
    }
    let core = b.build();
    let mut table = WeightTable::new(rank);
    for (g, (_, w)) in gens.iter().zip(names_weights.iter()) {
        table.set(*g, w.clone());
    }
    (core, gens, ActionData::torus(rank, table))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_is_enforced() {
        // [a,b] = a, [a,c] = b, [b,c] = 0 fails Jacobi.
        let names = vec!["a".into(), "b".into(), "c".into()];
        let mut c = vec![vec![vec![scalar::zero(); 3]; 3]; 3];
        c[0][1][0] = scalar::one();
        c[1][0][0] = -scalar::one();
        c[0][2][1] = scalar::one();
        c[2][0][1] = -scalar::one();
        assert!(LieStructure::new(names, c).is_err());
    }

    #[test]
    fn reynolds_weight_projection() {
        let (core, gens, act) = polynomial_torus_base(&[("x", vec![1]), ("y", vec![-1])], 1);
        let table = act.torus_weights().unwrap().clone();
        let x = AlgElement::gen(&core, gens[0]);
        let y = AlgElement::gen(&core, gens[1]);
        let xy = x.mul(&y);
        // xy + x^2 y + x -> xy (x^2 y has weight 1, x has weight 1).
        let v = xy.add(&x.mul(&x).mul(&y)).add(&x);
        let p = reynolds_project(&act, &table, &v).unwrap();
        assert_eq!(p, xy);
        // Idempotence and module property over invariants.
        assert_eq!(reynolds_project(&act, &table, &p).unwrap(), p);
        let b = xy.clone(); // invariant
        let lhs = reynolds_project(&act, &table, &v.mul(&b)).unwrap();
        let rhs = p.mul(&b);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn beta_on_torus_weights() {
        let (core0, _, _) = polynomial_torus_base(&[("x", vec![1])], 1);
        drop(core0);
        // Carrier with eps adjoined.
        let mut b = crate::algebra::AlgebraBuilder::new();
        let x = b.add_gen("x", MultiDegree::zero());
        let y = b.add_gen("y", MultiDegree::zero());
        let eps = b.add_gen(
            "eps_1",
            MultiDegree::zero().with(crate::degree::Axis::Equivariant1, 1),
        );
        let core = b.build();
        let mut table = WeightTable::new(1);
        table.set(x, vec![1]);
        table.set(y, vec![-1]);
        let act = ActionData::torus(1, table);
        let beta = beta_from_action(&core, &act, &[x, y], &[eps], "beta").unwrap();
        let ex = AlgElement::gen(&core, x);
        let ey = AlgElement::gen(&core, y);
        let eeps = AlgElement::gen(&core, eps);
        assert_eq!(beta.apply(&ex), ex.mul(&eeps));
        // weights cancel on xy
        assert!(beta.apply(&ex.mul(&ey)).is_zero());
    }
}

//! Graded derivations determined by their values on generators.

use crate::algebra::{AlgElement, AlgebraCore, GenId, Monomial};
use crate::degree::{koszul_sign, MultiDegree};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// A derivation of fixed multidegree, extended from generator values
/// by the graded Leibniz rule
/// `D(ab) = D(a) b + koszul_sign(D, a) a D(b)`.
#[derive(Clone)]
pub struct Derivation {
    pub name: String,
    pub degree: MultiDegree,
    core: Arc<AlgebraCore>,
    values: HashMap<GenId, AlgElement>,
}

impl Derivation {
    /// Build a derivation from generator values. Generators that do not
    /// appear are sent to zero. Values on the inverse of a Laurent pair
    /// are filled in automatically via `D(t^-1) = -t^-2 D(t)`.
    pub fn new(
        name: &str,
        core: &Arc<AlgebraCore>,
        degree: MultiDegree,
        values: Vec<(GenId, AlgElement)>,
    ) -> Result<Self> {
        let mut map: HashMap<GenId, AlgElement> = HashMap::new();
        for (g, v) in values {
            if v.core.id != core.id {
                return Err(Error::MismatchedAlgebra);
            }
            if !v.is_zero() {
                let expected = core.degree(g) + degree;
                if v.degree() != Some(expected) {
                    return Err(Error::BadDifferentialDegree {
                        name: core.gen(g).name.clone(),
                        found: v.degree().unwrap_or_default(),
                        expected,
                    });
                }
            }
            map.insert(g, v);
        }
        // Fill Laurent partners.
        let pairs: Vec<(GenId, GenId)> = core
            .gens()
            .filter_map(|(g, gen)| gen.inverse.map(|inv| (g, inv)))
            .collect();
        for (g, inv) in pairs {
            if map.contains_key(&g) && !map.contains_key(&inv) {
                let vg = map[&g].clone();
                let einv = AlgElement::gen(core, inv);
                let v = einv.mul(&einv).mul(&vg).neg();
                map.insert(inv, v);
            }
        }
        Ok(Derivation {
            name: name.to_string(),
            degree,
            core: Arc::clone(core),
            values: map,
        })
    }

    pub fn zero(name: &str, core: &Arc<AlgebraCore>, degree: MultiDegree) -> Self {
        Derivation {
            name: name.to_string(),
            degree,
            core: Arc::clone(core),
            values: HashMap::new(),
        }
    }

    pub fn core(&self) -> &Arc<AlgebraCore> {
        &self.core
    }

    pub fn value(&self, g: GenId) -> AlgElement {
        self.values
            .get(&g)
            .cloned()
            .unwrap_or_else(|| AlgElement::zero(&self.core))
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|v| v.is_zero())
    }

    /// Apply to a monomial with an extra sign parity carried in.
    fn apply_monomial(&self, mono: &Monomial, coeff: &Scalar) -> AlgElement {
        let mut out = AlgElement::zero(&self.core);
        // Walk factors left to right, keeping the degree of the prefix.
        let mut prefix_deg = MultiDegree::zero();
        for (idx, &(g, e)) in mono.0.iter().enumerate() {
            if let Some(v) = self.values.get(&g) {
                if !v.is_zero() {
                    // D(g^e) = e g^{e-1} D(g); for odd g necessarily e = 1.
                    let hop = koszul_sign(&self.degree, &prefix_deg);
                    let mut term =
                        AlgElement::monomial(&self.core, Monomial(mono.0[..idx].to_vec()), coeff * hop);
                    if e > 1 {
                        let mut lowered = mono.0[idx..idx + 1].to_vec();
                        lowered[0].1 = e - 1;
                        term = term.mul(&AlgElement::monomial(
                            &self.core,
                            Monomial(lowered),
                            scalar::int(e as i64),
                        ));
                    }
                    term = term.mul(v);
                    term = term.mul(&AlgElement::monomial(
                        &self.core,
                        Monomial(mono.0[idx + 1..].to_vec()),
                        scalar::one(),
                    ));
                    out = out.add(&term);
                }
            }
            prefix_deg = prefix_deg + self.core.degree(g).scaled(e as i32);
        }
        out
    }

    pub fn apply(&self, a: &AlgElement) -> AlgElement {
        assert_eq!(a.core.id, self.core.id, "derivation applied across algebras");
        let mut out = AlgElement::zero(&self.core);
        for (m, c) in &a.terms {
            out = out.add(&self.apply_monomial(m, c));
        }
        out
    }

    /// D(D(g)) for every generator; returns the first failing generator.
    pub fn check_square_zero(&self) -> Result<()> {
        for (g, _) in self.core.gens() {
            let v = self.apply(&self.value(g));
            if !v.is_zero() {
                return Err(Error::DSquaredNonzero {
                    witness: format!("{} on generator {}: {}", self.name, self.core.gen(g).name, v),
                });
            }
        }
        Ok(())
    }

    /// The graded commutator `[D, E] = D E - (-1)^{<|D|,|E|>} E D`
    /// evaluated on every generator; `None` means it vanishes.
    pub fn graded_commutator_witness(&self, other: &Derivation) -> Option<(GenId, AlgElement)> {
        let sgn = koszul_sign(&self.degree, &other.degree);
        for (g, _) in self.core.gens() {
            let de = self.apply(&other.value(g));
            let ed = other.apply(&self.value(g));
            let c = de.sub(&ed.scale(&sgn));
            if !c.is_zero() {
                return Some((g, c));
            }
        }
        None
    }

    /// Sum of two derivations of the same degree.
    pub fn add(&self, other: &Derivation, name: &str) -> Result<Derivation> {
        if self.core.id != other.core.id {
            return Err(Error::MismatchedAlgebra);
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!(
                "cannot add derivations of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let mut values = self.values.clone();
        for (g, v) in &other.values {
            let e = values
                .entry(*g)
                .or_insert_with(|| AlgElement::zero(&self.core));
            *e = e.add(v);
        }
        Ok(Derivation {
            name: name.to_string(),
            degree: self.degree,
            core: Arc::clone(&self.core),
            values,
        })
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation({}, degree {})", self.name, self.degree)?;
        Ok(())
    }
}

/// A free graded-commutative algebra together with its intrinsic
/// differential (a square-zero derivation of degree +1 on the
/// intrinsic axis).
#[derive(Clone)]
pub struct FreeGCAlgebra {
    pub core: Arc<AlgebraCore>,
    diff: Option<Arc<Derivation>>,
}

impl FreeGCAlgebra {
    pub fn without_differential(core: Arc<AlgebraCore>) -> Self {
        FreeGCAlgebra { core, diff: None }
    }

    /// Attach the intrinsic differential. Checks that each generator
    /// value has the right degree and that d^2 = 0 on generators.
    pub fn with_differential(core: Arc<AlgebraCore>, values: Vec<(GenId, AlgElement)>) -> Result<Self> {
        let d = Derivation::new("d", &core, MultiDegree::intrinsic(1), values)?;
        d.check_square_zero()?;
        Ok(FreeGCAlgebra {
            core,
            diff: Some(Arc::new(d)),
        })
    }

    pub fn differential(&self) -> Option<&Arc<Derivation>> {
        self.diff.as_ref()
    }

    pub fn d(&self, a: &AlgElement) -> AlgElement {
        match &self.diff {
            Some(d) => d.apply(a),
            None => AlgElement::zero(&self.core),
        }
    }

    pub fn zero(&self) -> AlgElement {
        AlgElement::zero(&self.core)
    }

    pub fn one(&self) -> AlgElement {
        AlgElement::one(&self.core)
    }

    pub fn gen_elem(&self, name: &str) -> AlgElement {
        AlgElement::gen_by_name(&self.core, name)
            .unwrap_or_else(|| panic!("no generator named `{name}`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraBuilder;
    use crate::degree::Axis;
    use crate::scalar::int;

    #[test]
    fn polynomial_derivative() {
        let mut b = AlgebraBuilder::new();
        let x = b.add_gen("x", MultiDegree::zero());
        let core = b.build();
        let d = Derivation::new(
            "d/dx",
            &core,
            MultiDegree::zero(),
            vec![(x, AlgElement::one(&core))],
        )
        .unwrap();
        let ex = AlgElement::gen(&core, x);
        let x2 = ex.mul(&ex);
        assert_eq!(d.apply(&x2), ex.scale(&int(2)));
        assert!(d.apply(&AlgElement::one(&core)).is_zero());
    }

    #[test]
    fn leibniz_with_koszul_sign() {
        // D of hodge degree 1 acting on product of two hodge-1 odd
        // generators picks up a sign on the second factor.
        let mut b = AlgebraBuilder::new();
        let u = b.add_gen("u", MultiDegree::zero().with(Axis::Hodge, 1));
        let v = b.add_gen("v", MultiDegree::zero().with(Axis::Hodge, 1));
        let w = b.add_gen("w", MultiDegree::zero().with(Axis::Hodge, 2));
        let core = b.build();
        let dd = Derivation::new(
            "D",
            &core,
            MultiDegree::zero().with(Axis::Hodge, 1),
            vec![
                (u, AlgElement::gen(&core, w)),
                (v, AlgElement::gen(&core, w)),
            ],
        )
        .unwrap();
        let eu = AlgElement::gen(&core, u);
        let ev = AlgElement::gen(&core, v);
        let uv = eu.mul(&ev);
        // D(uv) = w v - u w = w v - w u (w even) = w*(v - u).
        let expect = AlgElement::gen(&core, w).mul(&ev.sub(&eu));
        assert_eq!(dd.apply(&uv), expect);
    }

    #[test]
    fn laurent_partner_value() {
        let mut b = AlgebraBuilder::new();
        let (t, tinv) = b.add_laurent_gen("t", MultiDegree::zero());
        let core = b.build();
        // D(t) = t, so D(t^-1) must be -t^-1.
        let d = Derivation::new(
            "weight",
            &core,
            MultiDegree::zero(),
            vec![(t, AlgElement::gen(&core, t))],
        )
        .unwrap();
        let etinv = AlgElement::gen(&core, tinv);
        assert_eq!(d.value(tinv), etinv.neg());
        // Leibniz: D(t * t^-1) = D(1) = 0.
        let prod = AlgElement::gen(&core, t).mul(&etinv);
        assert!(d.apply(&prod).is_zero());
    }
}

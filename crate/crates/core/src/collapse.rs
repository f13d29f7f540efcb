//! Collapsing gradings at the element level.
//!
//! Collapsing two gradings into one is strong symmetric monoidal: on a
//! word of factors it contributes the sign `(-1)^{sum_{i<j} q_i p_j}`
//! where `p` and `q` are the degrees of the factors on the two merged
//! axes, taken in normal-form order.

use crate::algebra::{AlgElement, AlgebraCore, Monomial};
use crate::degree::Axis;
use crate::error::{Error, Result};
use crate::scalar;
use std::sync::Arc;

/// The monoidal collapse sign of a normal-form monomial for merging
/// axis `a` (kept) and axis `b` (folded into `a`).
pub fn collapse_parity(core: &AlgebraCore, m: &Monomial, a: Axis, b: Axis) -> bool {
    // Expand powers: a factor g^e contributes e copies. Only the
    // cross-pairs (i < j) of q_i * p_j matter; powers of a single
    // generator contribute C(e,2) * q_g * p_g.
    let mut parity = false;
    let mut p_suffix: i64 = 0; // sum of p-degrees of factors strictly after current
    let factors: Vec<(i64, i64, i64)> = m
        .0
        .iter()
        .map(|&(g, e)| {
            let d = core.degree(g);
            (d.get(a) as i64, d.get(b) as i64, e as i64)
        })
        .collect();
    for &(p, _, e) in factors.iter() {
        p_suffix += p * e;
    }
    for &(p, q, e) in factors.iter() {
        p_suffix -= p * e;
        // cross pairs with later factors
        if (q * e * p_suffix) & 1 == 1 {
            parity = !parity;
        }
        // pairs inside the power block
        let internal = e * (e - 1) / 2 * q * p;
        if internal & 1 == 1 {
            parity = !parity;
        }
    }
    parity
}

/// Map an element of `src` into `dst`, where `dst` has the same
/// generators (by name) with axis `b` folded into axis `a`, applying
/// the monoidal sign per monomial.
pub fn collapse_element(
    src: &Arc<AlgebraCore>,
    dst: &Arc<AlgebraCore>,
    elem: &AlgElement,
    a: Axis,
    b: Axis,
) -> Result<AlgElement> {
    if elem.core.id != src.id {
        return Err(Error::MismatchedAlgebra);
    }
    let mut out = AlgElement::zero(dst);
    for (m, c) in &elem.terms {
        let parity = collapse_parity(src, m, a, b);
        let mut factors = Vec::with_capacity(m.0.len());
        for &(g, e) in &m.0 {
            let name = &src.gen(g).name;
            let id = dst
                .lookup(name)
                .ok_or_else(|| Error::Other(format!("no generator `{name}` in collapsed algebra")))?;
            factors.push((id, e));
        }
        factors.sort_by_key(|&(g, _)| g);
        out.add_term(Monomial(factors), c * scalar::sign(parity));
    }
    Ok(out)
}

/// Build the collapsed core: same generators and names, with axis `b`
/// added into axis `a` and then zeroed.
pub fn collapsed_core(src: &Arc<AlgebraCore>, a: Axis, b: Axis) -> Arc<AlgebraCore> {
    let mut builder = crate::algebra::AlgebraBuilder::new();
    // Preserve Laurent pairing by re-adding heads with partners.
    let mut done = vec![false; src.num_gens()];
    for (g, gen) in src.gens() {
        if done[g.0 as usize] {
            continue;
        }
        let mut d = gen.degree;
        d.set(a, d.get(a) + d.get(b));
        d.set(b, 0);
        if let Some(inv) = gen.inverse {
            if inv > g {
                builder.add_laurent_gen(&gen.name, d);
                done[inv.0 as usize] = true;
            }
        } else {
            builder.add_gen(&gen.name, d);
        }
        done[g.0 as usize] = true;
    }
    builder.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraBuilder;
    use crate::degree::MultiDegree;
    use crate::scalar::int;

    #[test]
    fn eps_pair_picks_up_sign() {
        // eps carries the second merged axis, teps the first; the word
        // eps*teps has one (q,p) cross pair.
        let mut b = AlgebraBuilder::new();
        b.add_gen("eps", MultiDegree::zero().with(Axis::Equivariant2, 1));
        b.add_gen(
            "teps",
            MultiDegree::zero()
                .with(Axis::Equivariant1, 1)
                .with(Axis::Hodge, 1),
        );
        let src = b.build();
        let dst = collapsed_core(&src, Axis::Equivariant1, Axis::Equivariant2);
        let e = AlgElement::gen_by_name(&src, "eps").unwrap();
        let te = AlgElement::gen_by_name(&src, "teps").unwrap();
        let w = e.mul(&te);
        let img = collapse_element(&src, &dst, &w, Axis::Equivariant1, Axis::Equivariant2).unwrap();
        let e2 = AlgElement::gen_by_name(&dst, "eps").unwrap();
        let te2 = AlgElement::gen_by_name(&dst, "teps").unwrap();
        assert_eq!(img, e2.mul(&te2).scale(&int(-1)));
        // In the collapsed algebra the two generators now anticommute.
        assert_eq!(e2.mul(&te2), te2.mul(&e2).neg());
    }

    #[test]
    fn collapse_is_multiplicative_up_to_cross_sign() {
        // On words without cross pairs the map is a ring map.
        let mut b = AlgebraBuilder::new();
        b.add_gen("x", MultiDegree::zero());
        b.add_gen("teps", MultiDegree::zero().with(Axis::Equivariant1, 1));
        let src = b.build();
        let dst = collapsed_core(&src, Axis::Equivariant1, Axis::Equivariant2);
        let x = AlgElement::gen_by_name(&src, "x").unwrap();
        let t = AlgElement::gen_by_name(&src, "teps").unwrap();
        let w = x.mul(&t);
        let img = collapse_element(&src, &dst, &w, Axis::Equivariant1, Axis::Equivariant2).unwrap();
        assert_eq!(img.num_terms(), 1);
        assert_eq!(img.terms.values().next().unwrap(), &int(1));
    }
}

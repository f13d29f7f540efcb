//! Chevalley-Eilenberg complexes `CE(g*, M) = M (x) Sym(g*[-1])`.
//!
//! The differential restricts to the comodule map on `M` and to half
//! the Lie coalgebra structure map, projected to the exterior square,
//! on the dual generators: `delta(eps^k) = sum_{i<j} c^k_{ij} eps^i
//! eps^j`. The half factor is what makes `delta^2 = 0`.

use crate::action::{beta_from_action, ActionData, WeightTable};
use crate::algebra::{AlgElement, AlgebraBuilder, AlgebraCore, GenId};
use crate::degree::{Axis, MultiDegree};
use crate::derivation::Derivation;
use crate::error::Result;

use std::sync::Arc;

/// A realized CE complex: the carrier algebra `M (x) Sym(g*[-1])`
/// together with its equivariant differential and, when the base has
/// one, the extended intrinsic differential.
pub struct CEComplex {
    pub carrier: Arc<AlgebraCore>,
    /// Generators inherited from the base (same order as the input).
    pub base_gens: Vec<GenId>,
    /// The adjoined dual generators.
    pub eps: Vec<GenId>,
    /// Equivariant differential (degree +1 on the chosen axis).
    pub delta: Derivation,
    /// Intrinsic differential extended from the base, zero on eps.
    pub partial: Derivation,
    /// Torus weights extended to the carrier (eps has weight 0).
    pub weights: Option<WeightTable>,
}

/// The half-convention value on a dual generator:
/// `sum_{i<j} c^k_{ij} eps^i eps^j`.
pub fn ce_dual_value(
    carrier: &Arc<AlgebraCore>,
    act: &ActionData,
    eps: &[GenId],
    k: usize,
) -> AlgElement {
    let n = act.dim();
    let mut v = AlgElement::zero(carrier);
    for i in 0..n {
        for j in (i + 1)..n {
            let c = act.structure_constant(i, j, k);
            if !num_traits::Zero::is_zero(&c) {
                let term = AlgElement::gen(carrier, eps[i])
                    .mul(&AlgElement::gen(carrier, eps[j]))
                    .scale(&c);
                v = v.add(&term);
            }
        }
    }
    v
}

/// The coadjoint value on a tilde copy: `sum_{i,j} c^k_{ij} eps^i teps^j`
/// (no half factor).
pub fn coadjoint_value(
    carrier: &Arc<AlgebraCore>,
    act: &ActionData,
    eps: &[GenId],
    tilde: &[GenId],
    k: usize,
) -> AlgElement {
    let n = act.dim();
    let mut v = AlgElement::zero(carrier);
    for i in 0..n {
        for j in 0..n {
            let c = act.structure_constant(i, j, k);
            if !num_traits::Zero::is_zero(&c) {
                let term = AlgElement::gen(carrier, eps[i])
                    .mul(&AlgElement::gen(carrier, tilde[j]))
                    .scale(&c);
                v = v.add(&term);
            }
        }
    }
    v
}

/// Build `CE(g*, A)` for an algebra base. The dual generators are
/// placed on the given equivariant axis in degree +1.
///
/// `base` supplies generator names/degrees and, optionally, intrinsic
/// differential values (expressed in the base algebra); `comodule`
/// data comes from the action (torus weights or an explicit
/// assignment, remapped into the carrier by generator name).
pub fn ce_complex(
    base: &Arc<AlgebraCore>,
    base_diff: Option<&Derivation>,
    act: &ActionData,
    axis: Axis,
) -> Result<CEComplex> {
    let mut b = AlgebraBuilder::new();
    let mut base_gens = Vec::new();
    let mut done = vec![false; base.num_gens()];
    for (g, gen) in base.gens() {
        if done[g.0 as usize] {
            continue;
        }
        if let Some(inv) = gen.inverse {
            let (h, hi) = b.add_laurent_gen(&gen.name, gen.degree);
            base_gens.push(h);
            base_gens.push(hi);
            done[g.0 as usize] = true;
            done[inv.0 as usize] = true;
        } else {
            base_gens.push(b.add_gen(&gen.name, gen.degree));
            done[g.0 as usize] = true;
        }
    }
    let eps_deg = MultiDegree::zero().with(axis, 1);
    let eps: Vec<GenId> = act
        .dual_names()
        .iter()
        .map(|n| b.add_gen(n, eps_deg))
        .collect();
    let carrier = b.build();

    // Remap the action data into the carrier by name.
    let act_in_carrier = remap_action(act, base, &carrier)?;

    // beta on base generators.
    let beta = beta_from_action(&carrier, &act_in_carrier, &base_gens, &eps, "beta")?;

    // delta = beta on the base plus the half-convention on eps.
    let mut values: Vec<(GenId, AlgElement)> = base_gens
        .iter()
        .map(|&g| (g, beta.value(g)))
        .collect();
    for (k, &e) in eps.iter().enumerate() {
        values.push((e, ce_dual_value(&carrier, &act_in_carrier, &eps, k)));
    }
    let delta = Derivation::new("delta", &carrier, eps_deg, values)?;
    delta.check_square_zero()?;

    // Intrinsic differential extended from the base (zero on eps).
    let partial = match base_diff {
        Some(d) => {
            let import = crate::algmap::AlgebraMap::by_name("incl", base, &carrier)?;
            let values: Vec<(GenId, AlgElement)> = base
                .gens()
                .map(|(g, gen)| {
                    let target = carrier.lookup(&gen.name).expect("name preserved");
                    (target, import.apply(&d.value(g)))
                })
                .collect();
            let p = Derivation::new("partial", &carrier, MultiDegree::intrinsic(1), values)?;
            p.check_square_zero()?;
            // [partial, delta] must vanish for the CE total to square.
            p
        }
        None => Derivation::zero("partial", &carrier, MultiDegree::intrinsic(1)),
    };

    let weights = act.torus_weights().map(|t| {
        let mut table = WeightTable::new(t.rank);
        for (g, gen) in base.gens() {
            if let Some(target) = carrier.lookup(&gen.name) {
                table.set(target, t.weight_of_gen(g));
            }
        }
        table
    });

    Ok(CEComplex {
        carrier,
        base_gens,
        eps,
        delta,
        partial,
        weights,
    })
}

/// Remap action data expressed for one core onto another core by name.
pub fn remap_action(
    act: &ActionData,
    src: &Arc<AlgebraCore>,
    dst: &Arc<AlgebraCore>,
) -> Result<ActionData> {
    match act {
        ActionData::Torus { rank, weights } => {
            let mut table = WeightTable::new(*rank);
            for (g, gen) in src.gens() {
                if let Some(t) = dst.lookup(&gen.name) {
                    table.set(t, weights.weight_of_gen(g));
                }
            }
            Ok(ActionData::torus(*rank, table))
        }
        ActionData::Lie {
            structure,
            comodule,
        } => {
            let import = crate::algmap::AlgebraMap::by_name("remap", src, dst)?;
            let mut new = crate::action::ComoduleAssignment::new();
            for (g, items) in comodule {
                let name = &src.gen(*g).name;
                if let Some(t) = dst.lookup(name) {
                    let mapped: Vec<(AlgElement, usize)> = items
                        .iter()
                        .map(|(coeff, idx)| (import.apply(coeff), *idx))
                        .collect();
                    new.insert(t, mapped);
                }
            }
            Ok(ActionData::lie(structure.clone(), new))
        }
    }
}

impl CEComplex {
    /// Apply the full differential (intrinsic plus equivariant) to an
    /// element of the carrier — valid because the two commute and the
    /// collapse twist is handled by bundle builders.
    pub fn delta_total(&self, a: &AlgElement) -> AlgElement {
        self.partial.apply(a).add(&self.delta.apply(a))
    }

    pub fn gen_elem(&self, name: &str) -> AlgElement {
        AlgElement::gen_by_name(&self.carrier, name)
            .unwrap_or_else(|| panic!("no generator `{name}`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{polynomial_torus_base, ComoduleAssignment, LieStructure};
    use crate::scalar::int;

    #[test]
    fn abelian_rank_one_trivial_module() {
        // CE of an abelian rank-1 algebra on k: k + k eps, delta = 0.
        let b = AlgebraBuilder::new();
        let base = b.build();
        let act = ActionData::lie(LieStructure::abelian(1), ComoduleAssignment::new());
        let ce = ce_complex(&base, None, &act, Axis::Equivariant1).unwrap();
        assert!(ce.delta.is_zero());
        assert_eq!(ce.eps.len(), 1);
    }

    #[test]
    fn sl2_dual_differential_matches_worked_example() {
        let b = AlgebraBuilder::new();
        let base = b.build();
        let act = ActionData::lie(LieStructure::sl2(), ComoduleAssignment::new());
        let ce = ce_complex(&base, None, &act, Axis::Equivariant1).unwrap();
        let e = ce.gen_elem("eps_e");
        let h = ce.gen_elem("eps_h");
        let f = ce.gen_elem("eps_f");
        // delta(h*) = e* f*, delta(e*) = 2 h* e*, delta(f*) = -2 h* f*.
        assert_eq!(ce.delta.apply(&h), e.mul(&f));
        assert_eq!(ce.delta.apply(&e), h.mul(&e).scale(&int(2)));
        assert_eq!(ce.delta.apply(&f), h.mul(&f).scale(&int(-2)));
        ce.delta.check_square_zero().unwrap();
    }

    #[test]
    fn torus_on_plane_gives_weighted_delta() {
        let (base, _, act) = polynomial_torus_base(&[("x", vec![1]), ("y", vec![-1])], 1);
        let ce = ce_complex(&base, None, &act, Axis::Equivariant1).unwrap();
        let x = ce.gen_elem("x");
        let y = ce.gen_elem("y");
        let eps = ce.gen_elem("eps_1");
        assert_eq!(ce.delta.apply(&x), x.mul(&eps));
        assert_eq!(ce.delta.apply(&y), y.mul(&eps).neg());
        assert!(ce.delta.apply(&x.mul(&y)).is_zero());
    }

    #[test]
    fn delta_squared_catches_bad_comodule() {
        // A fake "comodule" on k[u] over sl2 that is not coassociative:
        // beta(u) = u eps_e. Then delta^2(u) = u * delta(eps_e) != 0.
        let mut bb = AlgebraBuilder::new();
        let u = bb.add_gen("u", MultiDegree::zero());
        let base = bb.build();
        let mut com = ComoduleAssignment::new();
        com.insert(u, vec![(AlgElement::gen(&base, u), 0)]);
        let act = ActionData::lie(LieStructure::sl2(), com);
        assert!(ce_complex(&base, None, &act, Axis::Equivariant1).is_err());
    }

    #[test]
    fn random_small_lie_algebras_square_to_zero() {
        for structure in [
            LieStructure::abelian(2),
            LieStructure::sl2(),
            LieStructure::heisenberg(),
            LieStructure::affine2(),
        ] {
            let b = AlgebraBuilder::new();
            let base = b.build();
            let act = ActionData::lie(structure, ComoduleAssignment::new());
            let ce = ce_complex(&base, None, &act, Axis::Equivariant1).unwrap();
            ce.delta.check_square_zero().unwrap();
        }
    }
}

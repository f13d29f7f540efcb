//! Free graded-commutative algebras over exact rationals.
//!
//! An algebra is a list of named multigraded generators. Elements are
//! kept in a unique normal form: a sparse map from sorted monomials to
//! nonzero rational coefficients. Odd generators (odd total active
//! degree) square to zero and are stored as a presence set; even
//! generators carry exponents. A generator may be registered together
//! with an explicit inverse (to model Laurent coordinate rings of
//! tori), in which case the rewriting rule `t * t^-1 -> 1` is applied
//! during normalization, keeping the kernel purely polynomial.

use crate::degree::{koszul_sign, Axis, MultiDegree};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

static NEXT_ALGEBRA_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct GenId(pub u32);

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub degree: MultiDegree,
    /// The partner generator for Laurent pairs (t <-> t^-1).
    pub inverse: Option<GenId>,
}

impl Generator {
    pub fn is_odd(&self) -> bool {
        self.degree.active_parity()
    }
}

/// Immutable generator data shared by all elements of one algebra.
#[derive(Debug)]
pub struct AlgebraCore {
    pub id: u64,
    gens: Vec<Generator>,
    by_name: HashMap<String, GenId>,
}

impl AlgebraCore {
    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn gen(&self, id: GenId) -> &Generator {
        &self.gens[id.0 as usize]
    }

    pub fn gens(&self) -> impl Iterator<Item = (GenId, &Generator)> {
        self.gens
            .iter()
            .enumerate()
            .map(|(i, g)| (GenId(i as u32), g))
    }

    pub fn lookup(&self, name: &str) -> Option<GenId> {
        self.by_name.get(name).copied()
    }

    pub fn degree(&self, id: GenId) -> MultiDegree {
        self.gen(id).degree
    }
}

/// Builder for algebra cores.
#[derive(Default)]
pub struct AlgebraBuilder {
    gens: Vec<Generator>,
    by_name: HashMap<String, GenId>,
}

impl AlgebraBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_gen(&mut self, name: &str, degree: MultiDegree) -> GenId {
        assert!(
            !self.by_name.contains_key(name),
            "duplicate generator name `{name}`"
        );
        let id = GenId(self.gens.len() as u32);
        self.gens.push(Generator {
            name: name.to_string(),
            degree,
            inverse: None,
        });
        self.by_name.insert(name.to_string(), id);
        id
    }

    /// Register a generator together with its inverse. Only allowed in
    /// even total active degree, so the rewriting `t * t^-1 -> 1` never
    /// produces signs.
    pub fn add_laurent_gen(&mut self, name: &str, degree: MultiDegree) -> (GenId, GenId) {
        assert!(
            !degree.active_parity(),
            "Laurent generator `{name}` must have even active degree"
        );
        let id = self.add_gen(name, degree);
        let inv = self.add_gen(&format!("{name}^-1"), -degree);
        self.gens[id.0 as usize].inverse = Some(inv);
        self.gens[inv.0 as usize].inverse = Some(id);
        (id, inv)
    }

    pub fn build(self) -> Arc<AlgebraCore> {
        Arc::new(AlgebraCore {
            id: NEXT_ALGEBRA_ID.fetch_add(1, Ordering::Relaxed),
            gens: self.gens,
            by_name: self.by_name,
        })
    }
}

/// A normal-form monomial: factors sorted by generator registration
/// order, exponents strictly positive, odd generators with exponent 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(pub Vec<(GenId, u32)>);

/// Bitmask over the four active axes recording degree parities.
fn parity_mask(deg: &MultiDegree) -> u8 {
    let mut m = 0u8;
    for (i, axis) in [Axis::Intrinsic, Axis::Equivariant1, Axis::Equivariant2, Axis::Hodge]
        .into_iter()
        .enumerate()
    {
        if deg.get(axis) & 1 == 1 {
            m |= 1 << i;
        }
    }
    m
}

fn mask_dot(a: u8, b: u8) -> bool {
    ((a & b).count_ones() & 1) == 1
}

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn gen(id: GenId) -> Self {
        Monomial(vec![(id, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self, core: &AlgebraCore) -> MultiDegree {
        let mut d = MultiDegree::zero();
        for &(g, e) in &self.0 {
            d = d + core.degree(g).scaled(e as i32);
        }
        d
    }

    pub fn exponent(&self, id: GenId) -> u32 {
        self.0
            .iter()
            .find(|&&(g, _)| g == id)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    /// Total exponent count; Laurent inverses count like ordinary
    /// generators. Used for polynomial-degree truncation.
    pub fn poly_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    fn factor_parity(core: &AlgebraCore, g: GenId, e: u32) -> u8 {
        if e & 1 == 0 {
            0
        } else {
            parity_mask(&core.degree(g))
        }
    }

    /// Multiply two normal-form monomials. Returns the normal form and
    /// the Koszul sign parity, or `None` when an odd generator squares
    /// to zero.
    pub fn mul(&self, other: &Monomial, core: &AlgebraCore) -> Option<(Monomial, bool)> {
        // Parity of the suffix self.0[i..] for each i.
        let n = self.0.len();
        let mut suffix = vec![0u8; n + 1];
        for i in (0..n).rev() {
            let (g, e) = self.0[i];
            suffix[i] = suffix[i + 1] ^ Self::factor_parity(core, g, e);
        }

        let mut parity = false;
        for &(g, e) in &other.0 {
            let pos = self.0.partition_point(|&(h, _)| h <= g);
            let pb = Self::factor_parity(core, g, e);
            if mask_dot(pb, suffix[pos]) {
                parity = !parity;
            }
        }

        // Merge exponent lists.
        let mut merged: BTreeMap<GenId, i64> = BTreeMap::new();
        for &(g, e) in self.0.iter().chain(other.0.iter()) {
            *merged.entry(g).or_insert(0) += e as i64;
        }

        // Odd generators square to zero.
        for (&g, &e) in &merged {
            if e >= 2 && core.gen(g).is_odd() {
                return None;
            }
        }

        // Laurent cancellation t * t^-1 -> 1 (both partners even).
        let pairs: Vec<(GenId, GenId)> = merged
            .keys()
            .filter_map(|&g| core.gen(g).inverse.map(|inv| (g, inv)))
            .filter(|&(g, inv)| g < inv && merged.contains_key(&inv))
            .collect();
        for (g, inv) in pairs {
            let a = merged[&g];
            let b = merged[&inv];
            let c = a.min(b);
            *merged.get_mut(&g).unwrap() -= c;
            *merged.get_mut(&inv).unwrap() -= c;
        }

        let factors: Vec<(GenId, u32)> = merged
            .into_iter()
            .filter(|&(_, e)| e > 0)
            .map(|(g, e)| (g, e as u32))
            .collect();
        Some((Monomial(factors), parity))
    }

    pub fn display<'a>(&'a self, core: &'a AlgebraCore) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, core }
    }
}

pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    core: &'a AlgebraCore,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(g, e) in &self.mono.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.core.gen(g).name)?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A normal-form element: sparse map from monomials to nonzero scalars.
#[derive(Clone)]
pub struct AlgElement {
    pub core: Arc<AlgebraCore>,
    pub terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for AlgElement {
    fn eq(&self, other: &Self) -> bool {
        self.core.id == other.core.id && self.terms == other.terms
    }
}

impl Eq for AlgElement {}

impl AlgElement {
    pub fn zero(core: &Arc<AlgebraCore>) -> Self {
        AlgElement {
            core: Arc::clone(core),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(core: &Arc<AlgebraCore>) -> Self {
        Self::monomial(core, Monomial::one(), scalar::one())
    }

    pub fn scalar(core: &Arc<AlgebraCore>, c: Scalar) -> Self {
        Self::monomial(core, Monomial::one(), c)
    }

    pub fn gen(core: &Arc<AlgebraCore>, id: GenId) -> Self {
        Self::monomial(core, Monomial::gen(id), scalar::one())
    }

    pub fn gen_by_name(core: &Arc<AlgebraCore>, name: &str) -> Option<Self> {
        core.lookup(name).map(|id| Self::gen(core, id))
    }

    pub fn monomial(core: &Arc<AlgebraCore>, mono: Monomial, coeff: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        AlgElement {
            core: Arc::clone(core),
            terms,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mono: &Monomial) -> Scalar {
        self.terms.get(mono).cloned().unwrap_or_else(scalar::zero)
    }

    fn assert_same_core(&self, other: &AlgElement) {
        assert_eq!(
            self.core.id, other.core.id,
            "elements belong to different parent algebras"
        );
    }

    pub fn add(&self, other: &AlgElement) -> AlgElement {
        self.assert_same_core(other);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(scalar::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        AlgElement {
            core: Arc::clone(&self.core),
            terms,
        }
    }

    pub fn sub(&self, other: &AlgElement) -> AlgElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AlgElement {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, s: &Scalar) -> AlgElement {
        if s.is_zero() {
            return AlgElement::zero(&self.core);
        }
        self.map_coeffs(|c| c * s)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> AlgElement {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                terms.insert(m.clone(), v);
            }
        }
        AlgElement {
            core: Arc::clone(&self.core),
            terms,
        }
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono.clone()).or_insert_with(scalar::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    /// Graded-commutative product with normalization.
    pub fn mul(&self, other: &AlgElement) -> AlgElement {
        self.try_mul(other).expect("mismatched parent algebras")
    }

    pub fn try_mul(&self, other: &AlgElement) -> Result<AlgElement> {
        if self.core.id != other.core.id {
            return Err(Error::MismatchedAlgebra);
        }
        let mut out = AlgElement::zero(&self.core);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, parity)) = ma.mul(mb, &self.core) {
                    let mut c = ca * cb;
                    if parity {
                        c = -c;
                    }
                    out.add_term(m, c);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> AlgElement {
        let mut out = AlgElement::one(&self.core);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// The common multidegree of all terms, if the element is
    /// homogeneous (the zero element is homogeneous of any degree).
    pub fn degree(&self) -> Option<MultiDegree> {
        let mut it = self.terms.keys();
        let first = it.next()?.degree(&self.core);
        for m in it {
            if m.degree(&self.core) != first {
                return None;
            }
        }
        Some(first)
    }

    /// Split into homogeneous components keyed by multidegree.
    pub fn components(&self) -> BTreeMap<MultiDegree, AlgElement> {
        let mut out: BTreeMap<MultiDegree, AlgElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = m.degree(&self.core);
            out.entry(d)
                .or_insert_with(|| AlgElement::zero(&self.core))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Decompose an element that is linear in the generator family
    /// `family`: returns pairs `(g, coefficient)` such that the element
    /// equals the sum of `coefficient * g` with `g` moved to the right
    /// end of each monomial. Errors if some term does not contain
    /// exactly one factor from the family.
    pub fn extract_linear(&self, family: &[GenId]) -> Result<Vec<(GenId, AlgElement)>> {
        let mut out: BTreeMap<GenId, AlgElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            let hits: Vec<usize> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &(g, _))| family.contains(&g))
                .map(|(i, _)| i)
                .collect();
            if hits.len() != 1 || m.0[hits[0]].1 != 1 {
                return Err(Error::DegreeMismatch(format!(
                    "term {} is not linear in the requested family",
                    m.display(&self.core)
                )));
            }
            let idx = hits[0];
            let (g, _) = m.0[idx];
            // Koszul sign for moving g past the factors to its right.
            let mut suffix = MultiDegree::zero();
            for &(h, e) in &m.0[idx + 1..] {
                suffix = suffix + self.core.degree(h).scaled(e as i32);
            }
            let sgn = koszul_sign(&self.core.degree(g), &suffix);
            let mut rest = m.0.clone();
            rest.remove(idx);
            out.entry(g)
                .or_insert_with(|| AlgElement::zero(&self.core))
                .add_term(Monomial(rest), c * sgn);
        }
        Ok(out.into_iter().collect())
    }
}

impl fmt::Display for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let (sign_str, abs) = if c < &scalar::zero() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign_str == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign_str} ")?;
            }
            first = false;
            let is_unit_coeff = abs == scalar::one();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if is_unit_coeff {
                write!(f, "{}", m.display(&self.core))?;
            } else {
                write!(f, "{abs}*{}", m.display(&self.core))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn sample() -> (Arc<AlgebraCore>, GenId, GenId, GenId, GenId) {
        let mut b = AlgebraBuilder::new();
        let x = b.add_gen("x", MultiDegree::zero());
        let dx = b.add_gen("dx", MultiDegree::zero().with(Axis::Hodge, 1));
        let dy = b.add_gen("dy", MultiDegree::zero().with(Axis::Hodge, 1));
        let xi = b.add_gen("xi", MultiDegree::intrinsic(-1));
        (b.build(), x, dx, dy, xi)
    }

    #[test]
    fn unit_law() {
        let (core, x, ..) = sample();
        let ex = AlgElement::gen(&core, x);
        let one = AlgElement::one(&core);
        assert_eq!(ex.mul(&one), ex);
    }

    #[test]
    fn odd_square_is_zero() {
        let (core, _, dx, _, xi) = sample();
        let edx = AlgElement::gen(&core, dx);
        let exi = AlgElement::gen(&core, xi);
        assert!(edx.mul(&edx).is_zero());
        assert!(exi.mul(&exi).is_zero());
    }

    #[test]
    fn hodge_one_forms_anticommute() {
        let (core, _, dx, dy, _) = sample();
        let edx = AlgElement::gen(&core, dx);
        let edy = AlgElement::gen(&core, dy);
        let ab = edx.mul(&edy);
        let ba = edy.mul(&edx);
        assert_eq!(ab, ba.neg());
        assert_eq!(ab.num_terms(), 1);
    }

    #[test]
    fn graded_commutativity_with_koszul_sign() {
        let (core, x, dx, dy, xi) = sample();
        // Random-ish monomials; a*b == koszul(a,b) * b*a.
        let gens = [x, dx, dy, xi];
        for &g in &gens {
            for &h in &gens {
                let a = AlgElement::gen(&core, g);
                let b = AlgElement::gen(&core, h);
                let da = a.degree().unwrap();
                let db = b.degree().unwrap();
                let lhs = a.mul(&b);
                let rhs = b.mul(&a).scale(&koszul_sign(&da, &db));
                assert_eq!(lhs, rhs, "{g:?} {h:?}");
            }
        }
    }

    #[test]
    fn laurent_cancellation() {
        let mut b = AlgebraBuilder::new();
        let (t, tinv) = b.add_laurent_gen("t", MultiDegree::zero());
        let core = b.build();
        let et = AlgElement::gen(&core, t);
        let etinv = AlgElement::gen(&core, tinv);
        assert_eq!(et.mul(&etinv), AlgElement::one(&core));
        let t2 = et.pow(2);
        assert_eq!(t2.mul(&etinv), et);
    }

    #[test]
    fn extract_linear_signs() {
        let (core, x, dx, dy, _) = sample();
        // e = x*dx*dy, extract family {dx}: coefficient must carry the
        // sign for moving dx past dy.
        let e = AlgElement::gen(&core, x)
            .mul(&AlgElement::gen(&core, dx))
            .mul(&AlgElement::gen(&core, dy));
        let parts = e.extract_linear(&[dx]).unwrap();
        assert_eq!(parts.len(), 1);
        let (g, coeff) = &parts[0];
        assert_eq!(*g, dx);
        let expected = AlgElement::gen(&core, x)
            .mul(&AlgElement::gen(&core, dy))
            .scale(&int(-1));
        assert_eq!(coeff, &expected);
    }
}

//! Multiplicative maps between free graded-commutative algebras,
//! given by their values on generators.

use crate::algebra::{AlgElement, AlgebraCore, GenId};
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Clone)]
pub struct AlgebraMap {
    pub name: String,
    pub src: Arc<AlgebraCore>,
    pub dst: Arc<AlgebraCore>,
    values: HashMap<GenId, AlgElement>,
}

impl AlgebraMap {
    pub fn new(
        name: &str,
        src: &Arc<AlgebraCore>,
        dst: &Arc<AlgebraCore>,
        values: Vec<(GenId, AlgElement)>,
    ) -> Result<Self> {
        let mut map = HashMap::new();
        for (g, v) in values {
            if v.core.id != dst.id {
                return Err(Error::MismatchedAlgebra);
            }
            map.insert(g, v);
        }
        Ok(AlgebraMap {
            name: name.to_string(),
            src: Arc::clone(src),
            dst: Arc::clone(dst),
            values: map,
        })
    }

    /// The map sending every generator of `src` to the generator of
    /// the same name in `dst`.
    pub fn by_name(name: &str, src: &Arc<AlgebraCore>, dst: &Arc<AlgebraCore>) -> Result<Self> {
        let mut values = Vec::new();
        for (g, gen) in src.gens() {
            let id = dst
                .lookup(&gen.name)
                .ok_or_else(|| Error::Other(format!("no generator `{}` in target", gen.name)))?;
            values.push((g, AlgElement::gen(dst, id)));
        }
        Self::new(name, src, dst, values)
    }

    pub fn value(&self, g: GenId) -> AlgElement {
        self.values
            .get(&g)
            .cloned()
            .unwrap_or_else(|| AlgElement::zero(&self.dst))
    }

    pub fn set_value(&mut self, g: GenId, v: AlgElement) {
        assert_eq!(v.core.id, self.dst.id);
        self.values.insert(g, v);
    }

    /// Multiplicative extension to normal-form elements.
    pub fn apply(&self, a: &AlgElement) -> AlgElement {
        assert_eq!(a.core.id, self.src.id, "algebra map applied across algebras");
        let mut out = AlgElement::zero(&self.dst);
        for (m, c) in &a.terms {
            let mut term = AlgElement::scalar(&self.dst, c.clone());
            for &(g, e) in &m.0 {
                let v = match self.values.get(&g) {
                    Some(v) => v.clone(),
                    None => {
                        // Default: same-name generator when present.
                        let name = &self.src.gen(g).name;
                        match self.dst.lookup(name) {
                            Some(id) => AlgElement::gen(&self.dst, id),
                            None => AlgElement::zero(&self.dst),
                        }
                    }
                };
                term = term.mul(&v.pow(e));
            }
            out = out.add(&term);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraBuilder;
    use crate::degree::MultiDegree;

    #[test]
    fn by_name_identity() {
        let mut b = AlgebraBuilder::new();
        b.add_gen("x", MultiDegree::zero());
        let core = b.build();
        let f = AlgebraMap::by_name("id", &core, &core).unwrap();
        let x = AlgElement::gen_by_name(&core, "x").unwrap();
        let x2 = x.mul(&x);
        assert_eq!(f.apply(&x2), x2);
    }
}

//! Exact-arithmetic models of differential forms and polyvector fields
//! on global quotients, with certification of shifted pre-symplectic
//! cocycles, non-degeneracy, and shifted Poisson Maurer-Cartan
//! elements at desk scale.

pub mod action;
pub mod algebra;
pub mod algmap;
pub mod bundle;
pub mod cartan;
pub mod ce;
pub mod collapse;
pub mod cosimplicial;
pub mod degree;
pub mod derivation;
pub mod dold_kan;
pub mod error;
pub mod forms;
pub mod getzler;
pub mod iso;
pub mod matrix;
pub mod poly;
pub mod prelie;
pub mod scalar;
pub mod structures;
pub mod triangular;

pub use algebra::{AlgElement, AlgebraBuilder, AlgebraCore, GenId, Monomial};
pub use degree::{koszul_sign, Axis, MultiDegree};
pub use derivation::{Derivation, FreeGCAlgebra};
pub use error::{Error, Result};
pub use scalar::Scalar;

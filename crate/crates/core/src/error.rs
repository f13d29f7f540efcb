//! Error types shared across the library.

use crate::degree::MultiDegree;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("elements belong to different parent algebras")]
    MismatchedAlgebra,

    #[error("derivation has no value for generator `{0}`")]
    MissingDerivationValue(String),

    #[error("generator `{name}`: differential has degree {found} but expected {expected}")]
    BadDifferentialDegree {
        name: String,
        found: MultiDegree,
        expected: MultiDegree,
    },

    #[error("d^2 != 0, first failing element: {witness}")]
    DSquaredNonzero { witness: String },

    #[error("structure constants are not antisymmetric at ({i},{j})")]
    NotAntisymmetric { i: usize, j: usize },

    #[error("Jacobi identity fails on basis triple ({i},{j},{k})")]
    JacobiViolation { i: usize, j: usize, k: usize },

    #[error("map is not a chain map; witness {witness}")]
    NotChainMap { witness: String },

    #[error("basis is not finite in window: {0}")]
    NonFiniteBasis(String),

    #[error("window or polynomial-degree bound too small: {0}")]
    WindowTooSmall(String),

    #[error("operation unsupported in Lie mode: {0}")]
    UnsupportedLieMode(String),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("isomorphism certificate failed: {0}")]
    IsoMismatch(String),

    #[error("shift mismatch between polyvectors")]
    ShiftMismatch,

    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;

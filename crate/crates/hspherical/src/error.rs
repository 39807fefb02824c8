//! Crate-wide error type.

use num_complex::Complex64;

use crate::numerics::NumericsError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("invalid root data: {0}")]
    InvalidRootData(String),
    #[error("Weyl group closure exceeded {limit} elements")]
    WeylExplosion { limit: usize },
    #[error("unknown case tag `{0}`")]
    UnknownCase(String),
    #[error("invalid base point: {0}")]
    InvalidBasePoint(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("non-generic parameter: recursion denominator at mu = {mu:?} is {denominator}")]
    Genericity {
        mu: Vec<i64>,
        denominator: Complex64,
    },
    #[error("point outside the domain: {0}")]
    Domain(String),
    #[error("series truncation too short: tail bound {tail_bound:e} exceeds {tolerance:e}")]
    TableTooShort { tail_bound: f64, tolerance: f64 },
    #[error("c-function pole: root {root:?} with lambda_alpha = {value}")]
    Pole { root: Vec<f64>, value: Complex64 },
    #[error("square-root argument {0} lies on the branch cut")]
    Branch(Complex64),
    #[error("parameter outside the integrability window: {0}")]
    IntegrabilityWindow(String),
    #[error("integral diverges: {0}")]
    Divergence(String),
}

impl Error {
    /// Errors caused by evaluating outside a region where the quantity is defined
    /// or computable, as opposed to malformed input.
    pub fn is_numerical_domain(&self) -> bool {
        !matches!(
            self,
            Error::InvalidRootData(_) | Error::UnknownCase(_) | Error::Dimension { .. }
        )
    }
}

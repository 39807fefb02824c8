//! Special functions and quadrature kernels shared by every other module.

pub mod gamma;
pub mod hyp2f1;
pub mod quad;

use num_complex::Complex64;

pub use gamma::{complex_gamma, gamma_quotient, ln_gamma, recip_gamma};
pub use hyp2f1::{gauss_2f1, CutSide};
pub use quad::{
    integrate_breakpoints, integrate_halfline, integrate_interval, GaussLegendre, HalflineResult,
    QuadResult, QuadratureConfig,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericsError {
    #[error("Gamma has a pole at z = {z}")]
    GammaPole { z: Complex64 },
    #[error("2F1 is undefined: c = {c} is a non-positive integer")]
    HypergeometricPole { c: Complex64 },
    #[error("z = {z} lies on the cut [1, inf) and no side was given")]
    CutAmbiguity { z: Complex64 },
    #[error("2F1 diverges at z = 1 since Re(c - a - b) = {excess} <= 0")]
    DivergentAtOne { excess: f64 },
    #[error("{what} did not converge within {iterations} iterations")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
    },
    #[error("quadrature budget exhausted: best value {value}, error estimate {err_estimate:e}")]
    BudgetExhausted { value: Complex64, err_estimate: f64 },
    #[error("integrand is not finite at x = {x}")]
    NonFinite { x: f64 },
    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),
}

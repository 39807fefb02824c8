//! Holomorphic H-spherical analysis on the complex crown of a Riemannian
//! symmetric space, for the split rank-one and rank-two catalog cases
//! SL(2,R), SL(3,R) and Sp(2,R).
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: complex Gamma, Gauss 2F1, Gauss-Legendre quadrature.
//! * [`rootcore`]: restricted root systems, Weyl groups, rho, the monoid of
//!   positive-root sums.
//! * [`crown`]: the crown polytope, its H-sub-polytope and base point.
//! * [`hcseries`]: Harish-Chandra Gamma coefficients and the Phi series.
//! * [`cfunc`]: partial and full c-functions, the square-root factor and the
//!   deformed c-function.
//! * [`spherical`]: spherical functions, H-spherical functions and their
//!   asymptotics.
//! * [`sl2`]: the explicit line model of the SL(2,R) principal series.
//! * [`hardy`]: Plancherel density, Cauchy-Szego kernel, growth checks.

pub mod cfunc;
pub mod crown;
pub mod error;
pub mod hardy;
pub mod hcseries;
pub mod linalg;
pub mod numerics;
pub mod rootcore;
pub mod sl2;
pub mod spherical;

pub use error::{Error, Result};
pub use num_complex::Complex64;

//! Partial c-functions c_w, the Harish-Chandra c-function, the square-root
//! factor z_H(lambda) and c_{G/H} = c z_H.
//!
//! Convention: c_w(lambda) = int_{Nbar_w} a(nbar)^{rho - lambda} dnbar converges for
//! Re lambda << 0. Each root space of Nbar_w carries the Lebesgue measure divided
//! by pi, which makes the SL(2,R) factor exactly
//! g(x) = Gamma(-x) / (sqrt(pi) Gamma(1/2 - x)) at x = <lambda, alpha>/<alpha, alpha>.
//! The full c-function is rescaled once so that c(-rho) = 1.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::crown::BasePoint;
use crate::error::{Error, Result};
use crate::linalg::{complexify, pair};
use crate::numerics::gamma::is_gamma_pole;
use crate::numerics::gamma_quotient;
use crate::rootcore::{rho, RootSystem, WeylGroup};

/// Branch test tolerance for the square-root factor.
const BRANCH_TOL: f64 = 1e-14;

#[derive(Debug, Clone)]
pub struct CFunctionContext {
    pub rs: RootSystem,
    pub weyl: WeylGroup,
    /// C with c = C c_{w0}, fixed by c(-rho) = 1.
    pub normalization_constant: f64,
    indivisible: Vec<usize>,
}

/// The rank-one factor at x = lambda_alpha for multiplicities (m_alpha, m_2alpha).
///
/// For (1, 0) this is Gamma(-x) / (sqrt(pi) Gamma(1/2 - x)); in general
/// sqrt(2) 2^x Gamma(-x) / (Gamma((m/2 + 1 - x)/2) Gamma((m/2 + m2 - x)/2)),
/// which reduces to the former by the duplication formula.
pub fn rank_one_factor(x: Complex64, m: u32, m2: u32) -> Result<Complex64> {
    if is_gamma_pole(-x) {
        return Err(Error::Pole {
            root: vec![],
            value: x,
        });
    }
    let one = Complex64::new(1.0, 0.0);
    if (m, m2) == (1, 0) {
        let v = gamma_quotient(&[-x], &[0.5 - x])?;
        return Ok(v / PI.sqrt());
    }
    let mh = 0.5 * m as f64;
    let v = gamma_quotient(&[-x], &[(mh + one - x) * 0.5, (mh + m2 as f64 - x) * 0.5])?;
    Ok(std::f64::consts::SQRT_2 * (x * std::f64::consts::LN_2).exp() * v)
}

impl CFunctionContext {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        let weyl = WeylGroup::new(rs)?;
        let indivisible = rs.indivisible_positive_indices();
        let mut ctx = Self {
            rs: rs.clone(),
            weyl,
            normalization_constant: 1.0,
            indivisible,
        };
        let minus_rho = complexify(&rho(rs).iter().map(|x| -x).collect::<Vec<_>>());
        let raw = ctx.c_w(ctx.weyl.longest_index(), &minus_rho)?;
        if !(raw.im.abs() <= 1e-14 * raw.re.abs() && raw.re > 0.0) {
            return Err(Error::InvalidRootData(format!(
                "c_w0(-rho) = {raw} is not a positive real"
            )));
        }
        ctx.normalization_constant = 1.0 / raw.re;
        Ok(ctx)
    }

    /// <lambda, alpha> / <alpha, alpha>.
    pub fn lambda_alpha(&self, lambda: &[Complex64], alpha_index: usize) -> Complex64 {
        self.rs
            .coroot_pairing(lambda, &self.rs.roots[alpha_index].covector)
    }

    /// Indices of the positive indivisible roots alpha with w^{-1} alpha < 0.
    pub fn inversion_set(&self, w: usize) -> Vec<usize> {
        let winv = &self.weyl.elements[self.weyl.inverse_index(w)];
        self.indivisible
            .iter()
            .copied()
            .filter(|&i| {
                let image = winv.act_dual(&self.rs.roots[i].covector);
                self.rs
                    .root_index(&image)
                    .is_some_and(|j| !self.rs.roots[j].positive)
            })
            .collect()
    }

    fn factor(&self, lambda: &[Complex64], i: usize) -> Result<Complex64> {
        let alpha = &self.rs.roots[i];
        let x = self.lambda_alpha(lambda, i);
        let double: Vec<f64> = alpha.covector.iter().map(|v| 2.0 * v).collect();
        rank_one_factor(x, alpha.multiplicity, self.rs.multiplicity_of(&double)).map_err(
            |e| match e {
                Error::Pole { value, .. } => Error::Pole {
                    root: alpha.covector.clone(),
                    value,
                },
                other => other,
            },
        )
    }

    /// c_w(lambda) as the product of rank-one factors over the inversion set of w.
    pub fn c_w(&self, w: usize, lambda: &[Complex64]) -> Result<Complex64> {
        if lambda.len() != self.rs.rank {
            return Err(Error::Dimension {
                expected: self.rs.rank,
                got: lambda.len(),
            });
        }
        self.inversion_set(w)
            .into_iter()
            .try_fold(Complex64::new(1.0, 0.0), |acc, i| {
                Ok(acc * self.factor(lambda, i)?)
            })
    }

    /// c(lambda) = C c_{w0}(lambda), normalized by c(-rho) = 1.
    pub fn c_function(&self, lambda: &[Complex64]) -> Result<Complex64> {
        Ok(self.normalization_constant * self.c_w(self.weyl.longest_index(), lambda)?)
    }

    /// The coefficient of Phi_lambda in phi_lambda = sum_w c_exp(w lambda) Phi_{w lambda}.
    ///
    /// With the a^{rho - lambda} sign convention this is c(-lambda).
    pub fn c_expansion(&self, lambda: &[Complex64]) -> Result<Complex64> {
        let neg: Vec<Complex64> = lambda.iter().map(|x| -x).collect();
        self.c_function(&neg)
    }

    /// sum over W/W0 of z_H^{-2 w^{-1} lambda} = sum over x in W X_H of exp(-2i lambda(x)).
    pub fn z_h_squared(&self, bp: &BasePoint, lambda: &[Complex64]) -> Complex64 {
        self.weyl
            .orbit_points(&bp.x_h)
            .iter()
            .map(|x| (-2.0 * Complex64::i() * pair(lambda, x)).exp())
            .sum()
    }

    /// Principal square root of `z_h_squared`, positive on i a*.
    pub fn z_h_sqrt(&self, bp: &BasePoint, lambda: &[Complex64]) -> Result<Complex64> {
        let s = self.z_h_squared(bp, lambda);
        if s.re <= 0.0 && s.im.abs() <= BRANCH_TOL * s.norm().max(f64::MIN_POSITIVE) {
            return Err(Error::Branch(s));
        }
        Ok(s.sqrt())
    }

    /// c_{G/H}(lambda) = c(lambda) z_H(lambda).
    pub fn c_gh(&self, bp: &BasePoint, lambda: &[Complex64]) -> Result<Complex64> {
        Ok(self.c_function(lambda)? * self.z_h_sqrt(bp, lambda)?)
    }
}

/// One c_w evaluation with its inversion set, for reporting.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CwReport {
    pub word: Vec<usize>,
    pub inversion_roots: Vec<Vec<f64>>,
    pub value: Option<Complex64>,
    pub pole: Option<Vec<f64>>,
}

pub fn c_w_report(ctx: &CFunctionContext, w: usize, lambda: &[Complex64]) -> Result<CwReport> {
    let inversion_roots = ctx
        .inversion_set(w)
        .into_iter()
        .map(|i| ctx.rs.roots[i].covector.clone())
        .collect();
    let word = ctx.weyl.elements[w].word.clone();
    match ctx.c_w(w, lambda) {
        Ok(v) => Ok(CwReport {
            word,
            inversion_roots,
            value: Some(v),
            pole: None,
        }),
        Err(Error::Pole { root, .. }) => Ok(CwReport {
            word,
            inversion_roots,
            value: None,
            pole: Some(root),
        }),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::complex_gamma;
    use crate::rootcore::CaseTag;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn normalization_constants() {
        let a1 = CFunctionContext::new(&RootSystem::build(CaseTag::A1).unwrap()).unwrap();
        assert!((a1.normalization_constant - 1.0).abs() < 1e-14);
        let a2 = CFunctionContext::new(&RootSystem::build(CaseTag::A2).unwrap()).unwrap();
        assert!((a2.normalization_constant - PI / 2.0).abs() < 1e-13);
        assert!((a2.c_function(&[c(-1.0), c(-1.0)]).unwrap() - 1.0).norm() < 1e-14);
    }

    #[test]
    fn identity_has_empty_product() {
        let ctx = CFunctionContext::new(&RootSystem::build(CaseTag::C2).unwrap()).unwrap();
        assert_eq!(
            ctx.c_w(0, &[Complex64::new(0.3, 2.0), c(-4.0)]).unwrap(),
            c(1.0)
        );
    }

    #[test]
    fn general_multiplicity_formula_reduces() {
        // the (1, 0) shortcut and the duplication-formula form agree
        let x = Complex64::new(-0.7, 0.4);
        let one_half = Complex64::new(0.5, 0.0);
        let via_gamma =
            complex_gamma(-x).unwrap() / (PI.sqrt() * complex_gamma(one_half - x).unwrap());
        assert!((rank_one_factor(x, 1, 0).unwrap() - via_gamma).norm() < 1e-13);
        let mh = 0.5;
        let general = std::f64::consts::SQRT_2
            * (x * std::f64::consts::LN_2).exp()
            * complex_gamma(-x).unwrap()
            / (complex_gamma((mh + 1.0 - x) * 0.5).unwrap()
                * complex_gamma((mh - x) * 0.5).unwrap());
        assert!((general - via_gamma).norm() < 1e-13);
    }

    #[test]
    fn poles_are_flagged() {
        let ctx = CFunctionContext::new(&RootSystem::build(CaseTag::A1).unwrap()).unwrap();
        assert!(matches!(ctx.c_function(&[c(0.0)]), Err(Error::Pole { .. })));
        assert!(matches!(ctx.c_function(&[c(2.0)]), Err(Error::Pole { .. })));
    }

    #[test]
    fn z_h_at_zero_and_on_the_imaginary_axis() {
        for tag in CaseTag::CATALOG {
            let rs = RootSystem::build(tag).unwrap();
            let ctx = CFunctionContext::new(&rs).unwrap();
            let bp = BasePoint::catalog(&rs).unwrap();
            let n = ctx.weyl.order() / ctx.weyl.stabilizer(&bp.x_h).len();
            let zero = vec![c(0.0); rs.rank];
            assert!((ctx.z_h_sqrt(&bp, &zero).unwrap() - (n as f64).sqrt()).norm() < 1e-14);
        }
        let rs = RootSystem::build(CaseTag::A1).unwrap();
        let ctx = CFunctionContext::new(&rs).unwrap();
        let bp = BasePoint::catalog(&rs).unwrap();
        let s = 1.7;
        let z = ctx.z_h_sqrt(&bp, &[Complex64::new(0.0, s)]).unwrap();
        assert!(z.im == 0.0 || z.im.abs() < 1e-15);
        assert!((z.re - (2.0 * (PI * s / 2.0).cosh()).sqrt()).abs() < 1e-13);
    }

    #[test]
    fn branch_error_on_the_cut() {
        // in rank one the sum is 2 cos(pi lambda / 2), negative at lambda = 2
        let rs = RootSystem::build(CaseTag::A1).unwrap();
        let ctx = CFunctionContext::new(&rs).unwrap();
        let bp = BasePoint::catalog(&rs).unwrap();
        assert!(matches!(
            ctx.z_h_sqrt(&bp, &[c(2.0)]),
            Err(Error::Branch(_))
        ));
    }
}

//! Spherical functions as Weyl sums of Phi series, the rank-one K-integral,
//! the H-spherical functions theta_lambda and their asymptotics.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::cfunc::CFunctionContext;
use crate::crown::{z_h_power, Crown};
use crate::error::{Error, Result};
use crate::hcseries::{gamma_coeffs, pair_c, phi_function, GammaOptions, TubePoint};
use crate::linalg::{complexify, csub};
use crate::numerics::{integrate_breakpoints, QuadratureConfig};
use crate::rootcore::rho;
use crate::sl2::{iwasawa_sl2, Mat2};

/// One summand c_exp(w lambda) Phi_{w lambda}(z).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeylTerm {
    pub word: Vec<usize>,
    pub w_lambda: Vec<Complex64>,
    pub coefficient: Complex64,
    pub phi: Complex64,
    pub term: Complex64,
    pub tail_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SphericalEvalReport {
    pub value: Complex64,
    pub per_weyl_term: Vec<WeylTerm>,
    /// Sum over terms of |c_exp(w lambda)| times the Phi tail bound.
    pub tail_bound: f64,
    pub point: TubePoint,
}

/// phi_lambda(z) = sum_w c_exp(w lambda) Phi_{w lambda}(z).
pub fn spherical_series(
    ctx: &CFunctionContext,
    lambda: &[Complex64],
    point: &TubePoint,
    height: usize,
    opts: GammaOptions,
) -> Result<SphericalEvalReport> {
    if !point.in_a_plus {
        return Err(Error::Domain(
            "Re alpha(z) <= 0 for some positive root".into(),
        ));
    }
    if !point.in_2omega {
        return Err(Error::Domain("Im z is not in 2 Omega".into()));
    }
    let mut terms = Vec::with_capacity(ctx.weyl.order());
    for w in &ctx.weyl.elements {
        let wl = w.act_dual_c(lambda);
        let table = gamma_coeffs(&ctx.rs, &wl, height, opts)?;
        let phi = phi_function(&ctx.rs, &table, &point.z, None)?;
        let coefficient = ctx.c_expansion(&wl)?;
        terms.push(WeylTerm {
            word: w.word.clone(),
            w_lambda: wl,
            coefficient,
            phi: phi.value,
            term: coefficient * phi.value,
            tail_bound: coefficient.norm() * phi.tail_bound,
        });
    }
    let value = terms.iter().map(|t| t.term).sum();
    let tail_bound = terms.iter().map(|t| t.tail_bound).sum();
    Ok(SphericalEvalReport {
        value,
        per_weyl_term: terms,
        tail_bound,
        point: point.clone(),
    })
}

/// theta_lambda(exp z) = phi_lambda(z + i X_H).
pub fn theta_function(
    ctx: &CFunctionContext,
    crown: &Crown,
    lambda: &[Complex64],
    z: &[Complex64],
    height: usize,
    opts: GammaOptions,
) -> Result<SphericalEvalReport> {
    let base = TubePoint::new(&ctx.rs, crown, z)?;
    let shifted = base.shifted(&ctx.rs, crown, &crown.base_point.x_h)?;
    if !shifted.in_a_plus {
        return Err(Error::Domain(
            "shifted point: Re alpha(z) <= 0 for some positive root".into(),
        ));
    }
    if !shifted.in_2omega {
        return Err(Error::Domain(
            "shifted point: Im z + X_H is not in 2 Omega".into(),
        ));
    }
    spherical_series(ctx, lambda, &shifted, height, opts)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticsReport {
    pub t_grid: Vec<f64>,
    /// e^{t (rho - lambda)(Y)} theta_lambda(exp tY).
    pub ratios: Vec<Complex64>,
    /// c_exp(lambda) z_H^{lambda - rho}.
    pub predicted: Complex64,
    /// c(lambda) z_H^{lambda - rho} with the literal c.
    pub predicted_literal_c: Complex64,
    pub residuals: Vec<f64>,
}

pub fn theta_asymptotics(
    ctx: &CFunctionContext,
    crown: &Crown,
    lambda: &[Complex64],
    y: &[f64],
    t_grid: &[f64],
    height: usize,
    opts: GammaOptions,
) -> Result<AsymptoticsReport> {
    for r in ctx.rs.positive_roots() {
        if ctx.rs.inner_c(&real_c(lambda), &complexify(&r.covector)).re <= 0.0 {
            return Err(Error::Domain(
                "need <Re lambda, alpha> > 0 for every positive root".into(),
            ));
        }
    }
    let lr = csub(lambda, &complexify(&rho(&ctx.rs)));
    let zh = z_h_power(&crown.base_point, &lr);
    let predicted = ctx.c_expansion(lambda)? * zh;
    let predicted_literal_c = ctx.c_function(lambda)? * zh;
    let mut ratios = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let z: Vec<Complex64> = y.iter().map(|v| Complex64::new(t * v, 0.0)).collect();
        let th = theta_function(ctx, crown, lambda, &z, height, opts)?.value;
        ratios.push((-pair_c(&lr, &z)).exp() * th);
    }
    let residuals = ratios.iter().map(|r| (r - predicted).norm()).collect();
    Ok(AsymptoticsReport {
        t_grid: t_grid.to_vec(),
        ratios,
        predicted,
        predicted_literal_c,
        residuals,
    })
}

fn real_c(v: &[Complex64]) -> Vec<Complex64> {
    v.iter().map(|x| Complex64::new(x.re, 0.0)).collect()
}

/// phi_lambda(g) = int_K a(kg)^{rho - lambda} dk for SL(2), lambda scalar.
///
/// Real g uses the periodic trapezoid rule with doubling; complex g, where the
/// integrand can be nearly singular, uses adaptive panels split at the minima
/// of |m21^2 + m22^2|.
pub fn spherical_quadrature_sl2(
    lambda: Complex64,
    g: &Mat2,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    let exponent = Complex64::new(1.0, 0.0) - lambda;
    let integrand = |th: f64| -> Result<Complex64> {
        let (c, s) = (th.cos(), th.sin());
        let k = [
            [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
            [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
        ];
        Ok(iwasawa_sl2(&mul(&k, g))?.a_power(exponent))
    };
    let real = g.iter().flatten().all(|x| x.im == 0.0);
    if real {
        // the integrand has period pi
        let mut n = 16;
        let mut prev: Option<Complex64> = None;
        while n <= 1 << 16 {
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                s += integrand(PI * j as f64 / n as f64)?;
            }
            let v = s / n as f64;
            if let Some(p) = prev {
                if (v - p).norm() <= cfg.abs_tol.max(cfg.rel_tol * v.norm()) {
                    return Ok(v);
                }
            }
            prev = Some(v);
            n *= 2;
        }
    }
    let q = |th: f64| {
        let (c, s) = (th.cos(), th.sin());
        let m21 = s * g[0][0] + c * g[1][0];
        let m22 = s * g[0][1] + c * g[1][1];
        (m21 * m21 + m22 * m22).norm()
    };
    let n = 512;
    let mut points = vec![0.0];
    for j in 1..n {
        let (a, b, c) = (
            PI * (j - 1) as f64 / n as f64,
            PI * j as f64 / n as f64,
            PI * (j + 1) as f64 / n as f64,
        );
        if q(b) < q(a) && q(b) <= q(c) {
            points.push(golden_min(&q, a, c));
        }
    }
    points.push(PI);
    let bad = std::cell::Cell::new(None);
    let f = |th: f64| match integrand(th) {
        Ok(v) => v,
        Err(e) => {
            bad.set(Some(e));
            Complex64::new(0.0, 0.0)
        }
    };
    let r = integrate_breakpoints(&f, &points, cfg)?;
    if let Some(e) = bad.take() {
        return Err(e);
    }
    Ok(r.value / PI)
}

fn golden_min(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..80 {
        let c = b - r * (b - a);
        let d = a + r * (b - a);
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    0.5 * (a + b)
}

fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    m
}

/// diag(e^z, e^{-z}) as a complex 2x2 matrix.
pub fn torus_sl2(z: Complex64) -> Mat2 {
    let zero = Complex64::new(0.0, 0.0);
    [[z.exp(), zero], [zero, (-z).exp()]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crown::BasePoint;
    use crate::rootcore::{CaseTag, RootSystem};

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn quadrature_at_identity_is_one() {
        let g = torus_sl2(c(0.0));
        for lam in [c(0.3), Complex64::new(-1.2, 2.0)] {
            let v = spherical_quadrature_sl2(lam, &g, &QuadratureConfig::default()).unwrap();
            assert!((v - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn rank_one_series_matches_quadrature() {
        let rs = RootSystem::build(CaseTag::A1).unwrap();
        let ctx = CFunctionContext::new(&rs).unwrap();
        let w = crate::rootcore::WeylGroup::new(&rs).unwrap();
        let crown = Crown::new(&rs, &w, BasePoint::catalog(&rs).unwrap()).unwrap();
        let t = 0.8;
        let lam = c(0.37);
        let p = TubePoint::new(&rs, &crown, &[c(t)]).unwrap();
        let series = spherical_series(&ctx, &[lam], &p, 40, GammaOptions::default())
            .unwrap()
            .value;
        let quad = spherical_quadrature_sl2(
            lam,
            &torus_sl2(c(t)),
            &QuadratureConfig::with_tolerance(1e-12),
        )
        .unwrap();
        assert!(
            (series - quad).norm() / quad.norm() < 1e-8,
            "{series} vs {quad}"
        );
    }
}

//! The Plancherel density 1/|c_{G/H}|^2 of the Hardy space, the Cauchy-Szego
//! function Psi, the growth condition, the b(lambda) isometry and the SL(2,R)
//! hypergeometric identity for Psi.
//!
//! Spectral parameters on i a_+^* are passed as real covectors nu with
//! lambda = i nu. The Lebesgue measure d lambda is taken in covector coordinates.

use num_complex::Complex64;
use serde::Serialize;
use std::cell::Cell;
use std::f64::consts::PI;

use crate::cfunc::CFunctionContext;
use crate::crown::{h_norm, BasePoint, Crown};
use crate::error::{Error, Result};
use crate::hcseries::{GammaOptions, TubePoint};
use crate::linalg::{complexify, dot, pair};
use crate::numerics::{
    gamma_quotient, gauss_2f1, integrate_halfline, integrate_interval, CutSide, NumericsError,
    QuadResult, QuadratureConfig,
};
use crate::rootcore::rho;
use crate::spherical::theta_function;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn i_nu(nu: &[f64]) -> Vec<Complex64> {
    nu.iter().map(|&x| Complex64::new(0.0, x)).collect()
}

/// nu strictly inside the positive chamber: <nu, alpha> > 0 on simple roots.
fn check_chamber(ctx: &CFunctionContext, nu: &[f64]) -> Result<()> {
    if nu.len() != ctx.rs.rank {
        return Err(Error::Dimension {
            expected: ctx.rs.rank,
            got: nu.len(),
        });
    }
    for &i in &ctx.rs.simple {
        if ctx.rs.inner(nu, &ctx.rs.roots[i].covector) <= 0.0 {
            return Err(Error::Domain(format!(
                "nu = {nu:?} is not inside the positive chamber"
            )));
        }
    }
    Ok(())
}

/// log of sum over x in W X_H of exp(2 nu(x)), which is |z_H(i nu)|^2.
fn log_z_h_abs_sq(ctx: &CFunctionContext, bp: &BasePoint, nu: &[f64]) -> f64 {
    let e: Vec<f64> = ctx
        .weyl
        .orbit_points(&bp.x_h)
        .iter()
        .map(|x| 2.0 * crate::linalg::dot(nu, x))
        .collect();
    let m = e.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    m + e.iter().map(|v| (v - m).exp()).sum::<f64>().ln()
}

/// log of 1/|c_{G/H}(i nu)|^2, finite for nu inside the chamber.
fn log_density(ctx: &CFunctionContext, bp: &BasePoint, nu: &[f64]) -> Result<f64> {
    let c = ctx.c_function(&i_nu(nu))?;
    Ok(-2.0 * c.norm().ln() - log_z_h_abs_sq(ctx, bp, nu))
}

/// The density of d mu = d lambda / |c_{G/H}(lambda)|^2 on i a_+^*.
#[derive(Debug, Clone)]
pub struct PlancherelDensity {
    pub ctx: CFunctionContext,
    pub bp: BasePoint,
}

impl PlancherelDensity {
    pub fn new(ctx: CFunctionContext, bp: BasePoint) -> Self {
        Self { ctx, bp }
    }

    pub fn eval(&self, nu: &[f64]) -> Result<f64> {
        plancherel_density(&self.ctx, &self.bp, nu)
    }
}

/// 1/|c_{G/H}(i nu)|^2.
pub fn plancherel_density(ctx: &CFunctionContext, bp: &BasePoint, nu: &[f64]) -> Result<f64> {
    check_chamber(ctx, nu)?;
    Ok(log_density(ctx, bp, nu)?.exp())
}

/// |Gamma((i nu + 1)/2) / Gamma(i nu / 2)|^2 / cosh(pi nu / 2), the weight in
/// the SL(2,R) identity for Psi without its prefactor pi/2.
pub fn sl2_identity_weight(nu: f64) -> Result<f64> {
    let z = Complex64::new(0.0, nu);
    let q = gamma_quotient(&[(z + 1.0) * 0.5], &[z * 0.5])?;
    Ok(q.norm_sqr() / (0.5 * PI * nu).cosh())
}

/// Result of an integral over the open chamber {nu = s_1 omega_1 + ... : s_i > 0}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChamberIntegral {
    pub value: Complex64,
    pub err_estimate: f64,
    pub evaluations: usize,
    /// Outermost radial cutoff reached by the doubling.
    pub cutoff: f64,
}

/// Default radial cutoff beyond which a non-decaying integrand is reported as divergent.
pub const DEFAULT_MAX_CUTOFF: f64 = 1024.0;

/// Integral over the radial band lo <= r <= hi of the chamber.
///
/// Rank one integrates s = r over [lo, hi]; rank two uses s = r (1 - u, u)
/// with adaptive panels in r and, for every r node, in u.
pub fn radial_segment(
    ctx: &CFunctionContext,
    f: &dyn Fn(&[f64]) -> Result<Complex64>,
    lo: f64,
    hi: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    let edges = ctx.rs.chamber_edges()?;
    let rank = ctx.rs.rank;
    let bad: Cell<Option<Error>> = Cell::new(None);
    let guard = |v: Result<Complex64>| match v {
        Ok(v) => v,
        Err(e) => {
            bad.set(Some(e));
            ZERO
        }
    };
    let point = |s: &[f64]| -> Vec<f64> {
        (0..rank)
            .map(|k| s.iter().zip(&edges).map(|(si, e)| si * e[k]).sum())
            .collect()
    };
    let r = match rank {
        1 => {
            let jac = edges[0][0].abs();
            integrate_interval(&|s: f64| guard(f(&point(&[s]))) * jac, lo, hi, cfg)
        }
        2 => {
            let jac = (edges[0][0] * edges[1][1] - edges[0][1] * edges[1][0]).abs();
            let inner_err = Cell::new(0.0f64);
            let inner_evals = Cell::new(0usize);
            let inner = |r: f64| -> Complex64 {
                let g = |u: f64| guard(f(&point(&[r * (1.0 - u), r * u])));
                match integrate_interval(&g, 0.0, 1.0, cfg) {
                    Ok(q) => {
                        inner_err.set(inner_err.get().max(q.err_estimate * r * jac));
                        inner_evals.set(inner_evals.get() + q.evaluations);
                        q.value * r * jac
                    }
                    Err(e) => {
                        bad.set(Some(e.into()));
                        ZERO
                    }
                }
            };
            integrate_interval(&inner, lo, hi, cfg).map(|q| QuadResult {
                err_estimate: q.err_estimate + inner_err.get() * (hi - lo),
                evaluations: q.evaluations + inner_evals.get(),
                ..q
            })
        }
        _ => {
            return Err(Error::Domain(format!(
                "chamber integration is implemented for rank 1 and 2, not {rank}"
            )))
        }
    };
    if let Some(e) = bad.take() {
        return Err(e);
    }
    Ok(r?)
}

/// Integral over the whole chamber: [0, L0], then [L, 2L] bands until a band
/// contributes less than `tail_tol`. Reaching `max_cutoff` is a divergence.
pub fn integrate_chamber(
    ctx: &CFunctionContext,
    f: &dyn Fn(&[f64]) -> Result<Complex64>,
    cfg: &QuadratureConfig,
    max_cutoff: f64,
) -> Result<ChamberIntegral> {
    let (mut lo, mut hi) = (0.0, cfg.halfline_cutoff_initial);
    let mut out = ChamberIntegral {
        value: ZERO,
        err_estimate: 0.0,
        evaluations: 0,
        cutoff: hi,
    };
    loop {
        let seg = radial_segment(ctx, f, lo, hi, cfg)?;
        out.value += seg.value;
        out.err_estimate += seg.err_estimate;
        out.evaluations += seg.evaluations;
        out.cutoff = hi;
        if lo > 0.0 && seg.value.norm() < cfg.tail_tol {
            out.err_estimate += seg.value.norm();
            return Ok(out);
        }
        if hi >= max_cutoff {
            return Err(Error::Divergence(format!(
                "the band [{lo}, {hi}] still contributes {:.3e}; no decay by radial cutoff {max_cutoff}",
                seg.value.norm()
            )));
        }
        lo = hi;
        hi *= 2.0;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PsiOptions {
    pub height: usize,
    pub gamma: GammaOptions,
    pub quad: QuadratureConfig,
    /// Also integrate |theta| times the density as an absolute-convergence guard.
    pub absolute: bool,
    pub max_cutoff: f64,
}

impl Default for PsiOptions {
    fn default() -> Self {
        Self {
            height: 30,
            gamma: GammaOptions::default(),
            quad: QuadratureConfig::with_tolerance(1e-7),
            absolute: false,
            max_cutoff: DEFAULT_MAX_CUTOFF,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PsiReport {
    pub value: Complex64,
    pub err_estimate: f64,
    pub evaluations: usize,
    pub cutoff: f64,
    /// The tube point z + i X_H where theta is evaluated through phi.
    pub shifted_point: TubePoint,
    pub absolute_integral: Option<f64>,
}

/// Largest radial growth rate of |theta_{i nu}(exp z)| / |c_{G/H}(i nu)|^2 over unit
/// chamber directions: max_w -(w nu)(Im z + X_H) - 2 max_x nu(x), x in W X_H.
///
/// The polynomial factors are ignored, so Psi can only converge when this is negative.
pub fn psi_decay_exponent(ctx: &CFunctionContext, bp: &BasePoint, z: &[Complex64]) -> Result<f64> {
    let edges = ctx.rs.chamber_edges()?;
    let y: Vec<f64> = z.iter().zip(&bp.x_h).map(|(z, x)| z.im + x).collect();
    let orbit = ctx.weyl.orbit_points(&bp.x_h);
    let rate = |nu: &[f64]| {
        let norm = nu.iter().map(|v| v * v).sum::<f64>().sqrt();
        let grow = ctx
            .weyl
            .elements
            .iter()
            .map(|w| -dot(nu, &w.act_point(&y)))
            .fold(f64::NEG_INFINITY, f64::max);
        let damp = orbit
            .iter()
            .map(|x| dot(nu, x))
            .fold(f64::NEG_INFINITY, f64::max);
        (grow - 2.0 * damp) / norm
    };
    let dirs: Vec<Vec<f64>> = match edges.len() {
        1 => vec![edges[0].clone()],
        2 => (0..=1000)
            .map(|j| {
                let u = j as f64 / 1000.0;
                (0..2)
                    .map(|k| (1.0 - u) * edges[0][k] + u * edges[1][k])
                    .collect()
            })
            .collect(),
        r => {
            return Err(Error::Domain(format!(
                "chamber integration is implemented for rank 1 and 2, not {r}"
            )))
        }
    };
    Ok(dirs
        .iter()
        .map(|d| rate(d))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Psi(exp z) = int_{i a_+^*} theta_lambda(exp z) d lambda / |c_{G/H}(lambda)|^2.
pub fn cauchy_szego(
    ctx: &CFunctionContext,
    crown: &Crown,
    z: &[Complex64],
    opts: &PsiOptions,
) -> Result<PsiReport> {
    let base = TubePoint::new(&ctx.rs, crown, z)?;
    let shifted = base.shifted(&ctx.rs, crown, &crown.base_point.x_h)?;
    if !shifted.in_a_plus || !shifted.in_2omega {
        return Err(Error::Domain(
            "z + i X_H is outside the domain of the Phi series".into(),
        ));
    }
    let bp = &crown.base_point;
    let rate = psi_decay_exponent(ctx, bp, z)?;
    if rate >= -1e-9 {
        return Err(Error::Divergence(format!(
            "the spectral integrand does not decay along every chamber direction (growth rate {rate:.3e})"
        )));
    }
    let integrand = |nu: &[f64]| -> Result<Complex64> {
        let th = theta_function(ctx, crown, &i_nu(nu), z, opts.height, opts.gamma)?.value;
        Ok(th * log_density(ctx, bp, nu)?.exp())
    };
    let r = integrate_chamber(ctx, &integrand, &opts.quad, opts.max_cutoff)?;
    let absolute_integral = if opts.absolute {
        let abs = |nu: &[f64]| integrand(nu).map(|v| Complex64::new(v.norm(), 0.0));
        Some(
            integrate_chamber(ctx, &abs, &opts.quad, opts.max_cutoff)?
                .value
                .re,
        )
    } else {
        None
    };
    Ok(PsiReport {
        value: r.value,
        err_estimate: r.err_estimate,
        evaluations: r.evaluations,
        cutoff: r.cutoff,
        shifted_point: shifted,
        absolute_integral,
    })
}

/// Psi with the Weyl sum outside the integral: one integral per term c_exp(w lambda) Phi_{w lambda}.
pub fn cauchy_szego_termwise(
    ctx: &CFunctionContext,
    crown: &Crown,
    z: &[Complex64],
    opts: &PsiOptions,
) -> Result<Vec<Complex64>> {
    let bp = &crown.base_point;
    (0..ctx.weyl.order())
        .map(|w| {
            let integrand = |nu: &[f64]| -> Result<Complex64> {
                let th = theta_function(ctx, crown, &i_nu(nu), z, opts.height, opts.gamma)?;
                Ok(th.per_weyl_term[w].term * log_density(ctx, bp, nu)?.exp())
            };
            Ok(integrate_chamber(ctx, &integrand, &opts.quad, opts.max_cutoff)?.value)
        })
        .collect()
}

/// How theta_{i nu}(exp t) is evaluated for SL(2,R).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum KernelPath {
    /// 2F1(1/4 + i nu/4, 1/4 - i nu/4; 1; cosh^2 2t) on the principal branch.
    /// Real t puts the argument on the cut and needs a side.
    Literal2F1 { side: Option<CutSide> },
    /// The connection formula at infinity with (-w)^{-a} = sinh(2t + i pi/2)^{-2a},
    /// which is the continuation in t from Re t large.
    Unfolded2F1,
    /// The Weyl sum of Phi series at the tube point t + i X_H.
    SphericalSeries { height: usize },
}

/// theta_{i nu}(exp t) for SL(2,R).
pub fn sl2_theta(nu: f64, t: Complex64, path: KernelPath) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let a = Complex64::new(0.25, 0.25 * nu);
    let b = Complex64::new(0.25, -0.25 * nu);
    let w = (2.0 * t).cosh().powi(2);
    match path {
        KernelPath::Literal2F1 { side } => {
            let w = if t.im == 0.0 {
                Complex64::new(w.re, 0.0)
            } else {
                w
            };
            Ok(gauss_2f1(a, b, one, w, side)?)
        }
        KernelPath::Unfolded2F1 => {
            let ln_s = (2.0 * t + Complex64::new(0.0, 0.5 * PI)).sinh().ln();
            let inv = one / w;
            let ta = gamma_quotient(&[b - a], &[b, one - a])? * (-2.0 * a * ln_s).exp();
            let tb = gamma_quotient(&[a - b], &[a, one - b])? * (-2.0 * b * ln_s).exp();
            let fa = gauss_2f1(a, a, a - b + one, inv, None)?;
            let fb = gauss_2f1(b, b, b - a + one, inv, None)?;
            Ok(ta * fa + tb * fb)
        }
        KernelPath::SphericalSeries { height } => {
            let rs = crate::rootcore::RootSystem::build(crate::rootcore::CaseTag::A1)?;
            let ctx = CFunctionContext::new(&rs)?;
            let crown = Crown::new(&rs, &ctx.weyl, BasePoint::catalog(&rs)?)?;
            let lam = [Complex64::new(0.0, nu)];
            Ok(theta_function(&ctx, &crown, &lam, &[t], height, GammaOptions::default())?.value)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelIdentityReport {
    pub t: Complex64,
    pub path: KernelPath,
    /// (1 - tanh^2 t) / (1 + tanh^2 t) = 1 / cosh 2t.
    pub lhs: Complex64,
    /// (pi/2) int_0^inf theta_{i nu}(t) |Gamma((i nu + 1)/2) / Gamma(i nu/2)|^2 d nu / cosh(pi nu / 2).
    pub rhs: Complex64,
    pub abs_diff: f64,
    /// 1 / (1 + i sinh 2t), the value the integral actually takes for Re t > 0.
    pub corrected_closed_form: Complex64,
    pub corrected_abs_diff: f64,
    pub err_estimate: f64,
    pub evaluations: usize,
}

/// The SL(2,R) hypergeometric identity for the Cauchy-Szego function.
pub fn verify_kernel_identity(
    t: Complex64,
    path: KernelPath,
    cfg: &QuadratureConfig,
) -> Result<KernelIdentityReport> {
    if t.re <= 0.0 {
        return Err(Error::Domain(format!("need Re t > 0, got t = {t}")));
    }
    if t.im.abs() >= 0.25 * PI {
        return Err(Error::Domain(format!("need |Im t| < pi/4, got t = {t}")));
    }
    if let KernelPath::Literal2F1 { side: None } = path {
        if t.im == 0.0 {
            let z = (2.0 * t).cosh().powi(2);
            return Err(NumericsError::CutAmbiguity { z }.into());
        }
    }
    let ctx_free =
        |nu: f64| -> Result<Complex64> { Ok(sl2_theta(nu, t, path)? * sl2_identity_weight(nu)?) };
    let bad: Cell<Option<Error>> = Cell::new(None);
    let f = |nu: f64| match ctx_free(nu) {
        Ok(v) => v,
        Err(e) => {
            bad.set(Some(e));
            ZERO
        }
    };
    let r = integrate_halfline(&f, cfg);
    if let Some(e) = bad.take() {
        return Err(e);
    }
    let r = r?;
    let rhs = 0.5 * PI * r.value;
    let tanh2 = t.tanh().powi(2);
    let lhs = (1.0 - tanh2) / (1.0 + tanh2);
    let corrected_closed_form = 1.0 / (1.0 + Complex64::i() * (2.0 * t).sinh());
    Ok(KernelIdentityReport {
        t,
        path,
        lhs,
        rhs,
        abs_diff: (lhs - rhs).norm(),
        corrected_closed_form,
        corrected_abs_diff: (corrected_closed_form - rhs).norm(),
        err_estimate: 0.5 * PI * r.err_estimate,
        evaluations: r.evaluations,
    })
}

/// b(lambda) = c(w0 lambda) sum_w z_H^{-w^{-1}(w0 lambda + rho)} e_w^*, one coordinate per orbit point w X_H.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BVector {
    pub lambda: Vec<Complex64>,
    pub orbit: Vec<Vec<f64>>,
    pub coords: Vec<Complex64>,
}

impl BVector {
    pub fn norm_sqr(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum()
    }
}

pub fn b_vector(ctx: &CFunctionContext, bp: &BasePoint, nu: &[f64]) -> Result<BVector> {
    check_chamber(ctx, nu)?;
    let lambda = i_nu(nu);
    let w0 = &ctx.weyl.elements[ctx.weyl.longest_index()];
    let w0l = w0.act_dual_c(&lambda);
    let c = ctx.c_function(&w0l)?;
    let shift: Vec<Complex64> = w0l
        .iter()
        .zip(complexify(&rho(&ctx.rs)))
        .map(|(a, r)| a + r)
        .collect();
    let orbit = ctx.weyl.orbit_points(&bp.x_h);
    let coords = orbit
        .iter()
        .map(|x| c * (-Complex64::i() * pair(&shift, x)).exp())
        .collect();
    Ok(BVector {
        lambda,
        orbit,
        coords,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum GrowthStatus {
    Converged,
    Diverged,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthRow {
    pub c: f64,
    /// Radial cutoffs L in the chamber parametrization.
    pub cutoffs: Vec<f64>,
    /// int over the chamber up to L of exp(c ||nu||_H) d mu.
    pub values: Vec<f64>,
    /// |I(2L) - I(L)| / |I(2L)|.
    pub deltas: Vec<f64>,
    pub status: GrowthStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReport {
    pub rows: Vec<GrowthRow>,
    pub threshold: f64,
    pub passed: bool,
}

/// Relative change below which the doubling is considered stable.
pub const GROWTH_DELTA: f64 = 1e-6;
const GROWTH_DOUBLINGS: usize = 14;

/// int_{i a_+^*} exp(c ||Im lambda||_H) d mu(lambda) by successive doubling of the radial cutoff.
pub fn check_growth_condition(
    ctx: &CFunctionContext,
    bp: &BasePoint,
    c_values: &[f64],
    cfg: &QuadratureConfig,
) -> Result<GrowthReport> {
    let mut rows = Vec::with_capacity(c_values.len());
    for &c in c_values {
        if !(0.0..2.0).contains(&c) {
            return Err(Error::Domain(format!(
                "growth exponent c = {c} must lie in [0, 2)"
            )));
        }
        let weight = |nu: &[f64]| -> Result<Complex64> {
            let e = c * h_norm(bp, &ctx.weyl, &complexify(nu)) + log_density(ctx, bp, nu)?;
            Ok(Complex64::new(e.exp(), 0.0))
        };
        let mut cutoffs = Vec::new();
        let mut values = Vec::new();
        let mut deltas = Vec::new();
        let mut status = GrowthStatus::Diverged;
        let mut lo = 0.0;
        let mut hi = cfg.halfline_cutoff_initial;
        let mut total = 0.0;
        for _ in 0..GROWTH_DOUBLINGS {
            let seg = growth_band(ctx, &weight, lo, hi, cfg)?;
            let prev = total;
            total += seg;
            cutoffs.push(hi);
            values.push(total);
            if !total.is_finite() {
                break;
            }
            if lo > 0.0 {
                let d = (total - prev).abs() / total.abs().max(f64::MIN_POSITIVE);
                deltas.push(d);
                if d < GROWTH_DELTA {
                    status = GrowthStatus::Converged;
                    break;
                }
            }
            lo = hi;
            hi *= 2.0;
        }
        rows.push(GrowthRow {
            c,
            cutoffs,
            values,
            deltas,
            status,
        });
    }
    let passed = rows.iter().all(|r| r.status == GrowthStatus::Converged);
    Ok(GrowthReport {
        rows,
        threshold: GROWTH_DELTA,
        passed,
    })
}

/// A band of the growth integral; an overflowing or unresolvable integrand counts as infinite.
fn growth_band(
    ctx: &CFunctionContext,
    f: &dyn Fn(&[f64]) -> Result<Complex64>,
    lo: f64,
    hi: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    match radial_segment(ctx, f, lo, hi, cfg) {
        Ok(q) => Ok(q.value.re),
        Err(Error::Numerics(
            NumericsError::BudgetExhausted { .. } | NumericsError::NonFinite { .. },
        )) => Ok(f64::INFINITY),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::complex_gamma;
    use crate::rootcore::{CaseTag, RootSystem};

    fn setup(tag: CaseTag) -> (CFunctionContext, BasePoint) {
        let rs = RootSystem::build(tag).unwrap();
        let ctx = CFunctionContext::new(&rs).unwrap();
        let bp = BasePoint::catalog(&rs).unwrap();
        (ctx, bp)
    }

    #[test]
    fn rank_one_density_closed_form() {
        let (ctx, bp) = setup(CaseTag::A1);
        for s in [0.3, 1.0, 4.5] {
            // 1/|c(is)|^2 = pi |Gamma((1 + is)/2) / Gamma(is/2)|^2 and |z_H|^2 = 2 cosh(pi s / 2)
            let z = Complex64::new(0.0, s);
            let inv_c2 = PI
                * (complex_gamma((z + 1.0) * 0.5).unwrap() / complex_gamma(z * 0.5).unwrap())
                    .norm_sqr();
            let want = inv_c2 / (2.0 * (0.5 * PI * s).cosh());
            let got = plancherel_density(&ctx, &bp, &[s]).unwrap();
            assert!((got - want).abs() < 1e-12 * want, "{got} vs {want}");
        }
    }

    #[test]
    fn density_is_c_gh_squared_inverse() {
        for tag in CaseTag::CATALOG {
            let (ctx, bp) = setup(tag);
            let edges = ctx.rs.chamber_edges().unwrap();
            let nu: Vec<f64> = (0..ctx.rs.rank)
                .map(|k| {
                    edges
                        .iter()
                        .enumerate()
                        .map(|(j, e)| (0.7 + j as f64) * e[k])
                        .sum()
                })
                .collect();
            let c = ctx.c_gh(&bp, &i_nu(&nu)).unwrap();
            let d = plancherel_density(&ctx, &bp, &nu).unwrap();
            assert!((d * c.norm_sqr() - 1.0).abs() < 1e-12, "{tag}");
        }
    }

    #[test]
    fn off_chamber_is_rejected() {
        let (ctx, bp) = setup(CaseTag::A1);
        assert!(matches!(
            plancherel_density(&ctx, &bp, &[-1.0]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            plancherel_density(&ctx, &bp, &[0.0]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn b_vector_has_one_coordinate_per_coset() {
        for tag in CaseTag::CATALOG {
            let (ctx, bp) = setup(tag);
            let n = ctx.weyl.order() / ctx.weyl.stabilizer(&bp.x_h).len();
            let nu = vec![0.9; ctx.rs.rank];
            let nu = if tag == CaseTag::C2 {
                vec![1.3, 0.4]
            } else {
                nu
            };
            assert_eq!(b_vector(&ctx, &bp, &nu).unwrap().coords.len(), n);
        }
    }

    #[test]
    fn literal_path_needs_a_side_on_the_real_axis() {
        let r = verify_kernel_identity(
            Complex64::new(0.5, 0.0),
            KernelPath::Literal2F1 { side: None },
            &Default::default(),
        );
        assert!(matches!(
            r,
            Err(Error::Numerics(NumericsError::CutAmbiguity { .. }))
        ));
    }
}

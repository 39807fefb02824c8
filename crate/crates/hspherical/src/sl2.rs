//! The line model of the spherical principal series of SL(2,R).
//!
//! The scalar lambda is the covector [lambda] in the A1 catalog coordinates,
//! so rho = 1 and lambda(X_H) = lambda pi / 4. Pairings are linear in the first
//! slot and conjugate-linear in the second: <f, g> = int f(x) conj(g(x)) dx.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::Arc;

use crate::cfunc::CFunctionContext;
use crate::crown::{z_h_power, BasePoint};
use crate::error::{Error, Result};
use crate::numerics::{integrate_halfline, integrate_interval, GaussLegendre, QuadratureConfig};
use crate::rootcore::{CaseTag, RootSystem};

type C = Complex64;

/// A complex 2x2 matrix, row-major.
pub type Mat2 = [[Complex64; 2]; 2];

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);

pub fn real_mat2(m: [[f64; 2]; 2]) -> Mat2 {
    [
        [C::new(m[0][0], 0.0), C::new(m[0][1], 0.0)],
        [C::new(m[1][0], 0.0), C::new(m[1][1], 0.0)],
    ]
}

/// g = n a k with n upper unipotent, a = diag(e^s, e^{-s}), k complex orthogonal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IwasawaData {
    pub n12: Complex64,
    /// log a = diag(s, -s).
    pub s: Complex64,
    pub k: Mat2,
}

impl IwasawaData {
    /// a^nu = e^{nu s} for the scalar covector nu.
    pub fn a_power(&self, nu: Complex64) -> Complex64 {
        (nu * self.s).exp()
    }

    pub fn reconstruct(&self) -> Mat2 {
        let a1 = self.s.exp();
        let a2 = (-self.s).exp();
        let na = [[a1, self.n12 * a2], [ZERO, a2]];
        let k = &self.k;
        na.map(|row| [0, 1].map(|j| row[0] * k[0][j] + row[1] * k[1][j]))
    }
}

/// Principal-branch Iwasawa factorization; the bottom-row quantity
/// m21^2 + m22^2 = e^{-2s} must avoid (-inf, 0].
pub fn iwasawa_sl2(g: &Mat2) -> Result<IwasawaData> {
    let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    if (det - ONE).norm() > 1e-10 {
        return Err(Error::Domain(format!("det g = {det}, expected 1")));
    }
    let q = g[1][0] * g[1][0] + g[1][1] * g[1][1];
    if q.re <= 0.0 && q.im == 0.0 {
        return Err(Error::Branch(q));
    }
    let r = q.sqrt();
    let (k21, k22) = (g[1][0] / r, g[1][1] / r);
    let k = [[k22, -k21], [k21, k22]];
    let s = -0.5 * q.ln();
    // (g k^T)_{12} = n12 a2
    let gkt12 = g[0][0] * k[1][0] + g[0][1] * k[1][1];
    Ok(IwasawaData {
        n12: gkt12 / (-s).exp(),
        s,
        k,
    })
}

/// A point base + offset of the line, keeping the offset exact near a breakpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinePoint {
    pub base: f64,
    pub offset: f64,
}

impl LinePoint {
    pub fn at(x: f64) -> Self {
        Self {
            base: x,
            offset: 0.0,
        }
    }

    pub fn x(&self) -> f64 {
        self.base + self.offset
    }

    /// x^2 - 1, accurate when base is +-1.
    pub fn x2_minus_1(&self) -> f64 {
        (self.base * self.base - 1.0) + self.offset * (2.0 * self.base + self.offset)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LineKind {
    VK,
    VH,
    Eta1,
    EtaW,
    Numeric,
}

type Pointwise = Arc<dyn Fn(LinePoint) -> Complex64 + Send + Sync>;

/// A vector of the line model, evaluated pointwise.
#[derive(Clone)]
pub struct LineModelFunction {
    pub kind: LineKind,
    pub lambda: Complex64,
    /// f(x) = O(|x|^p) as |x| -> inf.
    pub integrable_exponent: f64,
    /// Points where f may be singular or non-smooth.
    pub singular: Vec<f64>,
    numeric: Option<Pointwise>,
}

impl std::fmt::Debug for LineModelFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LineModelFunction")
            .field("kind", &self.kind)
            .field("lambda", &self.lambda)
            .field("integrable_exponent", &self.integrable_exponent)
            .field("singular", &self.singular)
            .finish()
    }
}

fn rpow(base: f64, e: C) -> C {
    if base == 0.0 {
        return if e.re > 0.0 {
            ZERO
        } else {
            C::new(f64::INFINITY, 0.0)
        };
    }
    (e * base.ln()).exp()
}

fn inv_sqrt_pi() -> f64 {
    1.0 / PI.sqrt()
}

impl LineModelFunction {
    /// pi^{-1/2} (1 + x^2)^{-(1 + conj lambda)/2}.
    pub fn v_k(lambda: C) -> Self {
        Self {
            kind: LineKind::VK,
            lambda,
            integrable_exponent: -1.0 - lambda.re,
            singular: vec![],
            numeric: None,
        }
    }

    /// The K-fixed vector of pi_lambda itself: pi^{-1/2} (1 + x^2)^{(lambda - 1)/2}.
    pub fn k_vector_of_pi(lambda: C) -> Self {
        Self::v_k(-lambda.conj())
    }

    fn check_window(lambda: C) -> Result<()> {
        if lambda.re >= 1.0 {
            return Err(Error::IntegrabilityWindow(format!(
                "need Re lambda < 1, got {lambda}"
            )));
        }
        Ok(())
    }

    /// The piecewise H-spherical distribution; locally integrable for Re lambda < 1.
    pub fn v_h(lambda: C) -> Result<Self> {
        Self::check_window(lambda)?;
        Ok(Self::v_h_unchecked(lambda))
    }

    /// The same formula without the window check, for finite-part pairings.
    pub fn v_h_unchecked(lambda: C) -> Self {
        Self {
            kind: LineKind::VH,
            lambda,
            integrable_exponent: -1.0 - lambda.re,
            singular: vec![-1.0, 1.0],
            numeric: None,
        }
    }

    /// Supported on (-1, 1).
    pub fn eta_1(lambda: C) -> Result<Self> {
        Self::check_window(lambda)?;
        Ok(Self {
            kind: LineKind::Eta1,
            lambda,
            integrable_exponent: f64::NEG_INFINITY,
            singular: vec![-1.0, 1.0],
            numeric: None,
        })
    }

    /// Supported on |x| > 1.
    pub fn eta_w(lambda: C) -> Result<Self> {
        Self::check_window(lambda)?;
        Ok(Self {
            kind: LineKind::EtaW,
            lambda,
            integrable_exponent: -1.0 - lambda.re,
            singular: vec![-1.0, 1.0],
            numeric: None,
        })
    }

    pub fn numeric(
        lambda: C,
        integrable_exponent: f64,
        singular: Vec<f64>,
        f: impl Fn(LinePoint) -> C + Send + Sync + 'static,
    ) -> Self {
        Self {
            kind: LineKind::Numeric,
            lambda,
            integrable_exponent,
            singular,
            numeric: Some(Arc::new(f)),
        }
    }

    /// -(1 + conj lambda)/2.
    fn exponent(&self) -> C {
        -0.5 * (ONE + self.lambda.conj())
    }

    fn phase(&self) -> C {
        (C::i() * FRAC_PI_4 * (ONE + self.lambda.conj())).exp()
    }

    pub fn eval(&self, x: f64) -> C {
        self.eval_at(LinePoint::at(x))
    }

    pub fn eval_at(&self, p: LinePoint) -> C {
        let e = self.exponent();
        match self.kind {
            LineKind::VK => inv_sqrt_pi() * rpow(1.0 + p.x() * p.x(), e),
            LineKind::VH | LineKind::Eta1 | LineKind::EtaW => {
                let d = p.x2_minus_1();
                if d == 0.0 {
                    return ZERO;
                }
                let inside = d < 0.0;
                let (coef, keep) = match (self.kind, inside) {
                    (LineKind::VH, true) => (self.phase(), true),
                    (LineKind::VH, false) => (1.0 / self.phase(), true),
                    (LineKind::Eta1, t) => (ONE, t),
                    (LineKind::EtaW, t) => (ONE, !t),
                    _ => unreachable!(),
                };
                if !keep {
                    return ZERO;
                }
                coef * inv_sqrt_pi() * rpow(d.abs(), e)
            }
            LineKind::Numeric => (self.numeric.as_ref().expect("numeric kind has a closure"))(p),
        }
    }
}

/// (pi(g) f)(x) = |bx + d|^{-1 - conj lambda} f((ax + c)/(bx + d)) for g = [[a, b], [c, d]].
pub fn pi_apply(lambda: C, g: [[f64; 2]; 2], f: &LineModelFunction) -> LineModelFunction {
    let [[a, b], [c, d]] = g;
    let f = f.clone();
    let e = -ONE - lambda.conj();
    let singular: Vec<f64> = f
        .singular
        .iter()
        .filter_map(|&y| {
            // preimages of the singular points under x -> (ax + c)/(bx + d)
            let den = a - b * y;
            (den.abs() > 1e-300).then(|| (d * y - c) / den)
        })
        .chain((b != 0.0).then(|| -d / b))
        .collect();
    LineModelFunction::numeric(lambda, f.integrable_exponent, singular, move |p| {
        let x = p.x();
        let den = b * x + d;
        if den == 0.0 {
            return ZERO;
        }
        rpow(den.abs(), e) * f.eval((a * x + c) / den)
    })
}

/// Quadrature rule for integrals over the line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LineRule {
    Adaptive(QuadratureConfig),
    /// Gauss-Legendre panels of unit width on [0, vmax] in every mapped variable.
    Fixed {
        vmax: f64,
    },
}

fn halfline(f: &dyn Fn(f64) -> C, rule: &LineRule) -> Result<(C, f64)> {
    match rule {
        LineRule::Adaptive(cfg) => {
            let r = integrate_halfline(&|v| f(v), cfg)?;
            Ok((r.value, r.err_estimate))
        }
        LineRule::Fixed { vmax } => {
            let gl = GaussLegendre::order32();
            let n = vmax.ceil() as usize;
            let mut s = ZERO;
            for j in 0..n {
                s += gl.apply(&|v| f(v), j as f64, (j + 1) as f64)?;
            }
            Ok((s, 0.0))
        }
    }
}

/// int_R f over the line, split at the sorted breakpoints. Pieces adjacent to a
/// breakpoint p use x = p + L e^{-v}; the tails use x = R + e^v - 1.
pub fn integrate_line(
    f: &dyn Fn(LinePoint) -> C,
    breakpoints: &[f64],
    rule: &LineRule,
) -> Result<(C, f64)> {
    let mut pts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|x| x.is_finite())
        .collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    let (lo, hi) = match (pts.first(), pts.last()) {
        (Some(&l), Some(&h)) => (l - 1.0, h + 1.0),
        _ => (-1.0, 1.0),
    };
    let mut joints = vec![lo];
    joints.extend(pts.iter().copied());
    joints.push(hi);
    let mut total = ZERO;
    let mut err = 0.0;
    for w in joints.windows(2) {
        let (p, q) = (w[0], w[1]);
        let half = 0.5 * (q - p);
        // from the midpoint toward p and toward q
        let (a, e1) = halfline(
            &|v: f64| {
                let t = half * (-v).exp();
                t * f(LinePoint { base: p, offset: t })
            },
            rule,
        )?;
        let (b, e2) = halfline(
            &|v: f64| {
                let t = half * (-v).exp();
                t * f(LinePoint {
                    base: q,
                    offset: -t,
                })
            },
            rule,
        )?;
        total += a + b;
        err += e1 + e2;
    }
    let (r, e3) = halfline(
        &|v: f64| {
            v.exp()
                * f(LinePoint {
                    base: hi,
                    offset: v.exp_m1(),
                })
        },
        rule,
    )?;
    let (l, e4) = halfline(
        &|v: f64| {
            v.exp()
                * f(LinePoint {
                    base: lo,
                    offset: -v.exp_m1(),
                })
        },
        rule,
    )?;
    Ok((total + r + l, err + e3 + e4))
}

/// <f, g> = int f conj(g).
pub fn pairing(f: &LineModelFunction, g: &LineModelFunction, rule: &LineRule) -> Result<C> {
    if f.integrable_exponent + g.integrable_exponent >= -1.0 {
        return Err(Error::Divergence(format!(
            "pairing integrand decays like |x|^{}",
            f.integrable_exponent + g.integrable_exponent
        )));
    }
    let mut bp = f.singular.clone();
    bp.extend(&g.singular);
    Ok(integrate_line(&|p| f.eval_at(p) * g.eval_at(p).conj(), &bp, rule)?.0)
}

/// The coefficients z_H^{w^{-1}(rho + conj lambda)} for w in W/W0 = {1, w}.
pub fn eta_coefficients(lambda: C) -> Result<(C, C)> {
    let rs = RootSystem::build(CaseTag::A1)?;
    let bp = BasePoint::catalog(&rs)?;
    let nu = ONE + lambda.conj();
    Ok((z_h_power(&bp, &[nu]), z_h_power(&bp, &[-nu])))
}

/// Grid points of [-3, 3] at spacing 0.01 with ||x| - 1| >= 0.05.
pub fn eta_check_grid() -> Vec<f64> {
    (0..=600)
        .map(|i| -3.0 + 0.01 * i as f64)
        .filter(|x: &f64| (x.abs() - 1.0).abs() >= 0.05)
        .collect()
}

/// max over the grid of |v_H - (z^{rho + conj lambda} eta_1 + z^{-(rho + conj lambda)} eta_w)|.
pub fn check_eta_decomposition(lambda: C) -> Result<f64> {
    let vh = LineModelFunction::v_h(lambda)?;
    let e1 = LineModelFunction::eta_1(lambda)?;
    let ew = LineModelFunction::eta_w(lambda)?;
    let (c1, cw) = eta_coefficients(lambda)?;
    Ok(eta_check_grid()
        .into_iter()
        .map(|x| (vh.eval(x) - (c1 * e1.eval(x) + cw * ew.eval(x))).norm())
        .fold(0.0, f64::max))
}

/// pi(a_t) v_K(x) = e^{i pi t (1 + conj lambda)/4} pi^{-1/2} (1 + e^{i pi t} x^2)^{-(1 + conj lambda)/2}.
pub fn translated_v_k(lambda: C, t: f64) -> LineModelFunction {
    let nu = ONE + lambda.conj();
    let pre = (C::i() * FRAC_PI_4 * t * nu).exp() * inv_sqrt_pi();
    let rot = (C::i() * PI * t).exp();
    LineModelFunction::numeric(lambda, -1.0 - lambda.re, vec![-1.0, 1.0], move |p| {
        let x = p.x();
        pre * (ONE + rot * x * x).powc(-0.5 * nu)
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryRow {
    pub t: f64,
    pub pairing: Complex64,
    pub abs_diff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryReport {
    pub lambda: Complex64,
    pub target: Complex64,
    pub rows: Vec<BoundaryRow>,
}

/// <pi(a_t) v_K, v> along t_grid and the target <v_H, v>.
pub fn boundary_convergence(
    lambda: C,
    t_grid: &[f64],
    v: &LineModelFunction,
    cfg: &QuadratureConfig,
) -> Result<BoundaryReport> {
    if lambda.re != 0.0 {
        return Err(Error::Domain(format!(
            "boundary experiment needs imaginary lambda, got {lambda}"
        )));
    }
    let rule = LineRule::Adaptive(*cfg);
    let target = pairing(&LineModelFunction::v_h(lambda)?, v, &rule)?;
    let mut rows = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        if !(0.0..1.0).contains(&t) {
            return Err(Error::Domain(format!("t = {t} outside [0, 1)")));
        }
        let p = pairing(&translated_v_k(lambda, t), v, &rule)?;
        rows.push(BoundaryRow {
            t,
            pairing: p,
            abs_diff: (p - target).norm(),
        });
    }
    Ok(BoundaryReport {
        lambda,
        target,
        rows,
    })
}

/// (A f)(x) = (1/pi) int |x - u|^{-1 - lambda} f(u) du, convergent for Re lambda < 0
/// and enough decay of f.
pub fn intertwiner_apply(
    lambda: C,
    f: &LineModelFunction,
    x_grid: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Vec<C>> {
    if lambda.re >= 0.0 {
        return Err(Error::Divergence(format!(
            "intertwiner needs Re lambda < 0, got {lambda}"
        )));
    }
    if -1.0 - lambda.re + f.integrable_exponent >= -1.0 {
        return Err(Error::Divergence(
            "integrand does not decay fast enough".into(),
        ));
    }
    x_grid
        .iter()
        .map(|&x| intertwine_at(lambda, f, x, &LineRule::Adaptive(*cfg)))
        .collect()
}

fn intertwine_at(lambda: C, f: &LineModelFunction, x: f64, rule: &LineRule) -> Result<C> {
    let e = -ONE - lambda;
    let mut bp = f.singular.clone();
    bp.push(x);
    let (v, _) = integrate_line(
        &|p: LinePoint| {
            let d = if p.base == x {
                p.offset.abs()
            } else {
                (p.x() - x).abs()
            };
            rpow(d, e) * f.eval_at(p)
        },
        &bp,
        rule,
    )?;
    Ok(v / PI)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntertwineReport {
    pub lambda: Complex64,
    pub x_grid: Vec<f64>,
    /// (A u_lambda)(x) / u_{-lambda}(x), with u the K-fixed vector of pi.
    pub ratios: Vec<Complex64>,
    pub c_w: Complex64,
}

/// A(lambda, w lambda) u_lambda against c_w(lambda) u_{w lambda}.
pub fn intertwiner_k_ratio(
    lambda: C,
    x_grid: &[f64],
    cfg: &QuadratureConfig,
) -> Result<IntertwineReport> {
    let u = LineModelFunction::k_vector_of_pi(lambda);
    let uw = LineModelFunction::k_vector_of_pi(-lambda);
    let vals = intertwiner_apply(lambda, &u, x_grid, cfg)?;
    let ratios = vals
        .iter()
        .zip(x_grid)
        .map(|(v, &x)| v / uw.eval(x))
        .collect();
    Ok(IntertwineReport {
        lambda,
        x_grid: x_grid.to_vec(),
        ratios,
        c_w: rank_one_c_w(lambda)?,
    })
}

/// c_w(lambda) for the non-trivial Weyl element of the A1 catalog system.
pub fn rank_one_c_w(lambda: C) -> Result<C> {
    let ctx = CFunctionContext::new(&RootSystem::build(CaseTag::A1)?)?;
    ctx.c_w(ctx.weyl.longest_index(), &[lambda])
}

/// (1/pi) int (1 + x^2)^{(lambda - 1)/2} dx, the direct Nbar integral for c_w.
pub fn c_w_quadrature(lambda: C, cfg: &QuadratureConfig) -> Result<C> {
    if lambda.re >= 0.0 {
        return Err(Error::Divergence(format!(
            "Nbar integral needs Re lambda < 0, got {lambda}"
        )));
    }
    let e = 0.5 * (lambda - ONE);
    let (v, _) = integrate_line(
        &|p| rpow(1.0 + p.x() * p.x(), e),
        &[],
        &LineRule::Adaptive(*cfg),
    )?;
    Ok(v / PI)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntertwiningPairingReport {
    pub lambda: Complex64,
    /// <v_{H, w lambda}, A(lambda, w lambda) u_lambda> by double quadrature.
    pub lhs: Complex64,
    /// c_w(conj lambda) <v_{H, lambda}, u_lambda>.
    pub rhs: Complex64,
    pub c_w_conj: Complex64,
    pub rel_err: f64,
}

/// Finite part of int_0^1 (1 - x)^s G(x) dx for -2 < s < -1, with G smooth at 1.
fn finite_part_unit(
    s: f64,
    g: &dyn Fn(f64) -> Result<C>,
    delta: f64,
    cfg: &QuadratureConfig,
) -> Result<C> {
    let h = 1e-3;
    let g1 = g(1.0)?;
    let (gp, gm) = (g(1.0 + h)?, g(1.0 - h)?);
    let d1 = (gp - gm) / (2.0 * h);
    let d2 = (gp - 2.0 * g1 + gm) / (h * h);
    // y = -ln(1 - x) on [0, 1 - delta]
    let ymax = -(delta.ln());
    let err = std::cell::Cell::new(None);
    let body = integrate_interval(
        &|y: f64| {
            let one_minus_x = (-y).exp();
            match g(1.0 - one_minus_x) {
                Ok(v) => one_minus_x.powf(s + 1.0) * (v - g1),
                Err(e) => {
                    err.set(Some(e));
                    ZERO
                }
            }
        },
        0.0,
        ymax,
        cfg,
    )?;
    if let Some(e) = err.take() {
        return Err(e);
    }
    let taylor = -d1 * delta.powf(s + 2.0) / (s + 2.0) + 0.5 * d2 * delta.powf(s + 3.0) / (s + 3.0);
    Ok(body.value + taylor + g1 / (s + 1.0))
}

/// Rank-one intertwining identity <A* v_{H, w lambda}, u> = c_w(conj lambda) <v_{H, lambda}, u>
/// for real lambda < -1, u the K-fixed vector of pi_lambda.
pub fn check_intertwining_pairing(
    lambda: f64,
    cfg: &QuadratureConfig,
) -> Result<IntertwiningPairingReport> {
    if !(-3.0..-1.0).contains(&lambda) {
        return Err(Error::Domain(format!(
            "check implemented for -3 < lambda < -1, got {lambda}"
        )));
    }
    let lam = C::new(lambda, 0.0);
    let u = LineModelFunction::k_vector_of_pi(lam);
    let inner = LineRule::Adaptive(QuadratureConfig {
        abs_tol: 1e-13,
        rel_tol: 1e-12,
        tail_tol: 1e-14,
        ..*cfg
    });
    let au = |x: f64| -> Result<C> { Ok(intertwine_at(lam, &u, x, &inner)?.conj()) };
    // v_{H, -lambda} has exponent s = -(1 - lambda)/2 in (-2, -1)
    let s = -0.5 * (1.0 - lambda);
    let wl = -lam;
    let phase = (C::i() * FRAC_PI_4 * (ONE + wl.conj())).exp();
    let ge = |x: f64| -> Result<C> { Ok(au(x)? + au(-x)?) };
    let delta = 1e-4;
    let i_in = finite_part_unit(s, &|x| Ok((1.0 + x).powf(s) * ge(x)?), delta, cfg)?;
    // x = 2 - y maps [1, 2] onto [0, 1] with (x - 1) = (1 - y)
    let near = finite_part_unit(
        s,
        &|y| {
            let x = 2.0 - y;
            Ok((x + 1.0).powf(s) * ge(x)?)
        },
        delta,
        cfg,
    )?;
    // y = 1/x on (0, 1/2]; the integrand stays bounded as y -> 0
    let err = std::cell::Cell::new(None);
    let far = integrate_interval(
        &|y: f64| {
            let x = 1.0 / y;
            match ge(x) {
                Ok(g) => (x * x - 1.0).powf(s) * g * x * x,
                Err(e) => {
                    err.set(Some(e));
                    ZERO
                }
            }
        },
        0.0,
        0.5,
        cfg,
    )?;
    if let Some(e) = err.take() {
        return Err(e);
    }
    let i_out = near + far.value;
    let lhs = inv_sqrt_pi() * (phase * i_in + i_out / phase);
    let vh = LineModelFunction::v_h(lam)?;
    let pair = pairing(&vh, &u, &LineRule::Adaptive(*cfg))?;
    let c_w_conj = rank_one_c_w(lam.conj())?;
    let rhs = c_w_conj * pair;
    Ok(IntertwiningPairingReport {
        lambda: lam,
        lhs,
        rhs,
        c_w_conj,
        rel_err: (lhs - rhs).norm() / rhs.norm(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SmoothnessPoint {
    pub lambda: Complex64,
    pub value: Complex64,
    /// |dF/dq + i dF/dp| at lambda = p + iq.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SmoothnessReport {
    pub h: f64,
    pub points: Vec<SmoothnessPoint>,
    pub max_residual: f64,
}

/// Conjugate Cauchy-Riemann residuals of lambda -> F(lambda) by central differences.
pub fn smoothness_probe_with(
    f: &dyn Fn(C) -> Result<C>,
    grid: &[C],
    h: f64,
) -> Result<SmoothnessReport> {
    let mut points = Vec::with_capacity(grid.len());
    for &l in grid {
        let dp = (f(l + h)? - f(l - h)?) / (2.0 * h);
        let dq = (f(l + C::new(0.0, h))? - f(l - C::new(0.0, h))?) / (2.0 * h);
        points.push(SmoothnessPoint {
            lambda: l,
            value: f(l)?,
            residual: (dq + C::i() * dp).norm(),
        });
    }
    let max_residual = points.iter().map(|p| p.residual).fold(0.0, f64::max);
    Ok(SmoothnessReport {
        h,
        points,
        max_residual,
    })
}

/// Which vector v the probe pairs v_{H, lambda} against.
#[derive(Debug, Clone)]
pub enum ProbeVector {
    /// The K-fixed vector u_lambda of pi_lambda, moving with lambda.
    KVector,
    Fixed(LineModelFunction),
}

/// Fixed-node rule for the probe so that finite differences see a smooth function of lambda.
pub const PROBE_RULE: LineRule = LineRule::Fixed { vmax: 80.0 };

/// Residuals for lambda -> <v_{H, lambda}, v>.
pub fn lambda_smoothness_probe(v: &ProbeVector, grid: &[C], h: f64) -> Result<SmoothnessReport> {
    for &l in grid {
        if l.re + h >= 1.0 {
            return Err(Error::IntegrabilityWindow(format!(
                "grid point {l} leaves Re lambda < 1"
            )));
        }
    }
    let f = |l: C| -> Result<C> {
        let vh = LineModelFunction::v_h(l)?;
        match v {
            ProbeVector::KVector => {
                pairing(&vh, &LineModelFunction::k_vector_of_pi(l), &PROBE_RULE)
            }
            ProbeVector::Fixed(g) => pairing(&vh, g, &PROBE_RULE),
        }
    };
    smoothness_probe_with(&f, grid, h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C {
        C::new(x, 0.0)
    }

    #[test]
    fn iwasawa_of_identity_and_lower_unipotent() {
        let id = real_mat2([[1.0, 0.0], [0.0, 1.0]]);
        let d = iwasawa_sl2(&id).unwrap();
        assert!(d.s.norm() < 1e-15 && d.n12.norm() < 1e-15);
        let x = 0.7;
        let nb = real_mat2([[1.0, 0.0], [x, 1.0]]);
        let d = iwasawa_sl2(&nb).unwrap();
        let lam = C::new(-0.4, 0.9);
        let expected = C::new(1.0 + x * x, 0.0).powc(0.5 * (lam - 1.0));
        assert!((d.a_power(ONE - lam) - expected).norm() < 1e-14);
        let back = d.reconstruct();
        for i in 0..2 {
            for j in 0..2 {
                assert!((back[i][j] - nb[i][j]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn iwasawa_branch_error() {
        // det 1 with m21^2 + m22^2 = -1
        let g = [[ZERO, C::i()], [C::i(), ZERO]];
        assert!(matches!(iwasawa_sl2(&g), Err(Error::Branch(_))));
    }

    #[test]
    fn v_h_values() {
        let lam = C::new(0.0, 0.7);
        let vh = LineModelFunction::v_h(lam).unwrap();
        let expected = (C::i() * FRAC_PI_4 * (ONE + lam.conj())).exp() / PI.sqrt();
        assert!((vh.eval(0.0) - expected).norm() < 1e-15);
        assert_eq!(vh.eval(1.0), ZERO);
        assert_eq!(vh.eval(-1.0), ZERO);
        assert!(LineModelFunction::v_h(c(1.2)).is_err());
    }

    #[test]
    fn eta_decomposition_residual_vanishes() {
        for lam in [c(0.0), C::new(0.0, 0.7), C::new(0.0, 1.3)] {
            assert!(check_eta_decomposition(lam).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn v_k_is_normalized_and_k_invariant() {
        let lam = C::new(0.0, 1.1);
        let vk = LineModelFunction::v_k(lam);
        let rule = LineRule::Adaptive(QuadratureConfig::with_tolerance(1e-11));
        assert!((pairing(&vk, &vk, &rule).unwrap() - 1.0).norm() < 1e-9);
        let th: f64 = 0.8;
        let k = [[th.cos(), -th.sin()], [th.sin(), th.cos()]];
        let moved = pi_apply(lam, k, &vk);
        for x in [-2.5, -0.3, 0.0, 0.9, 4.0] {
            assert!((moved.eval(x) - vk.eval(x)).norm() < 1e-12);
        }
    }

    #[test]
    fn c_w_quadrature_matches_product() {
        let cfg = QuadratureConfig::with_tolerance(1e-11);
        for lam in [c(-2.0), C::new(-3.0, 0.5)] {
            let q = c_w_quadrature(lam, &cfg).unwrap();
            let p = rank_one_c_w(lam).unwrap();
            assert!((q - p).norm() / p.norm() < 1e-8);
        }
    }

    #[test]
    fn constant_control_has_zero_residual() {
        let r = smoothness_probe_with(
            &|_| Ok(C::new(0.3, -0.2)),
            &[c(0.1), C::new(0.0, 0.5)],
            1e-3,
        )
        .unwrap();
        assert!(r.max_residual <= 1e-12);
    }
}

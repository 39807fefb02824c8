//! Gauss-Legendre panel quadrature with bisection refinement.

use num_complex::Complex64;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use super::NumericsError;

/// Tolerances and budgets for the adaptive integrators.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of panel bisections per finite interval.
    pub max_subdivisions: usize,
    /// First truncation point for integrals over [0, inf).
    pub halfline_cutoff_initial: f64,
    /// A half-line integral stops once the newest segment contributes less than this.
    pub tail_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-9,
            rel_tol: 1e-8,
            max_subdivisions: 2_000,
            halfline_cutoff_initial: 8.0,
            tail_tol: 1e-11,
        }
    }
}

impl QuadratureConfig {
    /// Same budgets with both tolerances set to `tol`.
    pub fn with_tolerance(tol: f64) -> Self {
        Self {
            abs_tol: tol,
            rel_tol: tol,
            tail_tol: (tol * 1e-2).max(1e-15),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), NumericsError> {
        let ok = self.abs_tol > 0.0
            && self.rel_tol > 0.0
            && self.tail_tol > 0.0
            && self.halfline_cutoff_initial > 0.0
            && self.max_subdivisions >= 1;
        if ok {
            Ok(())
        } else {
            Err(NumericsError::InvalidConfig(format!("{self:?}")))
        }
    }
}

/// Value and error estimate of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct QuadResult {
    pub value: Complex64,
    pub err_estimate: f64,
    pub evaluations: usize,
}

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on P_n from the Chebyshev-like initial guesses.
    pub fn new(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                let p = if n == 0 { 1.0 } else { p1 };
                let pm = if n == 1 { 1.0 } else { p0 };
                dp = nf * (x * p - pm) / (x * x - 1.0);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// The order-32 rule used by every panel integrator.
    pub fn order32() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(32))
    }

    /// Apply the rule on [a, b].
    pub fn apply<F>(&self, f: &F, a: f64, b: f64) -> Result<Complex64, NumericsError>
    where
        F: Fn(f64) -> Complex64 + ?Sized,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut s = Complex64::new(0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let t = mid + half * x;
            let v = f(t);
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(NumericsError::NonFinite { x: t });
            }
            s += *w * v;
        }
        Ok(s * half)
    }
}

struct Panel {
    a: f64,
    b: f64,
    left: Complex64,
    right: Complex64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn make_panel<F>(f: &F, a: f64, b: f64, whole: Complex64) -> Result<Panel, NumericsError>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    let rule = GaussLegendre::order32();
    let m = 0.5 * (a + b);
    let left = rule.apply(f, a, m)?;
    let right = rule.apply(f, m, b)?;
    let err = (whole - left - right).norm();
    Ok(Panel {
        a,
        b,
        left,
        right,
        err,
    })
}

/// Adaptive integral of `f` over the finite interval [a, b].
///
/// The panel with the largest estimate is bisected until the summed estimate
/// is within max(abs_tol, rel_tol |I|).
pub fn integrate_interval<F>(
    f: &F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadResult, NumericsError>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    cfg.validate()?;
    if a == b {
        return Ok(QuadResult {
            value: Complex64::new(0.0, 0.0),
            err_estimate: 0.0,
            evaluations: 0,
        });
    }
    let rule = GaussLegendre::order32();
    let whole = rule.apply(f, a, b)?;
    let mut heap = BinaryHeap::new();
    heap.push(make_panel(f, a, b, whole)?);
    let mut evaluations = 96;
    let mut splits = 0;
    loop {
        let (value, err) = heap
            .iter()
            .fold((Complex64::new(0.0, 0.0), 0.0), |(v, e), p| {
                (v + p.left + p.right, e + p.err)
            });
        if err <= cfg.abs_tol.max(cfg.rel_tol * value.norm()) {
            return Ok(QuadResult {
                value,
                err_estimate: err,
                evaluations,
            });
        }
        if splits >= cfg.max_subdivisions {
            return Err(NumericsError::BudgetExhausted {
                value,
                err_estimate: err,
            });
        }
        let p = heap.pop().expect("heap is never empty");
        let m = 0.5 * (p.a + p.b);
        if m <= p.a || m >= p.b {
            // interval below machine resolution; accept what we have
            heap.push(Panel { err: 0.0, ..p });
            continue;
        }
        heap.push(make_panel(f, p.a, m, p.left)?);
        heap.push(make_panel(f, m, p.b, p.right)?);
        evaluations += 128;
        splits += 1;
    }
}

/// Adaptive integral over consecutive intervals between sorted breakpoints.
pub fn integrate_breakpoints<F>(
    f: &F,
    points: &[f64],
    cfg: &QuadratureConfig,
) -> Result<QuadResult, NumericsError>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    let mut total = QuadResult {
        value: Complex64::new(0.0, 0.0),
        err_estimate: 0.0,
        evaluations: 0,
    };
    for w in points.windows(2) {
        let r = integrate_interval(f, w[0], w[1], cfg)?;
        total.value += r.value;
        total.err_estimate += r.err_estimate;
        total.evaluations += r.evaluations;
    }
    Ok(total)
}

/// Result of a half-line integral, with the running value after each doubling.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct HalflineResult {
    pub value: Complex64,
    pub err_estimate: f64,
    pub evaluations: usize,
    /// (cutoff L, integral over [0, L]) after each segment.
    pub partials: Vec<(f64, Complex64)>,
}

const MAX_DOUBLINGS: usize = 60;

/// Integral over [0, inf): [0, L0] first, then [L, 2L] segments until a
/// segment contributes less than `tail_tol`.
pub fn integrate_halfline<F>(f: &F, cfg: &QuadratureConfig) -> Result<HalflineResult, NumericsError>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    cfg.validate()?;
    let mut lo = 0.0;
    let mut hi = cfg.halfline_cutoff_initial;
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut evaluations = 0;
    let mut partials = Vec::new();
    for _ in 0..MAX_DOUBLINGS {
        let seg = integrate_interval(f, lo, hi, cfg)?;
        value += seg.value;
        err += seg.err_estimate;
        evaluations += seg.evaluations;
        partials.push((hi, value));
        if lo > 0.0 && seg.value.norm() < cfg.tail_tol {
            return Ok(HalflineResult {
                value,
                err_estimate: err + seg.value.norm(),
                evaluations,
                partials,
            });
        }
        lo = hi;
        hi *= 2.0;
    }
    Err(NumericsError::BudgetExhausted {
        value,
        err_estimate: f64::INFINITY,
    })
}

//! Gauss hypergeometric function 2F1(a, b; c; z).
//!
//! Power series on |z| <= 0.8, linear transformations elsewhere. When every
//! usable transformation is degenerate (a - b or c - a - b near an integer)
//! or leaves |w| close to 1, the function is continued along a path by
//! Taylor-stepping the hypergeometric differential equation.

use num_complex::Complex64;

use super::gamma::{gamma_quotient, is_gamma_pole};
use super::NumericsError;

type C = Complex64;

const SERIES_RADIUS: f64 = 0.8;
const TRANSFORM_RADIUS: f64 = 0.9;
const MAX_TERMS: usize = 20_000;
const DEGENERACY_GAP: f64 = 1e-3;

/// Which side of the cut [1, inf) a real argument is approached from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum CutSide {
    /// z + i0
    Above,
    /// z - i0
    Below,
}

impl CutSide {
    fn sign(self) -> f64 {
        match self {
            CutSide::Above => 1.0,
            CutSide::Below => -1.0,
        }
    }
}

fn one() -> C {
    C::new(1.0, 0.0)
}

fn near_integer(x: C) -> bool {
    x.im.abs() < DEGENERACY_GAP && (x.re - x.re.round()).abs() < DEGENERACY_GAP
}

fn nonpositive_integer(x: C) -> Option<u64> {
    if is_gamma_pole(x) {
        Some((-x.re) as u64)
    } else {
        None
    }
}

/// Plain Gauss series. Stops when two consecutive terms fall below 1e-17 of the sum.
fn series(a: C, b: C, c: C, z: C) -> Result<C, NumericsError> {
    let mut term = one();
    let mut sum = one();
    let mut small = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        if term == C::new(0.0, 0.0) {
            return Ok(sum);
        }
        if term.norm() <= 1e-17 * sum.norm() {
            small += 1;
            if small >= 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(NumericsError::NonConvergence {
        what: "2F1 power series",
        iterations: MAX_TERMS,
    })
}

/// Logarithms of -z and 1 - z, with the sign of the imaginary part fixed by
/// `side` when z sits on the cut.
fn side_logs(z: C, side: Option<CutSide>) -> (C, C) {
    match side {
        Some(s) if z.im == 0.0 && z.re > 1.0 => {
            let phase = -s.sign() * std::f64::consts::PI;
            (C::new(z.re.ln(), phase), C::new((z.re - 1.0).ln(), phase))
        }
        _ => ((-z).ln(), (one() - z).ln()),
    }
}

#[derive(Debug, Clone, Copy)]
enum Transform {
    Pfaff,
    OneMinusZ,
    Inverse,
    InverseOneMinusZ,
    OneMinusInverse,
}

fn transform_argument(t: Transform, z: C) -> C {
    match t {
        Transform::Pfaff => z / (z - 1.0),
        Transform::OneMinusZ => one() - z,
        Transform::Inverse => one() / z,
        Transform::InverseOneMinusZ => one() / (one() - z),
        Transform::OneMinusInverse => one() - one() / z,
    }
}

fn apply_transform(
    t: Transform,
    a: C,
    b: C,
    c: C,
    z: C,
    side: Option<CutSide>,
) -> Result<C, NumericsError> {
    let w = transform_argument(t, z);
    let (ln_mz, ln_1mz) = side_logs(z, side);
    match t {
        Transform::Pfaff => Ok((-a * ln_1mz).exp() * series(a, c - b, c, w)?),
        Transform::OneMinusZ => {
            let s = c - a - b;
            let a1 = gamma_quotient(&[c, s], &[c - a, c - b])?;
            let a2 = gamma_quotient(&[c, -s], &[a, b])?;
            let f1 = series(a, b, one() - s, w)?;
            let f2 = series(c - a, c - b, one() + s, w)?;
            Ok(a1 * f1 + a2 * (s * ln_1mz).exp() * f2)
        }
        Transform::Inverse => {
            let d = b - a;
            let k1 = gamma_quotient(&[c, d], &[b, c - a])?;
            let k2 = gamma_quotient(&[c, -d], &[a, c - b])?;
            let f1 = series(a, a - c + 1.0, one() - d, w)?;
            let f2 = series(b, b - c + 1.0, one() + d, w)?;
            Ok(k1 * (-a * ln_mz).exp() * f1 + k2 * (-b * ln_mz).exp() * f2)
        }
        Transform::InverseOneMinusZ => {
            let d = b - a;
            let k1 = gamma_quotient(&[c, d], &[b, c - a])?;
            let k2 = gamma_quotient(&[c, -d], &[a, c - b])?;
            let f1 = series(a, c - b, one() - d, w)?;
            let f2 = series(b, c - a, one() + d, w)?;
            Ok(k1 * (-a * ln_1mz).exp() * f1 + k2 * (-b * ln_1mz).exp() * f2)
        }
        Transform::OneMinusInverse => {
            let s = c - a - b;
            let a1 = gamma_quotient(&[c, s], &[c - a, c - b])?;
            let a2 = gamma_quotient(&[c, -s], &[a, b])?;
            let ln_z = z.ln();
            let f1 = series(a, a - c + 1.0, one() - s, w)?;
            let f2 = series(c - a, one() - a, one() + s, w)?;
            Ok(a1 * (-a * ln_z).exp() * f1 + a2 * (s * ln_1mz + (a - c) * ln_z).exp() * f2)
        }
    }
}

fn usable(t: Transform, a: C, b: C, c: C) -> bool {
    match t {
        Transform::Pfaff => true,
        Transform::OneMinusZ | Transform::OneMinusInverse => !near_integer(c - a - b),
        Transform::Inverse | Transform::InverseOneMinusZ => !near_integer(a - b),
    }
}

/// Taylor coefficients of a solution of z(1-z)F'' + [c-(a+b+1)z]F' - abF = 0
/// around z0, summed at z0 + h. Returns (F, F').
fn ode_step(a: C, b: C, c: C, z0: C, f0: C, d0: C, h: C) -> Result<(C, C), NumericsError> {
    let p0 = z0 * (one() - z0);
    let p1 = one() - 2.0 * z0;
    let q0 = c - (a + b + 1.0) * z0;
    let q1 = -(a + b + 1.0);
    let r = -a * b;
    let mut fm1 = f0; // f_n
    let mut fn0 = d0; // f_{n+1}
    let mut val = f0 + d0 * h;
    let mut der = d0;
    let mut hp = h; // h^{n+1}
    let mut small = 0;
    for n in 0..2_000usize {
        let nf = n as f64;
        let next = -((p1 * nf + q0) * (nf + 1.0) * fn0 + (-nf * (nf - 1.0) + q1 * nf + r) * fm1)
            / (p0 * (nf + 2.0) * (nf + 1.0));
        der += (nf + 2.0) * next * hp;
        hp *= h;
        let term = next * hp;
        val += term;
        fm1 = fn0;
        fn0 = next;
        if term.norm() <= 1e-17 * val.norm() {
            small += 1;
            if small >= 3 {
                return Ok((val, der));
            }
        } else {
            small = 0;
        }
    }
    Err(NumericsError::NonConvergence {
        what: "2F1 differential-equation continuation",
        iterations: 2_000,
    })
}

fn continue_along(a: C, b: C, c: C, waypoints: &[C]) -> Result<C, NumericsError> {
    let start = waypoints[0];
    let mut f = series(a, b, c, start)?;
    let mut d = a * b / c * series(a + 1.0, b + 1.0, c + 1.0, start)?;
    let mut p = start;
    for &target in &waypoints[1..] {
        loop {
            let h = target - p;
            let radius = p.norm().min((one() - p).norm());
            let step = 0.5 * radius;
            if h.norm() <= step {
                let (nf, nd) = ode_step(a, b, c, p, f, d, h)?;
                f = nf;
                d = nd;
                p = target;
                break;
            }
            let hs = h * (step / h.norm());
            let (nf, nd) = ode_step(a, b, c, p, f, d, hs)?;
            f = nf;
            d = nd;
            p += hs;
        }
    }
    Ok(f)
}

fn continuation(a: C, b: C, c: C, z: C, side: Option<CutSide>) -> Result<C, NumericsError> {
    if z.re > 0.5 {
        // detour through the half plane of z, staying at distance >= 1/2 from 1
        let s = if z.im > 0.0 {
            1.0
        } else if z.im < 0.0 {
            -1.0
        } else {
            side.map(CutSide::sign).unwrap_or(1.0)
        };
        let start = C::new(0.0, 0.5 * s);
        let over = C::new(z.re, s * z.im.abs().max(0.5));
        continue_along(a, b, c, &[start, over, z])
    } else {
        let start = z * (0.5 / z.norm());
        continue_along(a, b, c, &[start, z])
    }
}

/// 2F1(a, b; c; z). `side` is required when z is real and greater than one.
pub fn gauss_2f1(a: C, b: C, c: C, z: C, side: Option<CutSide>) -> Result<C, NumericsError> {
    if is_gamma_pole(c) {
        return Err(NumericsError::HypergeometricPole { c });
    }
    if z == C::new(0.0, 0.0) {
        return Ok(one());
    }
    let terminating = nonpositive_integer(a).or(nonpositive_integer(b));
    if let Some(n) = terminating {
        if (n as usize) < MAX_TERMS {
            return series(a, b, c, z);
        }
    }
    if z.im == 0.0 && z.re == 1.0 {
        let s = c - a - b;
        if s.re <= 0.0 {
            return Err(NumericsError::DivergentAtOne { excess: s.re });
        }
        return gamma_quotient(&[c, s], &[c - a, c - b]);
    }
    if z.im == 0.0 && z.re > 1.0 && side.is_none() {
        return Err(NumericsError::CutAmbiguity { z });
    }
    if z.norm() <= SERIES_RADIUS {
        return series(a, b, c, z);
    }
    let candidates = [
        Transform::Pfaff,
        Transform::OneMinusZ,
        Transform::Inverse,
        Transform::InverseOneMinusZ,
        Transform::OneMinusInverse,
    ];
    let best = candidates
        .iter()
        .copied()
        .filter(|&t| usable(t, a, b, c))
        .map(|t| (t, transform_argument(t, z).norm()))
        .filter(|(_, r)| r.is_finite())
        .min_by(|x, y| x.1.total_cmp(&y.1));
    match best {
        Some((t, r)) if r <= TRANSFORM_RADIUS => apply_transform(t, a, b, c, z, side),
        _ => continuation(a, b, c, z, side),
    }
}

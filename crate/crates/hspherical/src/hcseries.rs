//! The Gamma_mu recursion and the Harish-Chandra series
//! Phi_lambda(a) = a^{lambda - rho} sum_mu Gamma_mu(lambda) a^{-mu}.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::crown::Crown;
use crate::error::{Error, Result};
use crate::linalg::{complexify, imag_part, real_part};
use crate::rootcore::{rho, RootSystem};

pub const DEFAULT_GENERICITY_EPS: f64 = 1e-8;

/// Left-hand coefficient of the recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RecursionVariant {
    /// <mu, mu - 2 lambda>. Selected by the rank-one 2F1 oracle.
    #[default]
    Gangolli,
    /// <mu, mu - lambda>. Does not reproduce the rank-one 2F1 coefficients.
    SingleShift,
}

impl std::str::FromStr for RecursionVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gangolli" => Ok(Self::Gangolli),
            "single-shift" | "single_shift" => Ok(Self::SingleShift),
            _ => Err(Error::Domain(format!("unknown recursion variant {s}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaOptions {
    pub variant: RecursionVariant,
    /// A denominator d at mu is rejected when |d| <= eps (1 + <mu, mu>).
    pub genericity_eps: f64,
}

impl Default for GammaOptions {
    fn default() -> Self {
        Self {
            variant: RecursionVariant::default(),
            genericity_eps: DEFAULT_GENERICITY_EPS,
        }
    }
}

/// One coefficient Gamma_mu with mu given both over the simple roots and as a vector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaEntry {
    pub simple_coords: Vec<i64>,
    pub mu: Vec<f64>,
    pub value: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaTable {
    pub lambda: Vec<Complex64>,
    pub max_height: usize,
    pub options: GammaOptions,
    /// Nonzero-capable entries mu in 2 Lambda, keyed by simple coordinates.
    pub entries: BTreeMap<Vec<i64>, GammaEntry>,
}

impl GammaTable {
    pub fn get(&self, coords: &[i64]) -> Complex64 {
        self.entries
            .get(coords)
            .map_or(Complex64::new(0.0, 0.0), |e| e.value)
    }

    /// Entries sorted by height then lexicographically by mu.
    pub fn sorted_entries(&self) -> Vec<&GammaEntry> {
        let mut v: Vec<&GammaEntry> = self.entries.values().collect();
        v.sort_by(|a, b| {
            height(&a.simple_coords)
                .cmp(&height(&b.simple_coords))
                .then_with(|| {
                    a.mu.iter()
                        .zip(&b.mu)
                        .map(|(x, y)| x.total_cmp(y))
                        .find(|o| o.is_ne())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
        });
        v
    }
}

fn height(c: &[i64]) -> usize {
    c.iter().sum::<i64>() as usize
}

/// All coefficient vectors with non-negative even entries and height <= max_height.
fn even_points(rank: usize, max_height: usize) -> Vec<Vec<i64>> {
    fn rec(prefix: &mut Vec<i64>, left: i64, rank: usize, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == rank {
            out.push(prefix.clone());
            return;
        }
        let mut c = 0;
        while c <= left {
            prefix.push(c);
            rec(prefix, left - c, rank, out);
            prefix.pop();
            c += 2;
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), max_height as i64, rank, &mut out);
    out.sort_by_key(|c| (height(c), c.clone()));
    out
}

/// Gamma_mu(lambda) for all mu of height <= max_height, built by increasing height.
pub fn gamma_coeffs(
    rs: &RootSystem,
    lambda: &[Complex64],
    max_height: usize,
    opts: GammaOptions,
) -> Result<GammaTable> {
    if lambda.len() != rs.rank {
        return Err(Error::Dimension {
            expected: rs.rank,
            got: lambda.len(),
        });
    }
    let m = rs.simple.len();
    let rho_c = complexify(&rho(rs));
    let pos = rs.positive_indices();
    let mut entries: BTreeMap<Vec<i64>, GammaEntry> = BTreeMap::new();
    for coords in even_points(m, max_height) {
        let mu = rs.from_simple_coords(&coords);
        if coords.iter().all(|&c| c == 0) {
            entries.insert(
                coords.clone(),
                GammaEntry {
                    simple_coords: coords,
                    mu,
                    value: Complex64::new(1.0, 0.0),
                },
            );
            continue;
        }
        let mu_c = complexify(&mu);
        let shift = match opts.variant {
            RecursionVariant::Gangolli => 2.0,
            RecursionVariant::SingleShift => 1.0,
        };
        let arg: Vec<Complex64> = mu_c
            .iter()
            .zip(lambda)
            .map(|(a, l)| a - shift * l)
            .collect();
        let denom = rs.inner_c(&mu_c, &arg);
        let mu_sq = rs.inner(&mu, &mu);
        if denom.norm() <= opts.genericity_eps * (1.0 + mu_sq) {
            return Err(Error::Genericity {
                mu: coords,
                denominator: denom,
            });
        }
        let mut sum = Complex64::new(0.0, 0.0);
        for &i in &pos {
            let alpha = &rs.roots[i];
            let ac = &rs.simple_coords[i];
            let alpha_c = complexify(&alpha.covector);
            let mut k = 1i64;
            loop {
                let lower: Vec<i64> = coords.iter().zip(ac).map(|(c, a)| c - 2 * k * a).collect();
                if lower.iter().any(|&c| c < 0) {
                    break;
                }
                let g = entries
                    .get(&lower)
                    .map_or(Complex64::new(0.0, 0.0), |e| e.value);
                if g != Complex64::new(0.0, 0.0) {
                    // <mu + rho - 2k alpha - lambda, alpha>
                    let v: Vec<Complex64> = (0..rs.rank)
                        .map(|j| mu_c[j] + rho_c[j] - 2.0 * k as f64 * alpha_c[j] - lambda[j])
                        .collect();
                    sum += alpha.multiplicity as f64 * g * rs.inner_c(&v, &alpha_c);
                }
                k += 1;
            }
        }
        let value = 2.0 * sum / denom;
        entries.insert(
            coords.clone(),
            GammaEntry {
                simple_coords: coords,
                mu,
                value,
            },
        );
    }
    Ok(GammaTable {
        lambda: lambda.to_vec(),
        max_height,
        options: opts,
        entries,
    })
}

/// A point z = log a of the complexified torus with its domain flags.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TubePoint {
    pub z: Vec<Complex64>,
    /// Re alpha(z) > 0 for every positive root.
    pub in_a_plus: bool,
    /// Im z in Omega.
    pub in_omega: bool,
    /// Im z in 2 Omega.
    pub in_2omega: bool,
    /// Im z in Omega_H.
    pub in_omega_h: bool,
}

impl TubePoint {
    pub fn new(rs: &RootSystem, crown: &Crown, z: &[Complex64]) -> Result<Self> {
        if z.len() != rs.rank {
            return Err(Error::Dimension {
                expected: rs.rank,
                got: z.len(),
            });
        }
        let re = real_part(z);
        let im = imag_part(z);
        let in_a_plus = rs
            .positive_roots()
            .all(|r| crate::linalg::dot(&r.covector, &re) > 0.0);
        Ok(Self {
            z: z.to_vec(),
            in_a_plus,
            in_omega: crown.omega.contains(&im, 1.0),
            in_2omega: crown.omega.contains(&im, 2.0),
            in_omega_h: crown.omega_h.contains(&im, 1.0),
        })
    }

    /// The same point translated by i X.
    pub fn shifted(&self, rs: &RootSystem, crown: &Crown, x: &[f64]) -> Result<Self> {
        let z: Vec<Complex64> = self
            .z
            .iter()
            .zip(x)
            .map(|(z, x)| z + Complex64::new(0.0, *x))
            .collect();
        Self::new(rs, crown, &z)
    }
}

/// nu(z) for complex nu and z.
pub fn pair_c(nu: &[Complex64], z: &[Complex64]) -> Complex64 {
    nu.iter().zip(z).map(|(a, b)| a * b).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhiValue {
    pub value: Complex64,
    /// Heuristic polynomial-times-geometric envelope of the omitted terms.
    pub tail_bound: f64,
}

/// Phi_lambda(z) from a Gamma table. Requires Re alpha(z) > 0 on positive roots.
pub fn phi_function(
    rs: &RootSystem,
    table: &GammaTable,
    z: &[Complex64],
    tol: Option<f64>,
) -> Result<PhiValue> {
    let re = real_part(z);
    let q = rs
        .positive_roots()
        .map(|r| (-crate::linalg::dot(&r.covector, &re)).exp())
        .fold(0.0, f64::max);
    if rs.positive_roots().count() > 0 && q >= 1.0 {
        return Err(Error::Domain(format!(
            "Re alpha(z) <= 0 for a positive root at z = {z:?}"
        )));
    }
    let rho_c = complexify(&rho(rs));
    let lead_exp: Vec<Complex64> = table
        .lambda
        .iter()
        .zip(&rho_c)
        .map(|(l, r)| l - r)
        .collect();
    let lead = pair_c(&lead_exp, z).exp();
    let mut sum = Complex64::new(0.0, 0.0);
    // terms of smallest modulus first
    let mut terms: Vec<Complex64> = table
        .entries
        .values()
        .map(|e| e.value * (-pair_c(&complexify(&e.mu), z)).exp())
        .collect();
    terms.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
    for t in terms.iter().rev() {
        sum += t;
    }
    let value = lead * sum;
    let tail_bound = lead.norm() * tail_envelope(rs, table, q);
    if let Some(tol) = tol {
        if tail_bound > tol * value.norm().max(1e-300) {
            return Err(Error::TableTooShort {
                tail_bound,
                tolerance: tol,
            });
        }
    }
    Ok(PhiValue { value, tail_bound })
}

/// Sum over heights h > N of count(h) * C(h) * q^h, where C is a power-law
/// fit through the largest |Gamma_mu| at heights N/2 and N.
fn tail_envelope(rs: &RootSystem, table: &GammaTable, q: f64) -> f64 {
    let n = table.max_height;
    let rank = rs.simple.len();
    if rank == 0 {
        return 0.0;
    }
    let max_at = |h: usize| {
        table
            .entries
            .values()
            .filter(|e| height(&e.simple_coords) == h)
            .map(|e| e.value.norm())
            .fold(0.0, f64::max)
    };
    let top = n - n % 2;
    if top == 0 {
        // nothing to extrapolate from; assume bounded coefficients
        return geometric_tail(rank, 1.0, 0.0, 0, q);
    }
    let half = (top / 2) - (top / 2) % 2;
    let c_top = max_at(top).max(max_at(top.saturating_sub(2)));
    let c_half = max_at(half.max(2)).max(1e-300);
    let p = if top > half.max(2) {
        ((c_top / c_half).ln() / ((top as f64) / (half.max(2) as f64)).ln()).max(0.0)
    } else {
        0.0
    };
    geometric_tail(rank, c_top.max(1e-300), p, top, q)
}

fn geometric_tail(rank: usize, c: f64, p: f64, n: usize, q: f64) -> f64 {
    let mut total = 0.0;
    let mut h = n + 2;
    loop {
        let count = (h as f64 + 1.0).powi(rank as i32 - 1);
        let term = count * c * ((h as f64) / (n.max(1) as f64)).powf(p) * q.powi(h as i32);
        total += term;
        if term <= 1e-18 * total || h > n + 100_000 {
            break;
        }
        h += 2;
    }
    total
}

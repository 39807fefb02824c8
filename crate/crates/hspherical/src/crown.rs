//! The crown polytope Omega = {X : |alpha(X)| < pi/2}, the sub-polytope
//! Omega_H = int conv W(X_H), the base point X_H, z_H powers and the H-norm.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::linalg::{dot, solve};
use crate::rootcore::{catalog_entry, CaseTag, RootSystem, WeylGroup};

/// Tolerance on alpha(X) comparisons for membership.
pub const MEMBERSHIP_TOL: f64 = 1e-12;
/// Tolerance on the spectrum of ad(T0).
pub const SPECTRUM_TOL: f64 = 1e-10;
const VERTEX_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PolytopeKind {
    Omega,
    OmegaH,
}

/// normal(X) < bound, or |normal(X)| < bound when two-sided.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HalfSpace {
    pub normal: Vec<f64>,
    pub bound: f64,
    pub two_sided: bool,
}

impl HalfSpace {
    fn slack(&self, x: &[f64], scale: f64) -> f64 {
        let v = dot(&self.normal, x);
        scale * self.bound - if self.two_sided { v.abs() } else { v }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Vertex {
    pub point: Vec<f64>,
    /// Index into `CrownPolytope::orbits`.
    pub orbit: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexOrbit {
    /// Dominant representative.
    pub representative: Vec<f64>,
    pub points: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrownPolytope {
    pub kind: PolytopeKind,
    pub h_rep: Vec<HalfSpace>,
    pub vertices: Vec<Vertex>,
    pub orbits: Vec<VertexOrbit>,
}

impl CrownPolytope {
    /// True iff X lies in scale times the open feasible set.
    pub fn contains(&self, x: &[f64], scale: f64) -> bool {
        self.h_rep
            .iter()
            .all(|h| h.slack(x, scale) > MEMBERSHIP_TOL)
    }

    /// True iff X lies in scale times the closure.
    pub fn contains_closed(&self, x: &[f64], scale: f64) -> bool {
        self.h_rep.iter().all(|h| h.slack(x, scale) >= -VERTEX_TOL)
    }

    pub fn vertex_points(&self) -> Vec<Vec<f64>> {
        self.vertices.iter().map(|v| v.point.clone()).collect()
    }
}

/// X_H = (pi/2) T0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasePoint {
    pub t0: Vec<f64>,
    pub x_h: Vec<f64>,
}

impl BasePoint {
    /// Validates alpha(T0) in {0, 1, -1} for every root.
    pub fn new(rs: &RootSystem, t0: &[f64]) -> Result<Self> {
        if t0.len() != rs.rank {
            return Err(Error::Dimension {
                expected: rs.rank,
                got: t0.len(),
            });
        }
        for r in &rs.roots {
            let v = dot(&r.covector, t0);
            if [0.0, 1.0, -1.0]
                .iter()
                .all(|s| (v - s).abs() > SPECTRUM_TOL)
            {
                return Err(Error::InvalidBasePoint(format!(
                    "alpha(T0) = {v} for alpha = {:?}",
                    r.covector
                )));
            }
        }
        Ok(Self {
            t0: t0.to_vec(),
            x_h: t0.iter().map(|x| FRAC_PI_2 * x).collect(),
        })
    }

    /// The shipped catalog base point.
    pub fn catalog(rs: &RootSystem) -> Result<Self> {
        let entry = catalog_entry(rs.case_tag)?;
        Self::new(rs, &entry.t0)
    }

    /// The other extreme-point orbit representative shipped with the catalog, if any.
    pub fn catalog_alternate(rs: &RootSystem) -> Result<Option<Self>> {
        let entry = catalog_entry(rs.case_tag)?;
        entry.alternate_t0.map(|t| Self::new(rs, &t)).transpose()
    }

    /// lambda(X_H) for complex lambda.
    pub fn pair(&self, lambda: &[Complex64]) -> Complex64 {
        lambda.iter().zip(&self.x_h).map(|(l, x)| l * x).sum()
    }
}

/// z_H^lambda = exp(i lambda(X_H)).
pub fn z_h_power(bp: &BasePoint, lambda: &[Complex64]) -> Complex64 {
    (Complex64::i() * bp.pair(lambda)).exp()
}

/// ||lambda||_H = max over w of |lambda(w X_H)|.
pub fn h_norm(bp: &BasePoint, weyl: &WeylGroup, lambda: &[Complex64]) -> f64 {
    weyl.orbit_points(&bp.x_h)
        .iter()
        .map(|x| {
            lambda
                .iter()
                .zip(x)
                .map(|(l, xi)| l * xi)
                .sum::<Complex64>()
                .norm()
        })
        .fold(0.0, f64::max)
}

fn is_dominant(rs: &RootSystem, x: &[f64]) -> bool {
    rs.simple
        .iter()
        .all(|&i| dot(&rs.roots[i].covector, x) >= -VERTEX_TOL)
}

fn close(a: &[f64], b: &[f64]) -> bool {
    a.iter()
        .zip(b)
        .all(|(x, y)| (x - y).abs() <= VERTEX_TOL * (1.0 + x.abs()))
}

fn sort_points(points: &mut [Vec<f64>]) {
    points.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
}

/// Partition points into W-orbits with dominant representatives.
fn orbit_partition(
    rs: &RootSystem,
    weyl: &WeylGroup,
    points: &[Vec<f64>],
) -> (Vec<Vertex>, Vec<VertexOrbit>) {
    let mut orbits: Vec<VertexOrbit> = Vec::new();
    let mut vertices = Vec::with_capacity(points.len());
    for p in points {
        if let Some(k) = orbits
            .iter()
            .position(|o| o.points.iter().any(|q| close(q, p)))
        {
            vertices.push(Vertex {
                point: p.clone(),
                orbit: k,
            });
            continue;
        }
        let mut pts = weyl.orbit_points(p);
        sort_points(&mut pts);
        let representative = pts
            .iter()
            .find(|q| is_dominant(rs, q))
            .cloned()
            .unwrap_or_else(|| p.clone());
        orbits.push(VertexOrbit {
            representative,
            points: pts,
        });
        vertices.push(Vertex {
            point: p.clone(),
            orbit: orbits.len() - 1,
        });
    }
    (vertices, orbits)
}

/// Each index subset of size k from 0..n.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Omega with bound pi/2 per positive root and brute-force vertex enumeration.
pub fn omega(rs: &RootSystem, weyl: &WeylGroup) -> CrownPolytope {
    let h_rep: Vec<HalfSpace> = rs
        .positive_roots()
        .map(|r| HalfSpace {
            normal: r.covector.clone(),
            bound: FRAC_PI_2,
            two_sided: true,
        })
        .collect();
    // candidate hyperplanes normal(X) = +-bound
    let planes: Vec<(Vec<f64>, f64)> = h_rep
        .iter()
        .flat_map(|h| [(h.normal.clone(), h.bound), (h.normal.clone(), -h.bound)])
        .collect();
    let n = rs.rank;
    let mut points: Vec<Vec<f64>> = Vec::new();
    if n > 0 {
        for s in subsets(planes.len(), n) {
            let a = DMatrix::from_fn(n, n, |i, j| planes[s[i]].0[j]);
            let b: Vec<f64> = s.iter().map(|&i| planes[i].1).collect();
            if a.clone().determinant().abs() < 1e-12 {
                continue;
            }
            let Some(x) = solve(&a, &b) else { continue };
            let feasible = h_rep.iter().all(|h| h.slack(&x, 1.0) >= -VERTEX_TOL);
            if feasible && !points.iter().any(|p| close(p, &x)) {
                points.push(x);
            }
        }
    }
    sort_points(&mut points);
    let (vertices, orbits) = orbit_partition(rs, weyl, &points);
    CrownPolytope {
        kind: PolytopeKind::Omega,
        h_rep,
        vertices,
        orbits,
    }
}

/// Omega_H = int conv W(X_H) with facets found by enumerating vertex subsets.
pub fn omega_h(rs: &RootSystem, weyl: &WeylGroup, bp: &BasePoint) -> Result<CrownPolytope> {
    let om = omega(rs, weyl);
    if !om.contains_closed(&bp.x_h, 1.0) || !om.vertices.iter().any(|v| close(&v.point, &bp.x_h)) {
        return Err(Error::InvalidBasePoint(
            "X_H is not an extreme point of the closure of Omega".into(),
        ));
    }
    let mut points = weyl.orbit_points(&bp.x_h);
    sort_points(&mut points);
    let n = rs.rank;
    let mut facets: Vec<Vec<f64>> = Vec::new();
    for s in subsets(points.len(), n) {
        // normal with normal(v) = 1 on the subset; 0 is interior so every facet has this form
        let a = DMatrix::from_fn(n, n, |i, j| points[s[i]][j]);
        if a.clone().determinant().abs() < 1e-12 {
            continue;
        }
        let Some(nrm) = solve(&a, &vec![1.0; n]) else {
            continue;
        };
        if points.iter().all(|p| dot(&nrm, p) <= 1.0 + VERTEX_TOL)
            && !facets.iter().any(|f| close(f, &nrm))
        {
            facets.push(nrm);
        }
    }
    let mut h_rep: Vec<HalfSpace> = Vec::new();
    for f in &facets {
        let neg: Vec<f64> = f.iter().map(|x| -x).collect();
        if h_rep
            .iter()
            .any(|h| h.two_sided && close(&neg, &scaled_back(h)))
        {
            continue;
        }
        let two_sided = facets.iter().any(|g| close(g, &neg));
        h_rep.push(root_scaled(rs, f, two_sided));
    }
    let (vertices, orbits) = orbit_partition(rs, weyl, &points);
    Ok(CrownPolytope {
        kind: PolytopeKind::OmegaH,
        h_rep,
        vertices,
        orbits,
    })
}

fn scaled_back(h: &HalfSpace) -> Vec<f64> {
    h.normal.iter().map(|x| x / h.bound).collect()
}

/// Rewrite normal(X) <= 1 as alpha(X) <= bound when a root is a positive multiple of the normal.
fn root_scaled(rs: &RootSystem, nrm: &[f64], two_sided: bool) -> HalfSpace {
    for r in &rs.roots {
        let c = &r.covector;
        let k = dot(c, nrm) / dot(nrm, nrm);
        if k > 0.0 && close(c, &nrm.iter().map(|x| k * x).collect::<Vec<_>>()) {
            return HalfSpace {
                normal: c.clone(),
                bound: k,
                two_sided,
            };
        }
    }
    HalfSpace {
        normal: nrm.to_vec(),
        bound: 1.0,
        two_sided,
    }
}

/// Whether the closures of Omega_H and Omega coincide, by vertex-set equality.
pub fn omega_h_equals_omega(om: &CrownPolytope, omh: &CrownPolytope) -> bool {
    om.vertices.len() == omh.vertices.len()
        && om
            .vertices
            .iter()
            .all(|v| omh.vertices.iter().any(|u| close(&u.point, &v.point)))
}

/// Omega, Omega_H and the base point for one root system.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Crown {
    pub case_tag: CaseTag,
    pub base_point: BasePoint,
    pub omega: CrownPolytope,
    pub omega_h: CrownPolytope,
}

impl Crown {
    pub fn new(rs: &RootSystem, weyl: &WeylGroup, bp: BasePoint) -> Result<Self> {
        let om = omega(rs, weyl);
        let omh = omega_h(rs, weyl, &bp)?;
        Ok(Self {
            case_tag: rs.case_tag,
            base_point: bp,
            omega: om,
            omega_h: omh,
        })
    }

    pub fn equal_closures(&self) -> bool {
        omega_h_equals_omega(&self.omega, &self.omega_h)
    }
}

//! Restricted root systems with multiplicities, Weyl groups, rho and the
//! monoid of non-negative integer combinations of positive roots.
//!
//! Coordinates: a point X of a is a vector in R^rank, a covector lambda of a*
//! is a vector in R^rank (or C^rank) with lambda(X) = sum lambda_i X_i. The
//! Gram matrix is the inner product on a*, the inverse of the trace form of
//! the defining matrix realization restricted to a.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{add, dot, mat_cvec, mat_vec, matrix_from_rows, matrix_rows, solve, sub};

const CATALOG_JSON: &str = include_str!("../data/catalog.json");
const WEYL_LIMIT: usize = 10_000;
const TOL: f64 = 1e-9;

/// A point of a* (or a) in coordinates.
pub type Weight = Vec<f64>;
/// A point of the complexified dual a*_C.
pub type SpectralParam = Vec<Complex64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseTag {
    A1,
    A2,
    C2,
    #[serde(rename = "CUSTOM")]
    Custom,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseTag::A1 => "A1",
            CaseTag::A2 => "A2",
            CaseTag::C2 => "C2",
            CaseTag::Custom => "CUSTOM",
        };
        f.write_str(s)
    }
}

impl FromStr for CaseTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A1" => Ok(CaseTag::A1),
            "A2" => Ok(CaseTag::A2),
            "C2" => Ok(CaseTag::C2),
            "CUSTOM" => Ok(CaseTag::Custom),
            _ => Err(Error::UnknownCase(s.to_string())),
        }
    }
}

impl CaseTag {
    pub const CATALOG: [CaseTag; 3] = [CaseTag::A1, CaseTag::A2, CaseTag::C2];
}

/// One entry of the embedded catalog.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub tag: CaseTag,
    pub group: String,
    pub coordinates: String,
    pub rank: usize,
    /// Trace form of the matrix realization on a; the Gram matrix on a* is its inverse.
    pub trace_form: Vec<Vec<f64>>,
    pub positive_roots: Vec<PositiveRootEntry>,
    /// The base point direction T0, with X_H = (pi/2) T0.
    pub t0: Vec<f64>,
    /// Order of the stabilizer of X_H in the Weyl group.
    pub stabilizer_order: usize,
    /// Representative of the other extreme-point orbit, when there is one.
    pub alternate_t0: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositiveRootEntry {
    pub covector: Vec<f64>,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Catalog {
    pub schema_version: u32,
    pub cases: Vec<CatalogEntry>,
}

/// The embedded catalog, parsed.
pub fn catalog() -> Catalog {
    serde_json::from_str(CATALOG_JSON).expect("embedded catalog is valid JSON")
}

/// The raw embedded catalog text.
pub fn catalog_json() -> &'static str {
    CATALOG_JSON
}

pub fn catalog_entry(tag: CaseTag) -> Result<CatalogEntry> {
    catalog()
        .cases
        .into_iter()
        .find(|c| c.tag == tag)
        .ok_or_else(|| Error::UnknownCase(tag.to_string()))
}

/// User-supplied root data for a CUSTOM system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootData {
    pub rank: usize,
    /// Inner product on a*.
    pub gram: Vec<Vec<f64>>,
    pub roots: Vec<RootEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootEntry {
    pub covector: Vec<f64>,
    pub multiplicity: u32,
    pub positive: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Root {
    pub covector: Weight,
    pub multiplicity: u32,
    pub positive: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootSystem {
    pub case_tag: CaseTag,
    pub rank: usize,
    pub roots: Vec<Root>,
    /// Inner product on a*.
    pub gram: DMatrix<f64>,
    /// Indices of the simple roots in `roots`.
    pub simple: Vec<usize>,
    /// Coefficients of each root over the simple roots.
    pub simple_coords: Vec<Vec<i64>>,
}

fn same_vec(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(x, y)| (x - y).abs() <= TOL * (1.0 + x.abs().max(y.abs())))
}

impl RootSystem {
    /// Catalog root data with all multiplicities one.
    pub fn build(tag: CaseTag) -> Result<Self> {
        if tag == CaseTag::Custom {
            return Err(Error::InvalidRootData(
                "CUSTOM systems are built with RootSystem::custom".into(),
            ));
        }
        let entry = catalog_entry(tag)?;
        let trace = matrix_from_rows(&entry.trace_form);
        let gram = trace
            .try_inverse()
            .ok_or_else(|| Error::InvalidRootData(format!("{tag}: singular trace form")))?;
        let mut roots = Vec::new();
        for r in &entry.positive_roots {
            roots.push(RootEntry {
                covector: r.covector.clone(),
                multiplicity: r.multiplicity,
                positive: true,
            });
            roots.push(RootEntry {
                covector: r.covector.iter().map(|x| -x).collect(),
                multiplicity: r.multiplicity,
                positive: false,
            });
        }
        let mut rs = Self::from_data(&RootData {
            rank: entry.rank,
            gram: matrix_rows(&gram),
            roots,
        })?;
        rs.case_tag = tag;
        Ok(rs)
    }

    /// Validated user root data.
    pub fn custom(data: &RootData) -> Result<Self> {
        let rs = Self::from_data(data)?;
        WeylGroup::new(&rs)?;
        Ok(rs)
    }

    fn from_data(data: &RootData) -> Result<Self> {
        let n = data.rank;
        if data.gram.len() != n || data.gram.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension {
                expected: n,
                got: data.gram.len(),
            });
        }
        let gram = matrix_from_rows(&data.gram);
        if n > 0 {
            if (&gram - gram.transpose()).amax() > TOL {
                return Err(Error::InvalidRootData(
                    "Gram matrix is not symmetric".into(),
                ));
            }
            if gram.clone().cholesky().is_none() {
                return Err(Error::InvalidRootData(
                    "Gram matrix is not positive definite".into(),
                ));
            }
        }
        let mut roots = Vec::new();
        for r in &data.roots {
            if r.covector.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: r.covector.len(),
                });
            }
            if r.covector.iter().all(|x| x.abs() <= TOL) {
                return Err(Error::InvalidRootData("zero root".into()));
            }
            if r.multiplicity == 0 {
                return Err(Error::InvalidRootData(
                    "multiplicity must be at least one".into(),
                ));
            }
            roots.push(Root {
                covector: r.covector.clone(),
                multiplicity: r.multiplicity,
                positive: r.positive,
            });
        }
        for (i, r) in roots.iter().enumerate() {
            let neg: Vec<f64> = r.covector.iter().map(|x| -x).collect();
            let partners: Vec<&Root> = roots
                .iter()
                .filter(|s| same_vec(&s.covector, &neg))
                .collect();
            if partners.len() != 1 {
                return Err(Error::InvalidRootData(format!(
                    "root {:?} has no unique negative",
                    r.covector
                )));
            }
            if partners[0].positive == r.positive {
                return Err(Error::InvalidRootData(format!(
                    "exactly one of +-{:?} must be positive",
                    r.covector
                )));
            }
            if roots
                .iter()
                .enumerate()
                .any(|(j, s)| j != i && same_vec(&s.covector, &r.covector))
            {
                return Err(Error::InvalidRootData(format!(
                    "duplicate root {:?}",
                    r.covector
                )));
            }
        }
        let mut rs = RootSystem {
            case_tag: CaseTag::Custom,
            rank: n,
            roots,
            gram,
            simple: vec![],
            simple_coords: vec![],
        };
        rs.find_simple_roots()?;
        Ok(rs)
    }

    fn find_simple_roots(&mut self) -> Result<()> {
        let pos: Vec<usize> = self.positive_indices();
        let mut simple = Vec::new();
        for &i in &pos {
            let target = &self.roots[i].covector;
            let decomposable = pos.iter().any(|&j| {
                let rest = sub(target, &self.roots[j].covector);
                pos.iter()
                    .any(|&k| same_vec(&rest, &self.roots[k].covector))
            });
            if !decomposable {
                simple.push(i);
            }
        }
        // coefficients over the simple roots via the Gram system of the simple roots
        let m = simple.len();
        let sg = DMatrix::from_fn(m, m, |a, b| {
            self.inner(
                &self.roots[simple[a]].covector,
                &self.roots[simple[b]].covector,
            )
        });
        let mut coords = Vec::with_capacity(self.roots.len());
        for r in &self.roots {
            let rhs: Vec<f64> = simple
                .iter()
                .map(|&s| self.inner(&self.roots[s].covector, &r.covector))
                .collect();
            let c = if m == 0 {
                vec![]
            } else {
                solve(&sg, &rhs).ok_or_else(|| {
                    Error::InvalidRootData("simple roots are linearly dependent".into())
                })?
            };
            let mut rebuilt = vec![0.0; self.rank];
            let mut ints = Vec::with_capacity(m);
            for (k, &ck) in c.iter().enumerate() {
                let ci = ck.round();
                if (ck - ci).abs() > 1e-7 {
                    return Err(Error::InvalidRootData(format!(
                        "root {:?} is not an integral combination of simple roots",
                        r.covector
                    )));
                }
                ints.push(ci as i64);
                rebuilt = add(
                    &rebuilt,
                    &self.roots[simple[k]]
                        .covector
                        .iter()
                        .map(|x| x * ci)
                        .collect::<Vec<_>>(),
                );
            }
            if !same_vec(&rebuilt, &r.covector) {
                return Err(Error::InvalidRootData(format!(
                    "root {:?} is outside the span of the simple roots",
                    r.covector
                )));
            }
            let signs_ok = if r.positive {
                ints.iter().all(|&x| x >= 0)
            } else {
                ints.iter().all(|&x| x <= 0)
            };
            if !signs_ok {
                return Err(Error::InvalidRootData(format!(
                    "root {:?} is not of one sign over the simple roots",
                    r.covector
                )));
            }
            coords.push(ints);
        }
        self.simple = simple;
        self.simple_coords = coords;
        Ok(())
    }

    pub fn positive_indices(&self) -> Vec<usize> {
        (0..self.roots.len())
            .filter(|&i| self.roots[i].positive)
            .collect()
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.positive)
    }

    /// Positive roots alpha such that alpha/2 is not a root.
    pub fn indivisible_positive_indices(&self) -> Vec<usize> {
        self.positive_indices()
            .into_iter()
            .filter(|&i| {
                let half: Vec<f64> = self.roots[i].covector.iter().map(|x| 0.5 * x).collect();
                self.root_index(&half).is_none()
            })
            .collect()
    }

    pub fn root_index(&self, covector: &[f64]) -> Option<usize> {
        self.roots
            .iter()
            .position(|r| same_vec(&r.covector, covector))
    }

    /// Multiplicity of `covector` as a root, 0 when it is not a root.
    pub fn multiplicity_of(&self, covector: &[f64]) -> u32 {
        self.root_index(covector)
            .map_or(0, |i| self.roots[i].multiplicity)
    }

    /// Inner product on a*.
    pub fn inner(&self, a: &[f64], b: &[f64]) -> f64 {
        dot(a, &mat_vec(&self.gram, b))
    }

    /// Complex-bilinear extension of the inner product on a*.
    pub fn inner_c(&self, a: &[Complex64], b: &[Complex64]) -> Complex64 {
        a.iter()
            .zip(mat_cvec(&self.gram, b))
            .map(|(x, y)| x * y)
            .sum()
    }

    /// <lambda, alpha> / <alpha, alpha>.
    pub fn coroot_pairing(&self, lambda: &[Complex64], alpha: &[f64]) -> Complex64 {
        let ga = mat_vec(&self.gram, alpha);
        let num: Complex64 = lambda.iter().zip(&ga).map(|(l, g)| l * g).sum();
        num / dot(alpha, &ga)
    }

    /// The element H_lambda of a with mu(H_lambda) = <mu, lambda>.
    pub fn dual_vector(&self, lambda: &[f64]) -> Vec<f64> {
        mat_vec(&self.gram, lambda)
    }

    /// A copy with the Gram matrix multiplied by `s`.
    pub fn with_gram_scale(&self, s: f64) -> Self {
        let mut out = self.clone();
        out.gram *= s;
        out
    }

    pub fn simple_root_vectors(&self) -> Vec<Weight> {
        self.simple
            .iter()
            .map(|&i| self.roots[i].covector.clone())
            .collect()
    }

    /// Weight from integer coefficients over the simple roots.
    pub fn from_simple_coords(&self, coeffs: &[i64]) -> Weight {
        let mut v = vec![0.0; self.rank];
        for (k, &c) in coeffs.iter().enumerate() {
            for (x, y) in v.iter_mut().zip(&self.roots[self.simple[k]].covector) {
                *x += c as f64 * y;
            }
        }
        v
    }

    /// Weights omega_i with <omega_i, alpha_j> = delta_ij for the simple roots
    /// alpha_j. They span the edges of the closed positive chamber.
    pub fn chamber_edges(&self) -> Result<Vec<Weight>> {
        let simple = self.simple_root_vectors();
        let m = simple.len();
        if m != self.rank {
            return Err(Error::InvalidRootData("simple roots do not span a*".into()));
        }
        let a = DMatrix::from_fn(m, m, |i, j| self.dual_vector(&simple[i])[j]);
        let mut out = Vec::with_capacity(m);
        for i in 0..m {
            let mut e = vec![0.0; m];
            e[i] = 1.0;
            out.push(
                solve(&a, &e).ok_or_else(|| Error::InvalidRootData("degenerate chamber".into()))?,
            );
        }
        Ok(out)
    }
}

/// One Weyl group element with its action on a* and on a.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylElement {
    /// Action on covector coordinates.
    pub on_dual: DMatrix<f64>,
    /// Action on point coordinates, the inverse transpose of `on_dual`.
    pub on_a: DMatrix<f64>,
    /// Reduced word: w = s_{word[0]} s_{word[1]} ...
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn act_dual(&self, lambda: &[f64]) -> Vec<f64> {
        mat_vec(&self.on_dual, lambda)
    }

    pub fn act_dual_c(&self, lambda: &[Complex64]) -> Vec<Complex64> {
        mat_cvec(&self.on_dual, lambda)
    }

    pub fn act_point(&self, x: &[f64]) -> Vec<f64> {
        mat_vec(&self.on_a, x)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeylGroup {
    pub elements: Vec<WeylElement>,
    /// Indices of the simple reflections, in simple-root order.
    pub generators: Vec<usize>,
    inverse: Vec<usize>,
}

fn reflection(rs: &RootSystem, alpha: &[f64]) -> DMatrix<f64> {
    let n = rs.rank;
    let ga = rs.dual_vector(alpha);
    let aa = dot(alpha, &ga);
    // lambda -> lambda - 2 <lambda, alpha>/<alpha, alpha> alpha
    DMatrix::from_fn(
        n,
        n,
        |i, j| if i == j { 1.0 } else { 0.0 } - 2.0 * alpha[i] * ga[j] / aa,
    )
}

fn same_matrix(a: &DMatrix<f64>, b: &DMatrix<f64>) -> bool {
    (a - b).amax() <= 1e-9
}

impl WeylGroup {
    /// The full group by closure over the simple reflections.
    pub fn new(rs: &RootSystem) -> Result<Self> {
        Self::with_limit(rs, WEYL_LIMIT)
    }

    pub fn with_limit(rs: &RootSystem, limit: usize) -> Result<Self> {
        let n = rs.rank;
        let gens: Vec<DMatrix<f64>> = rs
            .simple
            .iter()
            .map(|&i| reflection(rs, &rs.roots[i].covector))
            .collect();
        let identity = DMatrix::<f64>::identity(n, n);
        let mut elements = vec![WeylElement {
            on_dual: identity.clone(),
            on_a: identity,
            word: vec![],
        }];
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &e in &frontier {
                for (g, gm) in gens.iter().enumerate() {
                    let m = gm * &elements[e].on_dual;
                    if elements.iter().any(|x| same_matrix(&x.on_dual, &m)) {
                        continue;
                    }
                    if elements.len() >= limit {
                        return Err(Error::WeylExplosion { limit });
                    }
                    let on_a = m
                        .clone()
                        .try_inverse()
                        .ok_or_else(|| {
                            Error::InvalidRootData("singular reflection product".into())
                        })?
                        .transpose();
                    let mut word = vec![g];
                    word.extend_from_slice(&elements[e].word);
                    elements.push(WeylElement {
                        on_dual: m,
                        on_a,
                        word,
                    });
                    next.push(elements.len() - 1);
                }
            }
            frontier = next;
        }
        let generators = gens
            .iter()
            .map(|g| {
                elements
                    .iter()
                    .position(|x| same_matrix(&x.on_dual, g))
                    .expect("generator present")
            })
            .collect();
        let inverse = elements
            .iter()
            .map(|x| {
                let inv = x.on_dual.clone().try_inverse().expect("invertible");
                elements
                    .iter()
                    .position(|y| same_matrix(&y.on_dual, &inv))
                    .expect("closed under inverse")
            })
            .collect();
        let w = WeylGroup {
            elements,
            generators,
            inverse,
        };
        w.check_root_action(rs)?;
        Ok(w)
    }

    fn check_root_action(&self, rs: &RootSystem) -> Result<()> {
        for w in &self.elements {
            for r in &rs.roots {
                let image = w.act_dual(&r.covector);
                match rs.root_index(&image) {
                    None => {
                        return Err(Error::InvalidRootData(format!(
                            "Weyl image of {:?} is not a root",
                            r.covector
                        )))
                    }
                    Some(j) if rs.roots[j].multiplicity != r.multiplicity => {
                        return Err(Error::InvalidRootData(format!(
                            "multiplicities are not Weyl-invariant at {:?}",
                            r.covector
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn longest_index(&self) -> usize {
        (0..self.elements.len())
            .max_by_key(|&i| self.elements[i].length())
            .unwrap_or(0)
    }

    /// Index of the product w_i w_j.
    pub fn compose(&self, i: usize, j: usize) -> usize {
        let m = &self.elements[i].on_dual * &self.elements[j].on_dual;
        self.index_of(&m).expect("group is closed")
    }

    pub fn index_of(&self, on_dual: &DMatrix<f64>) -> Option<usize> {
        self.elements
            .iter()
            .position(|x| same_matrix(&x.on_dual, on_dual))
    }

    /// Index of the element with the given word (product of simple reflections, left to right).
    pub fn from_word(&self, word: &[usize]) -> Result<usize> {
        let n = self.elements[0].on_dual.nrows();
        let mut m = DMatrix::<f64>::identity(n, n);
        for &g in word {
            let gi = *self.generators.get(g).ok_or_else(|| Error::Dimension {
                expected: self.generators.len(),
                got: g + 1,
            })?;
            m *= &self.elements[gi].on_dual;
        }
        Ok(self.index_of(&m).expect("group is closed"))
    }

    /// Distinct points of the orbit W x, in element order.
    pub fn orbit_points(&self, x: &[f64]) -> Vec<Vec<f64>> {
        let mut out: Vec<Vec<f64>> = Vec::new();
        for w in &self.elements {
            let y = w.act_point(x);
            if !out.iter().any(|z| same_vec(z, &y)) {
                out.push(y);
            }
        }
        out
    }

    /// Indices of the elements fixing the point x of a.
    pub fn stabilizer(&self, x: &[f64]) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&i| same_vec(&self.elements[i].act_point(x), x))
            .collect()
    }
}

/// rho = half the multiplicity-weighted sum of the positive roots.
pub fn rho(rs: &RootSystem) -> Weight {
    let mut v = vec![0.0; rs.rank];
    for r in rs.positive_roots() {
        for (x, y) in v.iter_mut().zip(&r.covector) {
            *x += 0.5 * r.multiplicity as f64 * y;
        }
    }
    v
}

/// An element of the monoid generated by the positive roots.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticePoint {
    pub vector: Weight,
    /// Coefficients over the simple roots.
    pub simple_coords: Vec<i64>,
    /// Least number of positive roots summing to the point.
    pub height: usize,
}

/// All sums of at most `max_height` positive roots, deduplicated, sorted by
/// height and then lexicographically by coordinates.
pub fn lattice_enum(rs: &RootSystem, max_height: usize) -> Vec<LatticePoint> {
    let pos = rs.positive_indices();
    let m = rs.simple.len();
    let mut seen: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    seen.insert(vec![0; m], 0);
    let mut frontier: HashSet<Vec<i64>> = HashSet::from([vec![0; m]]);
    for h in 1..=max_height {
        let mut next = HashSet::new();
        for p in &frontier {
            for &i in &pos {
                let q: Vec<i64> = p
                    .iter()
                    .zip(&rs.simple_coords[i])
                    .map(|(a, b)| a + b)
                    .collect();
                if !seen.contains_key(&q) {
                    seen.insert(q.clone(), h);
                    next.insert(q);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<LatticePoint> = seen
        .into_iter()
        .map(|(c, h)| LatticePoint {
            vector: rs.from_simple_coords(&c),
            simple_coords: c,
            height: h,
        })
        .collect();
    out.sort_by(|a, b| {
        a.height.cmp(&b.height).then_with(|| {
            a.vector
                .iter()
                .zip(&b.vector)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_sizes() {
        for (tag, npos, order) in [
            (CaseTag::A1, 1, 2),
            (CaseTag::A2, 3, 6),
            (CaseTag::C2, 4, 8),
        ] {
            let rs = RootSystem::build(tag).unwrap();
            assert_eq!(rs.positive_roots().count(), npos);
            assert!(rs.positive_roots().all(|r| r.multiplicity == 1));
            assert_eq!(WeylGroup::new(&rs).unwrap().order(), order);
        }
    }

    #[test]
    fn a2_weyl_group_is_the_symmetric_group() {
        // act on diag(u, v-u, -v) entries: every element is a permutation of the three entries
        let rs = RootSystem::build(CaseTag::A2).unwrap();
        let w = WeylGroup::new(&rs).unwrap();
        let x = [0.3, 0.11];
        let entries = |p: &[f64]| {
            let mut e = vec![p[0], p[1] - p[0], -p[1]];
            e.sort_by(f64::total_cmp);
            e
        };
        let mut images = Vec::new();
        for el in &w.elements {
            let y = el.act_point(&x);
            assert!(crate::linalg::max_abs_diff(&entries(&y), &entries(&x)) < 1e-12);
            images.push(y);
        }
        // all 3! permutations are realized
        for i in 0..images.len() {
            for j in 0..i {
                assert!(crate::linalg::max_abs_diff(&images[i], &images[j]) > 1e-6);
            }
        }
    }

    #[test]
    fn rho_values() {
        assert_eq!(rho(&RootSystem::build(CaseTag::A1).unwrap()), vec![1.0]);
        assert_eq!(
            rho(&RootSystem::build(CaseTag::A2).unwrap()),
            vec![1.0, 1.0]
        );
        assert_eq!(
            rho(&RootSystem::build(CaseTag::C2).unwrap()),
            vec![2.0, 1.0]
        );
    }

    #[test]
    fn empty_custom_system_has_zero_rho() {
        let rs = RootSystem::custom(&RootData {
            rank: 2,
            gram: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            roots: vec![],
        })
        .unwrap();
        assert_eq!(rho(&rs), vec![0.0, 0.0]);
        assert_eq!(WeylGroup::new(&rs).unwrap().order(), 1);
    }

    #[test]
    fn lattice_small_heights() {
        let a1 = RootSystem::build(CaseTag::A1).unwrap();
        let l = lattice_enum(&a1, 2);
        assert_eq!(
            l.iter().map(|p| p.vector[0]).collect::<Vec<_>>(),
            vec![0.0, 2.0, 4.0]
        );
        let a2 = RootSystem::build(CaseTag::A2).unwrap();
        let l = lattice_enum(&a2, 1);
        assert_eq!(l.len(), 4);
        assert_eq!(l[0].vector, vec![0.0, 0.0]);
        assert!(l[1..].iter().all(|p| p.height == 1));
        assert_eq!(lattice_enum(&a2, 0).len(), 1);
    }

    #[test]
    fn custom_validation_rejects_bad_data() {
        let gram = vec![vec![1.0]];
        let missing_negative = RootData {
            rank: 1,
            gram: gram.clone(),
            roots: vec![RootEntry {
                covector: vec![1.0],
                multiplicity: 1,
                positive: true,
            }],
        };
        assert!(RootSystem::custom(&missing_negative).is_err());
        let degenerate = RootData {
            rank: 1,
            gram: vec![vec![-1.0]],
            roots: vec![],
        };
        assert!(RootSystem::custom(&degenerate).is_err());
        // B2-shaped roots with unequal multiplicities on a single Weyl orbit
        let mut roots = Vec::new();
        for (v, m) in [
            ([1.0, 0.0], 1),
            ([0.0, 1.0], 2),
            ([1.0, 1.0], 1),
            ([1.0, -1.0], 1),
        ] {
            roots.push(RootEntry {
                covector: v.to_vec(),
                multiplicity: m,
                positive: true,
            });
            roots.push(RootEntry {
                covector: v.iter().map(|x| -x).collect(),
                multiplicity: m,
                positive: false,
            });
        }
        let bad = RootData {
            rank: 2,
            gram: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            roots,
        };
        assert!(matches!(
            RootSystem::custom(&bad),
            Err(Error::InvalidRootData(_))
        ));
    }

    #[test]
    fn explosion_guard() {
        let rs = RootSystem::build(CaseTag::C2).unwrap();
        assert!(matches!(
            WeylGroup::with_limit(&rs, 5),
            Err(Error::WeylExplosion { limit: 5 })
        ));
    }
}

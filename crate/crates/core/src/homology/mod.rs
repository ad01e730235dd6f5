//! Reduced integral homology of order complexes.

mod snf;

pub use snf::{invariant_factors, smith_normal_form, SparseMatrix};

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::posetcore::{FinitePoset, PosetError};

/// Default bound on the poset size accepted by [`cohen_macaulay_report`].
pub const DEFAULT_REPORT_LIMIT: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("poset has no unique minimum and maximum")]
    NotBounded,
    #[error("poset of size {size} exceeds the limit {limit}")]
    SizeLimitExceeded { size: usize, limit: usize },
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// A simplicial complex given by its nonempty faces, grouped by dimension;
/// each face is an ascending tuple of vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_labels: Vec<String>,
    faces: Vec<Vec<Vec<u32>>>,
}

impl SimplicialComplex {
    /// Close a list of facets under taking nonempty subsets.
    pub fn from_facets(num_vertices: usize, facets: &[Vec<u32>]) -> Self {
        let mut all = std::collections::BTreeSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            let k = f.len();
            for mask in 1u64..(1 << k) {
                let face: Vec<u32> = (0..k).filter(|&b| mask >> b & 1 == 1).map(|b| f[b]).collect();
                all.insert((face.len(), face));
            }
        }
        let mut faces: Vec<Vec<Vec<u32>>> = Vec::new();
        for (len, face) in all {
            if faces.len() < len {
                faces.resize(len, Vec::new());
            }
            faces[len - 1].push(face);
        }
        Self {
            vertex_labels: (0..num_vertices).map(|v| v.to_string()).collect(),
            faces,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    /// Faces of dimension `d` (with `d + 1` vertices).
    pub fn faces(&self, d: usize) -> &[Vec<u32>] {
        self.faces.get(d).map_or(&[], |f| f.as_slice())
    }

    /// Largest face dimension, or `-1` for the empty complex.
    pub fn dimension(&self) -> isize {
        self.faces.len() as isize - 1
    }

    /// `-1 + Σ_d (-1)^d · #faces(d)`.
    pub fn reduced_euler_characteristic(&self) -> BigInt {
        let mut chi = BigInt::from(-1);
        for (d, f) in self.faces.iter().enumerate() {
            let c = BigInt::from(f.len());
            if d % 2 == 0 {
                chi += c;
            } else {
                chi -= c;
            }
        }
        chi
    }

    /// `∂_d` as a matrix with one row per `d`-face and one column per
    /// `(d-1)`-face; `∂_0` maps every vertex to the empty face.
    pub fn boundary_matrix(&self, d: usize) -> SparseMatrix {
        let rows = self.faces(d);
        if d == 0 {
            let mut m = SparseMatrix::new(rows.len(), 1);
            for r in 0..rows.len() {
                m.push(r, 0, 1);
            }
            return m;
        }
        let lower = self.faces(d - 1);
        let index: HashMap<&[u32], usize> = lower.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
        let mut m = SparseMatrix::new(rows.len(), lower.len());
        let mut buf = Vec::with_capacity(d);
        for (r, face) in rows.iter().enumerate() {
            for k in 0..face.len() {
                buf.clear();
                buf.extend(face.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &v)| v));
                let sign = if k % 2 == 0 { 1 } else { -1 };
                m.push(r, index[buf.as_slice()], sign);
            }
        }
        m
    }
}

/// Which vertices of a poset enter its order complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplexMode {
    /// every element
    Whole,
    /// every element except the minimum and maximum
    Proper,
}

/// The complex of chains of `p` (or of its proper part).
pub fn order_complex(p: &FinitePoset, mode: ComplexMode) -> Result<SimplicialComplex, HomologyError> {
    match mode {
        ComplexMode::Whole => Ok(chain_complex_on(p, p.linear_extension().to_vec())),
        ComplexMode::Proper => {
            let top = p.top().ok_or(HomologyError::NotBounded)?;
            if top == p.bottom() {
                return Ok(chain_complex_on(p, Vec::new()));
            }
            open_interval_complex(p, p.bottom(), top)
        }
    }
}

/// Order complex of the open interval `(a, b)`.
pub fn open_interval_complex(p: &FinitePoset, a: usize, b: usize) -> Result<SimplicialComplex, HomologyError> {
    if !p.leq(a, b) {
        return Err(PosetError::NotComparable {
            a: p.label(a).to_string(),
            b: p.label(b).to_string(),
        }
        .into());
    }
    let vertices: Vec<usize> = p
        .linear_extension()
        .iter()
        .copied()
        .filter(|&c| c != a && c != b && p.leq(a, c) && p.leq(c, b))
        .collect();
    Ok(chain_complex_on(p, vertices))
}

/// Chains among `vertices`, which must be listed along a linear extension so
/// that every chain is an ascending index tuple.
fn chain_complex_on(p: &FinitePoset, vertices: Vec<usize>) -> SimplicialComplex {
    let k = vertices.len();
    let above: Vec<Vec<u32>> = (0..k)
        .map(|i| {
            (i + 1..k)
                .filter(|&j| p.leq(vertices[i], vertices[j]))
                .map(|j| j as u32)
                .collect()
        })
        .collect();
    let mut faces: Vec<Vec<Vec<u32>>> = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    fn extend(above: &[Vec<u32>], stack: &mut Vec<u32>, faces: &mut Vec<Vec<Vec<u32>>>) {
        let d = stack.len() - 1;
        if faces.len() <= d {
            faces.push(Vec::new());
        }
        faces[d].push(stack.clone());
        let last = *stack.last().unwrap() as usize;
        for &next in &above[last] {
            stack.push(next);
            extend(above, stack, faces);
            stack.pop();
        }
    }
    for v in 0..k as u32 {
        stack.push(v);
        extend(&above, &mut stack, &mut faces);
        stack.pop();
    }
    for f in &mut faces {
        f.sort_unstable();
    }
    SimplicialComplex {
        vertex_labels: vertices.iter().map(|&v| p.label(v).to_string()).collect(),
        faces,
    }
}

/// Reduced homology over the integers, degrees `-1 ..= dim`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyResult {
    /// `betti[k]` is the rank in degree `k - 1`
    pub betti: Vec<u64>,
    /// invariant factors greater than one, per degree, same indexing
    #[serde(serialize_with = "decimal_strings")]
    pub torsion: Vec<Vec<BigInt>>,
}

fn decimal_strings<S: serde::Serializer>(t: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    use serde::Serialize;
    let text: Vec<Vec<String>> = t.iter().map(|d| d.iter().map(BigInt::to_string).collect()).collect();
    text.serialize(s)
}

impl HomologyResult {
    pub fn betti(&self, d: isize) -> u64 {
        usize::try_from(d + 1).ok().and_then(|k| self.betti.get(k)).copied().unwrap_or(0)
    }

    pub fn torsion(&self, d: isize) -> &[BigInt] {
        usize::try_from(d + 1)
            .ok()
            .and_then(|k| self.torsion.get(k))
            .map_or(&[], |t| t.as_slice())
    }

    pub fn max_degree(&self) -> isize {
        self.betti.len() as isize - 2
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(|t| t.is_empty())
    }

    /// Nonzero homology (free or torsion) only in degree `d`.
    pub fn is_concentrated_in(&self, d: isize) -> bool {
        (-1..=self.max_degree()).all(|k| k == d || (self.betti(k) == 0 && self.torsion(k).is_empty()))
    }

    /// `Σ_d (-1)^d betti_d`.
    pub fn reduced_euler_characteristic(&self) -> BigInt {
        let mut chi = BigInt::zero();
        for d in -1..=self.max_degree() {
            let b = BigInt::from(self.betti(d));
            if d.rem_euclid(2) == 0 {
                chi += b;
            } else {
                chi -= b;
            }
        }
        chi
    }
}

pub fn reduced_homology(c: &SimplicialComplex) -> HomologyResult {
    let top = c.faces.len();
    // ranks[d] = rank of ∂_d for d in 0..top; ∂_top is zero
    let mut ranks = Vec::with_capacity(top + 1);
    let mut factors = Vec::with_capacity(top + 1);
    for d in 0..top {
        let f = invariant_factors(&c.boundary_matrix(d));
        ranks.push(f.len() as u64);
        factors.push(f);
    }
    ranks.push(0);
    factors.push(Vec::new());
    let mut betti = Vec::with_capacity(top + 1);
    let mut torsion = Vec::with_capacity(top + 1);
    // degree -1: C_{-1} has rank one, no incoming boundary
    betti.push(1 - ranks[0]);
    torsion.push(factors[0].iter().filter(|x| !x.is_one()).cloned().collect());
    for d in 0..top {
        let dim = c.faces[d].len() as u64;
        betti.push(dim - ranks[d] - ranks[d + 1]);
        torsion.push(factors[d + 1].iter().filter(|x| !x.is_one()).cloned().collect());
    }
    HomologyResult { betti, torsion }
}

/// Homology of the open interval `(a, b)`.
pub fn interval_homology(p: &FinitePoset, a: usize, b: usize) -> Result<HomologyResult, HomologyError> {
    Ok(reduced_homology(&open_interval_complex(p, a, b)?))
}

/// One line of a Cohen-Macaulay report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalReport {
    pub bottom: String,
    pub top: String,
    pub rank: usize,
    /// ranks from degree -1 upwards
    pub betti: Vec<String>,
    /// `[degree, factors]` for every degree with torsion
    pub torsion: Vec<(isize, Vec<String>)>,
    pub pass: bool,
}

impl IntervalReport {
    fn new(p: &FinitePoset, a: usize, b: usize, h: &HomologyResult) -> Self {
        let rank = p.rank(b) - p.rank(a);
        let top_degree = rank as isize - 2;
        Self {
            bottom: p.label(a).to_string(),
            top: p.label(b).to_string(),
            rank,
            betti: h.betti.iter().map(|b| b.to_string()).collect(),
            torsion: (-1..=h.max_degree())
                .filter(|&d| !h.torsion(d).is_empty())
                .map(|d| (d, h.torsion(d).iter().map(|t| t.to_string()).collect()))
                .collect(),
            pass: h.is_torsion_free() && h.is_concentrated_in(top_degree),
        }
    }
}

/// Homology check of every interval of rank at least two.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohenMacaulayReport {
    pub intervals: Vec<IntervalReport>,
    pub pass: bool,
}

impl CohenMacaulayReport {
    pub fn violations(&self) -> impl Iterator<Item = &IntervalReport> {
        self.intervals.iter().filter(|r| !r.pass)
    }
}

/// Check torsion-freeness and concentration in degree `rank - 2` for the
/// proper part of every interval `[a, b]` with rank at least two.
pub fn cohen_macaulay_report(p: &FinitePoset, limit: usize) -> Result<CohenMacaulayReport, HomologyError> {
    if p.len() > limit {
        return Err(HomologyError::SizeLimitExceeded { size: p.len(), limit });
    }
    let mut intervals = Vec::new();
    for &a in p.linear_extension() {
        for &b in p.linear_extension() {
            if p.leq(a, b) && p.rank(b) >= p.rank(a) + 2 {
                let h = interval_homology(p, a, b)?;
                intervals.push(IntervalReport::new(p, a, b, &h));
            }
        }
    }
    let pass = intervals.iter().all(|r| r.pass);
    Ok(CohenMacaulayReport { intervals, pass })
}

/// Report for the proper part of a bounded poset.
pub fn bounded_report(p: &FinitePoset) -> Result<(IntervalReport, HomologyResult), HomologyError> {
    let top = p.top().ok_or(HomologyError::NotBounded)?;
    let h = reduced_homology(&order_complex(p, ComplexMode::Proper)?);
    Ok((IntervalReport::new(p, p.bottom(), top, &h), h))
}

//! Small-rough-angle verification and search.
//!
//! A triple `(x, z, y)` with middle vertex `z` satisfies SRA(α) when
//! `d(x,y) <= max{d(x,z) + α d(z,y), α d(x,z) + d(z,y)}`. A set satisfies
//! SRA(α) when every unordered triple passes for all three middle vertices.

mod ramsey;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use ramsey::{
    compute_sra_free_bound, doubling_threshold, ramsey_upper_bound, ChainEntry, DoublingThreshold, RamseyCertificate,
    RamseyValue,
};

use crate::error::{check_index, Error, Result};
use crate::metric::{angle_from_sides, Metric};
use crate::search::TripleHypergraph;

/// Default size cap for exact subset search.
pub const EXACT_SRA_CAP: usize = 40;

/// The SRA parameter α, restricted to `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct SraParameter(f64);

impl SraParameter {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha < 1.0 {
            Ok(Self(alpha))
        } else {
            Err(Error::Parameter(format!("SRA parameter {alpha} must lie in (0, 1)")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Largest comparison angle an SRA(α) triple can have: `π − arccos α`.
    pub fn angle_bound(self) -> f64 {
        PI - self.0.acos()
    }
}

impl TryFrom<f64> for SraParameter {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        Self::new(v)
    }
}

impl From<SraParameter> for f64 {
    fn from(p: SraParameter) -> f64 {
        p.0
    }
}

/// Right-hand side of the SRA inequality for middle vertex `z`.
#[inline]
pub fn sra_rhs(dxz: f64, dzy: f64, alpha: f64) -> f64 {
    (dxz + alpha * dzy).max(alpha * dxz + dzy)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TripleViolation {
    pub x: usize,
    pub z: usize,
    pub y: usize,
    /// `d(x, y)`.
    pub lhs: f64,
    pub rhs: f64,
}

fn triple_check<M: Metric + ?Sized>(space: &M, x: usize, z: usize, y: usize, alpha: f64) -> Option<TripleViolation> {
    let lhs = space.dist(x, y);
    let rhs = sra_rhs(space.dist(x, z), space.dist(z, y), alpha);
    (lhs > rhs + space.tolerance()).then_some(TripleViolation { x, z, y, lhs, rhs })
}

/// Checks one triple with `z` as the middle vertex. `Ok(None)` is a pass.
pub fn check_triple_sra<M: Metric + ?Sized>(
    space: &M,
    x: usize,
    z: usize,
    y: usize,
    alpha: SraParameter,
) -> Result<Option<TripleViolation>> {
    for p in [x, z, y] {
        check_index(p, space.len())?;
    }
    if x == y || x == z || y == z {
        return Err(Error::DegenerateTriple { x, z, y });
    }
    Ok(triple_check(space, x, z, y, alpha.value()))
}

/// First failing middle vertex of the sorted triple `a < b < c`, trying
/// `b`, then `a`, then `c`.
fn first_violation<M: Metric + ?Sized>(space: &M, a: usize, b: usize, c: usize, alpha: f64) -> Option<TripleViolation> {
    triple_check(space, a, b, c, alpha)
        .or_else(|| triple_check(space, b, a, c, alpha))
        .or_else(|| triple_check(space, a, c, b, alpha))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SraReport {
    pub verdict: Verdict,
    pub witness: Option<TripleViolation>,
    pub alpha: f64,
    pub subset: Vec<usize>,
    /// Unordered triples examined (each with all three middle vertices).
    pub checked_triples: usize,
}

impl SraReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn sorted_distinct(space_len: usize, subset: &[usize]) -> Result<Vec<usize>> {
    for &p in subset {
        check_index(p, space_len)?;
    }
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DegenerateTriple { x: w[0], z: w[0], y: w[0] });
    }
    Ok(sorted)
}

/// Verifies SRA(α) on `subset`; the witness is the first failing triple in
/// ascending index order.
pub fn verify_sra_set<M: Metric + ?Sized>(space: &M, subset: &[usize], alpha: SraParameter) -> Result<SraReport> {
    let pts = sorted_distinct(space.len(), subset)?;
    let mut checked = 0;
    for (i, &a) in pts.iter().enumerate() {
        for (j, &b) in pts.iter().enumerate().skip(i + 1) {
            for &c in &pts[j + 1..] {
                checked += 1;
                if let Some(w) = first_violation(space, a, b, c, alpha.value()) {
                    return Ok(SraReport {
                        verdict: Verdict::Fail,
                        witness: Some(w),
                        alpha: alpha.value(),
                        subset: pts,
                        checked_triples: checked,
                    });
                }
            }
        }
    }
    Ok(SraReport { verdict: Verdict::Pass, witness: None, alpha: alpha.value(), subset: pts, checked_triples: checked })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exact,
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SraSubset {
    pub points: Vec<usize>,
    /// `true` only for exact search, where no larger SRA(α) subset exists.
    pub optimal: bool,
    pub violating_triples: usize,
}

/// The 3-uniform hypergraph of triples (indices into `pool`) that fail SRA(α).
pub fn violation_hypergraph<M: Metric + ?Sized>(space: &M, pool: &[usize], alpha: SraParameter) -> TripleHypergraph {
    TripleHypergraph::new(pool.len(), |a, b, c| {
        first_violation(space, pool[a], pool[b], pool[c], alpha.value()).is_some()
    })
}

/// Largest SRA(α) subset, with the default exact-mode cap.
pub fn max_sra_subset<M: Metric + ?Sized>(space: &M, alpha: SraParameter, mode: SearchMode) -> Result<SraSubset> {
    max_sra_subset_within(space, None, alpha, mode, EXACT_SRA_CAP)
}

/// Largest SRA(α) subset of `within` (default: every point).
///
/// Exact mode solves maximum independent set in the violating-triple
/// hypergraph and returns the lexicographically smallest maximum subset.
/// Greedy mode inserts points lowest index first, keeping each insertion
/// that leaves the set SRA(α).
pub fn max_sra_subset_within<M: Metric + ?Sized>(
    space: &M,
    within: Option<&[usize]>,
    alpha: SraParameter,
    mode: SearchMode,
    cap: usize,
) -> Result<SraSubset> {
    let pool = match within {
        Some(w) => sorted_distinct(space.len(), w)?,
        None => (0..space.len()).collect(),
    };
    match mode {
        SearchMode::Exact => {
            let cap = cap.min(crate::search::MAX_BITSET_VERTICES);
            if pool.len() > cap {
                return Err(Error::OverCap { n: pool.len(), cap });
            }
            let h = violation_hypergraph(space, &pool, alpha);
            let points = h.maximum().into_iter().map(|i| pool[i]).collect();
            Ok(SraSubset { points, optimal: true, violating_triples: h.edge_count() })
        }
        SearchMode::Greedy => {
            let mut points: Vec<usize> = Vec::new();
            for &v in &pool {
                let ok = points.iter().enumerate().all(|(i, &a)| {
                    points[i + 1..].iter().all(|&b| first_violation(space, a, b, v, alpha.value()).is_none())
                });
                if ok {
                    points.push(v);
                }
            }
            Ok(SraSubset { points, optimal: false, violating_triples: 0 })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleBoundReport {
    pub verdict: Verdict,
    /// Largest comparison angle over all triples and vertices, if any triple exists.
    pub max_angle: Option<f64>,
    /// `(x, z, y)` attaining `max_angle`, angle measured at `z`.
    pub argmax: Option<(usize, usize, usize)>,
    /// `π − arccos α`.
    pub bound: f64,
    /// `bound − max_angle` (`bound` itself for fewer than three points).
    pub margin: f64,
}

/// Largest comparison angle in `subset` against the SRA(α) angle bound.
pub fn sra_angle_bound<M: Metric + ?Sized>(space: &M, subset: &[usize], alpha: SraParameter) -> Result<AngleBoundReport> {
    let pts = sorted_distinct(space.len(), subset)?;
    let bound = alpha.angle_bound();
    let mut best: Option<(f64, (usize, usize, usize))> = None;
    for (i, &a) in pts.iter().enumerate() {
        for (j, &b) in pts.iter().enumerate().skip(i + 1) {
            for &c in &pts[j + 1..] {
                for (x, z, y) in [(a, b, c), (b, a, c), (a, c, b)] {
                    let (dxz, dzy) = (space.dist(x, z), space.dist(z, y));
                    if dxz <= 0.0 || dzy <= 0.0 {
                        return Err(Error::DegenerateTriple { x, z, y });
                    }
                    let angle = angle_from_sides(dxz, dzy, space.dist(x, y)).radians();
                    if best.is_none_or(|(m, _)| angle > m) {
                        best = Some((angle, (x, z, y)));
                    }
                }
            }
        }
    }
    let margin = best.map_or(bound, |(m, _)| bound - m);
    let verdict = if margin >= -space.tolerance() { Verdict::Pass } else { Verdict::Fail };
    Ok(AngleBoundReport { verdict, max_angle: best.map(|b| b.0), argmax: best.map(|b| b.1), bound, margin })
}

//! Discrete curves in finite or normed spaces.

mod descent;
mod quasiconvex;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use descent::{gradient_descent_trajectory, largest_eigenvalue, DescentSpec, DescentTrajectory, Objective};
pub use quasiconvex::{quasi_convexity_sample, QuasiConvexCounterexample, QuasiConvexReport};

use crate::error::{check_index, Error, Result};
use crate::metric::{Metric, DEFAULT_TOLERANCE};
use crate::sra::{max_sra_subset_within, SearchMode, SraParameter, Verdict, EXACT_SRA_CAP};

/// Absolute tolerance for descent trajectories (accumulated rounding).
pub const DESCENT_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Norm {
    L1,
    L2,
    LInf,
    /// `p`-norm with `p >= 1`.
    P(f64),
}

impl Norm {
    pub fn eval(self, v: impl IntoIterator<Item = f64>) -> f64 {
        let it = v.into_iter().map(f64::abs);
        match self {
            Norm::L1 => it.sum(),
            Norm::L2 => it.map(|c| c * c).sum::<f64>().sqrt(),
            Norm::LInf => it.fold(0.0, f64::max),
            Norm::P(p) => it.map(|c| c.powf(p)).sum::<f64>().powf(1.0 / p),
        }
    }

    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        self.eval(a.iter().zip(b).map(|(x, y)| x - y))
    }
}

impl FromStr for Norm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "l1" => Ok(Norm::L1),
            "l2" => Ok(Norm::L2),
            "linf" => Ok(Norm::LInf),
            other => {
                let p = other
                    .strip_prefix('p')
                    .or_else(|| other.strip_prefix('l'))
                    .map(|rest| rest.trim_start_matches([':', '=']))
                    .and_then(|rest| rest.parse::<f64>().ok())
                    .ok_or_else(|| Error::Parameter(format!("unknown norm tag {s:?}")))?;
                if p >= 1.0 && p.is_finite() {
                    Ok(Norm::P(p))
                } else {
                    Err(Error::Parameter(format!("p-norm needs p >= 1, got {p}")))
                }
            }
        }
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Norm::L1 => f.write_str("l1"),
            Norm::L2 => f.write_str("l2"),
            Norm::LInf => f.write_str("linf"),
            Norm::P(p) => write!(f, "p:{p}"),
        }
    }
}

impl Serialize for Norm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Norm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Points of ℝⁿ with the metric of a chosen norm, evaluated on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct NormedPoints {
    coords: Vec<Vec<f64>>,
    norm: Norm,
    tolerance: f64,
}

impl NormedPoints {
    pub fn new(coords: Vec<Vec<f64>>, norm: Norm) -> Result<Self> {
        if let Some(first) = coords.first() {
            if coords.iter().any(|c| c.len() != first.len()) {
                return Err(Error::Malformed("points have mixed dimensions".into()));
            }
        }
        if coords.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::Malformed("non-finite coordinate".into()));
        }
        Ok(Self { coords, norm, tolerance: DEFAULT_TOLERANCE })
    }

    pub fn coords(&self) -> &[Vec<f64>] {
        &self.coords
    }

    pub fn norm(&self) -> Norm {
        self.norm
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }
}

impl Metric for NormedPoints {
    fn len(&self) -> usize {
        self.coords.len()
    }

    fn dist(&self, i: usize, j: usize) -> f64 {
        self.norm.distance(&self.coords[i], &self.coords[j])
    }

    fn tolerance(&self) -> f64 {
        self.tolerance
    }
}

/// An ordered sequence of point references; the order is the parameter.
/// Consecutive repeats (constant stretches) are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteCurve<M> {
    metric: M,
    order: Vec<usize>,
    tolerance: f64,
}

impl<M: Metric> DiscreteCurve<M> {
    pub fn new(metric: M, order: Vec<usize>) -> Result<Self> {
        for &i in &order {
            check_index(i, metric.len())?;
        }
        let tolerance = metric.tolerance();
        Ok(Self { metric, order, tolerance })
    }

    /// Every point of `metric`, in index order.
    pub fn through_all(metric: M) -> Self {
        let order = (0..metric.len()).collect();
        let tolerance = metric.tolerance();
        Self { metric, order, tolerance }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn metric(&self) -> &M {
        &self.metric
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Distance between the curve points at parameters `s` and `t`.
    #[inline]
    pub fn dist(&self, s: usize, t: usize) -> f64 {
        self.metric.dist(self.order[s], self.order[t])
    }

    /// The curve restricted to the given increasing parameters.
    pub fn subsample(&self, params: &[usize]) -> Result<DiscreteCurve<&M>> {
        if params.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parameter("subsample parameters must increase".into()));
        }
        let order = params
            .iter()
            .map(|&t| self.order.get(t).copied().ok_or(Error::OutOfRange { index: t, len: self.len() }))
            .collect::<Result<Vec<_>>>()?;
        Ok(DiscreteCurve { metric: &self.metric, order, tolerance: self.tolerance })
    }
}

impl DiscreteCurve<NormedPoints> {
    pub fn from_coords(coords: Vec<Vec<f64>>, norm: Norm) -> Result<Self> {
        Ok(Self::through_all(NormedPoints::new(coords, norm)?))
    }
}

/// `d(γ(t₂), γ(t₃)) > d(γ(t₁), γ(t₃))` with `t₁ < t₂ < t₃`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContractionViolation {
    pub t1: usize,
    pub t2: usize,
    pub t3: usize,
    pub far: f64,
    pub near: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelfContractedReport {
    pub verdict: Verdict,
    pub witness: Option<ContractionViolation>,
    pub tolerance: f64,
}

/// Self-contractedness by an O(n²) scan.
///
/// For each target `t₃` the distances `d(γ(t), γ(t₃))`, `t <= t₃`, must never
/// rise more than the tolerance above their running minimum; this is the
/// triple condition exactly, with `t₁` the position of that minimum. The
/// first violation in `(t₃, t₂)` order is reported.
pub fn is_self_contracted<M: Metric>(curve: &DiscreteCurve<M>) -> Result<SelfContractedReport> {
    if curve.is_empty() {
        return Err(Error::Malformed("empty curve".into()));
    }
    let tol = curve.tolerance();
    for t3 in 2..curve.len() {
        let mut min = (curve.dist(0, t3), 0);
        for t2 in 1..t3 {
            let d = curve.dist(t2, t3);
            if d > min.0 + tol {
                return Ok(SelfContractedReport {
                    verdict: Verdict::Fail,
                    witness: Some(ContractionViolation { t1: min.1, t2, t3, far: d, near: min.0 }),
                    tolerance: tol,
                });
            }
            if d < min.0 {
                min = (d, t2);
            }
        }
    }
    Ok(SelfContractedReport { verdict: Verdict::Pass, witness: None, tolerance: tol })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LengthReport {
    pub polygonal_length: f64,
    /// Length up to each parameter; starts at 0, ends at `polygonal_length`.
    pub prefix_lengths: Vec<f64>,
}

/// Polygonal length: the sum of consecutive distances.
pub fn curve_length<M: Metric>(curve: &DiscreteCurve<M>) -> Result<LengthReport> {
    if curve.is_empty() {
        return Err(Error::Malformed("empty curve".into()));
    }
    let mut prefix_lengths = Vec::with_capacity(curve.len());
    let mut total = 0.0;
    prefix_lengths.push(0.0);
    for t in 1..curve.len() {
        total += curve.dist(t - 1, t);
        prefix_lengths.push(total);
    }
    Ok(LengthReport { polygonal_length: total, prefix_lengths })
}

/// Exact searches over the curve image run on windows of this many points.
pub const EXTRACTION_WINDOW: usize = EXACT_SRA_CAP;

/// Looks for `target_size` curve parameters whose image points form an
/// SRA(α) set. Greedy search over the whole image runs first, then exact
/// search on the whole image (short curves) or on overlapping windows of
/// consecutive distinct points. Returns increasing parameters.
pub fn extract_sra_from_curve<M: Metric>(
    curve: &DiscreteCurve<M>,
    alpha: f64,
    target_size: usize,
) -> Result<Option<Vec<usize>>> {
    if !(0.5..1.0).contains(&alpha) {
        return Err(Error::Parameter(format!("alpha {alpha} must lie in [1/2, 1)")));
    }
    let alpha = SraParameter::new(alpha)?;
    if curve.is_empty() {
        return Err(Error::Malformed("empty curve".into()));
    }
    // Distinct image points, first occurrence wins.
    let tol = curve.tolerance();
    let mut params: Vec<usize> = Vec::new();
    for t in 0..curve.len() {
        if params.iter().all(|&s| curve.dist(s, t) > tol) {
            params.push(t);
        }
    }
    if target_size <= 2 {
        return Ok((params.len() >= target_size).then(|| params[..target_size].to_vec()));
    }
    let image = ImageMetric { curve, params: &params };
    let pick = |found: Vec<usize>| -> Vec<usize> { found[..target_size].iter().map(|&i| params[i]).collect() };

    let greedy = max_sra_subset_within(&image, None, alpha, SearchMode::Greedy, 0)?;
    if greedy.points.len() >= target_size {
        return Ok(Some(pick(greedy.points)));
    }
    let n = params.len();
    let step = (EXTRACTION_WINDOW / 2).max(1);
    let mut start = 0;
    loop {
        let end = (start + EXTRACTION_WINDOW).min(n);
        let window: Vec<usize> = (start..end).collect();
        let found = max_sra_subset_within(&image, Some(&window), alpha, SearchMode::Exact, EXTRACTION_WINDOW)?;
        if found.points.len() >= target_size {
            return Ok(Some(pick(found.points)));
        }
        if end == n {
            return Ok(None);
        }
        start += step;
    }
}

struct ImageMetric<'a, M> {
    curve: &'a DiscreteCurve<M>,
    params: &'a [usize],
}

impl<M: Metric> Metric for ImageMetric<'_, M> {
    fn len(&self) -> usize {
        self.params.len()
    }

    fn dist(&self, i: usize, j: usize) -> f64 {
        self.curve.dist(self.params[i], self.params[j])
    }

    fn tolerance(&self) -> f64 {
        self.curve.tolerance()
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::metric::{FiniteMetricSpace, DEFAULT_TOLERANCE};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BroomSequence {
    /// `t_i = 2^{1−i}`.
    Dyadic { n: usize },
    /// `t_i = 1/i`.
    Harmonic { n: usize },
    Explicit { heights: Vec<f64> },
}

impl BroomSequence {
    pub fn heights(&self) -> Vec<f64> {
        match self {
            BroomSequence::Dyadic { n } => (0..*n).map(|i| 0.5f64.powi(i as i32)).collect(),
            BroomSequence::Harmonic { n } => (1..=*n).map(|i| 1.0 / i as f64).collect(),
            BroomSequence::Explicit { heights } => heights.clone(),
        }
    }
}

/// The tree `[0,1] × {0}` with vertical branches `{t_i} × [0, t_i]`, on the
/// points root, branch points and tips.
///
/// Point layout: `0` is the root `(0,0)`, `1..=n` the branch points
/// `(t_i, 0)`, `n+1..=2n` the tips `y_i = (t_i, t_i)`.
#[derive(Debug, Clone)]
pub struct BroomTree {
    heights: Vec<f64>,
    space: FiniteMetricSpace,
}

pub fn broom_tree(sequence: &BroomSequence) -> Result<BroomTree> {
    let heights = sequence.heights();
    if heights.is_empty() {
        return Err(Error::Parameter("broom needs at least one branch".into()));
    }
    if heights.iter().any(|&t| !(t > 0.0 && t <= 1.0)) {
        return Err(Error::Parameter("branch heights must lie in (0, 1]".into()));
    }
    if heights.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::Parameter("branch heights must strictly decrease".into()));
    }
    let n = heights.len();
    // (position on the spine, height above it)
    let coords: Vec<(f64, f64)> = std::iter::once((0.0, 0.0))
        .chain(heights.iter().map(|&t| (t, 0.0)))
        .chain(heights.iter().map(|&t| (t, t)))
        .collect();
    let mut labels = vec!["root".to_string()];
    labels.extend((1..=n).map(|i| format!("b{i}")));
    labels.extend((1..=n).map(|i| format!("y{i}")));
    let smallest = heights[n - 1];
    let tol = DEFAULT_TOLERANCE.min(smallest * 1e-3);
    let space = FiniteMetricSpace::from_fn(labels, tol, |i, j| tree_distance(coords[i], coords[j]))?;
    Ok(BroomTree { heights, space })
}

// Grouped so that tip-to-tip distances come out as exactly `2 max(t_i, t_j)`.
fn tree_distance(a: (f64, f64), b: (f64, f64)) -> f64 {
    let (far, near) = if a.0 >= b.0 { (a, b) } else { (b, a) };
    if far.0 == near.0 {
        return (far.1 - near.1).abs();
    }
    (far.1 + far.0) + (near.1 - near.0)
}

impl BroomTree {
    pub fn heights(&self) -> &[f64] {
        &self.heights
    }

    pub fn branch_count(&self) -> usize {
        self.heights.len()
    }

    pub fn space(&self) -> &FiniteMetricSpace {
        &self.space
    }

    pub fn into_space(self) -> FiniteMetricSpace {
        self.space
    }

    pub fn root(&self) -> usize {
        0
    }

    /// Point index of branch point `i` (1-based).
    pub fn branch_point(&self, i: usize) -> usize {
        i
    }

    /// Point index of tip `y_i` (1-based).
    pub fn tip(&self, i: usize) -> usize {
        self.heights.len() + i
    }

    pub fn tips(&self) -> Vec<usize> {
        (1..=self.heights.len()).map(|i| self.tip(i)).collect()
    }

    /// The same points as a tree graph; spine edges run root → b_n → … → b_1.
    pub fn graph(&self) -> Result<WeightedGraph> {
        let n = self.heights.len();
        let mut edges = Vec::with_capacity(2 * n);
        let mut prev = (self.root(), 0.0);
        for i in (1..=n).rev() {
            let t = self.heights[i - 1];
            edges.push((prev.0, i, t - prev.1));
            prev = (i, t);
        }
        for i in 1..=n {
            edges.push((i, self.tip(i), self.heights[i - 1]));
        }
        WeightedGraph::new(self.space.labels().to_vec(), edges)
    }
}

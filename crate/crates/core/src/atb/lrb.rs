use serde::{Deserialize, Serialize};

use crate::error::{check_index, Error, Result};
use crate::graph::GeodesicSet;
use crate::metric::{FiniteMetricSpace, Metric};

/// Uniform `t` samples per pair, on top of the vertex breakpoints.
pub const LRB_GRID: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LrbEstimate {
    pub center: usize,
    pub horizon: f64,
    /// Smallest `K >= 1` satisfying every sampled inequality.
    pub k: f64,
    /// Geodesic pairs tested.
    pub samples: usize,
    /// `(start, end_1, end_2, t)` attaining `k`, if any pair exceeded 1.
    pub worst: Option<(usize, usize, usize, f64)>,
}

/// A point inside an edge: `offset` from `from` towards `to`.
#[derive(Debug, Clone, Copy)]
struct EdgePoint {
    from: usize,
    to: usize,
    offset: f64,
    len: f64,
}

struct Walk<'a> {
    vertices: &'a [usize],
    arc: Vec<f64>,
}

impl<'a> Walk<'a> {
    fn new(vertices: &'a [usize], space: &FiniteMetricSpace) -> Self {
        let mut arc = vec![0.0];
        for w in vertices.windows(2) {
            arc.push(arc.last().unwrap() + space.dist(w[0], w[1]));
        }
        Self { vertices, arc }
    }

    fn length(&self) -> f64 {
        *self.arc.last().unwrap()
    }

    fn at(&self, s: f64) -> EdgePoint {
        if self.vertices.len() == 1 {
            let v = self.vertices[0];
            return EdgePoint { from: v, to: v, offset: 0.0, len: 0.0 };
        }
        let k = self.arc.partition_point(|&a| a <= s).clamp(1, self.arc.len() - 1) - 1;
        let len = self.arc[k + 1] - self.arc[k];
        EdgePoint { from: self.vertices[k], to: self.vertices[k + 1], offset: (s - self.arc[k]).clamp(0.0, len), len }
    }
}

fn edge_point_distance(space: &FiniteMetricSpace, a: EdgePoint, b: EdgePoint) -> f64 {
    let a_ends = [(a.from, a.offset), (a.to, a.len - a.offset)];
    let b_ends = [(b.from, b.offset), (b.to, b.len - b.offset)];
    let mut best = f64::INFINITY;
    for &(u, du) in &a_ends {
        for &(w, dw) in &b_ends {
            best = best.min(du + space.dist(u, w) + dw);
        }
    }
    if a.from == b.from && a.to == b.to {
        best = best.min((a.offset - b.offset).abs());
    } else if a.from == b.to && a.to == b.from {
        best = best.min((a.offset - (b.len - b.offset)).abs());
    }
    best
}

/// Empirical linear-divergence constant at `p`.
///
/// For every start `o` and ends `a`, `b` whose chosen geodesics stay in the
/// closed ball `B_H(p)`, evaluates
/// `d(γ₁(t L₁), γ₂(t L₂)) <= K t d(a, b)` on a uniform grid of `t_samples`
/// values plus every `t` where either path passes a vertex, and returns the
/// smallest `K >= 1` that satisfies all of them.
pub fn lrb_constant_estimate(geodesics: &GeodesicSet, p: usize, horizon: f64, t_samples: usize) -> Result<LrbEstimate> {
    let space = geodesics.space();
    let graph = geodesics.graph();
    check_index(p, space.len())?;
    if !(horizon > 0.0) {
        return Err(Error::Parameter(format!("horizon {horizon} must be positive")));
    }
    let tol = space.tolerance();
    let dp = space.row(p);
    let inside: Vec<usize> = (0..space.len()).filter(|&v| dp[v] <= horizon + tol).collect();
    // The farthest point of edge (u, w) from p sits at (d_u + d_w + len) / 2.
    let walk_inside = |path: &[usize]| {
        path.windows(2).all(|w| {
            let len = graph.edge_length(w[0], w[1]).unwrap_or(f64::INFINITY);
            (dp[w[0]] + dp[w[1]] + len) / 2.0 <= horizon + tol
        }) && path.iter().all(|&v| dp[v] <= horizon + tol)
    };

    let mut k = 1.0f64;
    let mut worst = None;
    let mut samples = 0;
    for &o in &inside {
        let walks: Vec<(usize, Walk)> = inside
            .iter()
            .filter(|&&a| a != o)
            .map(|&a| geodesics.path(o, a).map(|path| (a, path)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|(_, path)| walk_inside(path))
            .map(|(a, path)| (a, Walk::new(path, space)))
            .collect();
        for (i, (a, wa)) in walks.iter().enumerate() {
            for (b, wb) in &walks[i + 1..] {
                samples += 1;
                let ends = space.dist(*a, *b);
                let mut ts: Vec<f64> = (1..=t_samples).map(|j| j as f64 / t_samples as f64).collect();
                ts.extend(wa.arc[1..].iter().map(|s| s / wa.length()));
                ts.extend(wb.arc[1..].iter().map(|s| s / wb.length()));
                for t in ts {
                    let gap = edge_point_distance(space, wa.at(t * wa.length()), wb.at(t * wb.length()));
                    let ratio = if ends > 0.0 {
                        (gap - tol).max(0.0) / (t * ends)
                    } else if gap > tol {
                        f64::INFINITY
                    } else {
                        0.0
                    };
                    if ratio > k {
                        k = ratio;
                        worst = Some((o, *a, *b, t));
                    }
                }
            }
        }
    }
    if samples == 0 {
        return Err(Error::NoGeodesicPairs { horizon });
    }
    Ok(LrbEstimate { center: p, horizon, k, samples, worst })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;

    fn geodesics(n: usize, edges: Vec<(usize, usize, f64)>) -> GeodesicSet {
        GeodesicSet::lexicographic(WeightedGraph::new((0..n).map(|i| i.to_string()).collect(), edges).unwrap()).unwrap()
    }

    #[test]
    fn path_graph_has_unit_constant() {
        let g = geodesics(4, vec![(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]);
        let est = lrb_constant_estimate(&g, 0, 3.0, LRB_GRID).unwrap();
        assert_eq!(est.k, 1.0);
        assert!(est.samples > 0);
    }

    #[test]
    fn tripod_has_unit_constant() {
        let g = geodesics(4, vec![(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]);
        let est = lrb_constant_estimate(&g, 0, 1.0, LRB_GRID).unwrap();
        assert!((est.k - 1.0).abs() < 1e-12, "{est:?}");
    }

    #[test]
    fn square_cycle_diverges() {
        // On a 4-cycle, geodesics from 0 to 1 and to 3 split at once.
        let g = geodesics(4, vec![(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)]);
        let est = lrb_constant_estimate(&g, 0, 2.0, LRB_GRID).unwrap();
        assert!(est.k >= 1.0);
    }

    #[test]
    fn tiny_horizon_has_no_pairs() {
        let g = geodesics(2, vec![(0, 1, 1.0)]);
        assert!(matches!(lrb_constant_estimate(&g, 0, 0.5, LRB_GRID), Err(Error::NoGeodesicPairs { .. })));
    }
}

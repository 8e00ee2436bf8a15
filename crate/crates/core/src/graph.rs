//! Weighted undirected graphs inducing finite metric spaces, plus the
//! deterministic choice of one shortest path per ordered vertex pair.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{check_index, Error, Result};
use crate::metric::{FiniteMetricSpace, Metric, DEFAULT_TOLERANCE};

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    labels: Vec<String>,
    edges: Vec<(usize, usize, f64)>,
    adjacency: Vec<Vec<(usize, f64)>>,
    uniform_length: Option<f64>,
}

impl WeightedGraph {
    pub fn new(labels: Vec<String>, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        let n = labels.len();
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b, len) in &edges {
            check_index(a, n)?;
            check_index(b, n)?;
            if a == b {
                return Err(Error::Malformed(format!("self-loop at vertex {a}")));
            }
            if !(len > 0.0 && len.is_finite()) {
                return Err(Error::Malformed(format!("edge ({a}, {b}) has length {len}")));
            }
            adjacency[a].push((b, len));
            adjacency[b].push((a, len));
        }
        for adj in &mut adjacency {
            adj.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.total_cmp(&y.1)));
        }
        let uniform_length = match edges.first() {
            Some(&(_, _, l)) if edges.iter().all(|e| e.2 == l) => Some(l),
            _ => None,
        };
        Ok(Self { labels, edges, adjacency, uniform_length })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    /// Neighbors of `v` in ascending index order, with edge lengths.
    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adjacency[v]
    }

    /// Length of the shortest edge joining `a` and `b`, if adjacent.
    pub fn edge_length(&self, a: usize, b: usize) -> Option<f64> {
        self.adjacency[a].iter().filter(|e| e.0 == b).map(|e| e.1).reduce(f64::min)
    }

    /// Single-source shortest-path distances; unreachable vertices are `inf`.
    ///
    /// Graphs whose edges all share one length are searched breadth-first and
    /// scaled, which keeps distances exact multiples of the edge length.
    pub fn distances_from(&self, source: usize) -> Vec<f64> {
        match self.uniform_length {
            Some(len) => self.hops_from(source).into_iter().map(|h| h.map_or(f64::INFINITY, |h| h as f64 * len)).collect(),
            None => self.dijkstra(source),
        }
    }

    /// Breadth-first hop counts from `source`.
    pub fn hops_from(&self, source: usize) -> Vec<Option<u32>> {
        let mut hops = vec![None; self.vertex_count()];
        hops[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let h = hops[v].unwrap() + 1;
            for &(w, _) in &self.adjacency[v] {
                if hops[w].is_none() {
                    hops[w] = Some(h);
                    queue.push_back(w);
                }
            }
        }
        hops
    }

    fn dijkstra(&self, source: usize) -> Vec<f64> {
        #[derive(PartialEq)]
        struct Entry(f64, usize);
        impl Eq for Entry {}
        impl PartialOrd for Entry {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }
        impl Ord for Entry {
            fn cmp(&self, other: &Self) -> Ordering {
                other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
            }
        }
        let mut dist = vec![f64::INFINITY; self.vertex_count()];
        dist[source] = 0.0;
        let mut heap = BinaryHeap::from([Entry(0.0, source)]);
        while let Some(Entry(d, v)) = heap.pop() {
            if d > dist[v] {
                continue;
            }
            for &(w, len) in &self.adjacency[v] {
                let nd = d + len;
                if nd < dist[w] {
                    dist[w] = nd;
                    heap.push(Entry(nd, w));
                }
            }
        }
        dist
    }

    /// All-pairs distances, one search per source vertex (in parallel).
    pub fn all_pairs(&self) -> Vec<Vec<f64>> {
        (0..self.vertex_count()).into_par_iter().map(|s| self.distances_from(s)).collect()
    }

    /// The induced shortest-path metric. Errors on a disconnected graph.
    pub fn to_space(&self, tolerance: f64) -> Result<FiniteMetricSpace> {
        let rows = self.all_pairs();
        if rows.iter().flatten().any(|d| d.is_infinite()) {
            return Err(Error::Malformed("graph is disconnected".into()));
        }
        FiniteMetricSpace::new(self.labels.clone(), rows, tolerance)
    }

    /// The shortest-path metric restricted to `points` (one search per point).
    pub fn subspace(&self, points: &[usize], tolerance: f64) -> Result<FiniteMetricSpace> {
        for &p in points {
            check_index(p, self.vertex_count())?;
        }
        let rows: Vec<Vec<f64>> = points.par_iter().map(|&p| self.distances_from(p)).collect();
        let labels = points.iter().map(|&p| self.labels[p].clone()).collect();
        FiniteMetricSpace::from_fn(labels, tolerance, |i, j| rows[i][points[j]])
    }

    /// Lexicographically smallest shortest vertex path from `from` to `to`,
    /// given distances to `to` from every vertex.
    pub fn lex_shortest_path(&self, from: usize, to: usize, dist_to: &[f64]) -> Option<Vec<usize>> {
        if dist_to[from].is_infinite() {
            return None;
        }
        let mut path = vec![from];
        let mut cur = from;
        while cur != to {
            let slack = 1e-9 * dist_to[cur].max(1.0);
            let next = self.adjacency[cur]
                .iter()
                .find(|&&(w, len)| dist_to[w] < dist_to[cur] && (len + dist_to[w] - dist_to[cur]).abs() <= slack)?;
            cur = next.0;
            path.push(cur);
        }
        Some(path)
    }
}

/// Graph JSON: `{"vertices": [...], "edges": [[i, j, length], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphDocument {
    pub vertices: Vec<Value>,
    pub edges: Vec<(usize, usize, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Value>,
}

impl GraphDocument {
    pub fn from_graph(graph: &WeightedGraph, metadata: Option<Value>) -> Self {
        Self {
            vertices: graph.labels.iter().cloned().map(Value::String).collect(),
            edges: graph.edges.clone(),
            metadata,
        }
    }

    pub fn to_graph(&self) -> Result<WeightedGraph> {
        let labels = self
            .vertices
            .iter()
            .map(|v| match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            })
            .collect();
        WeightedGraph::new(labels, self.edges.clone())
    }

    pub fn named_points(&self, name: &str) -> Option<Vec<usize>> {
        let list = self.metadata.as_ref()?.get("points")?.get(name)?.as_array()?;
        list.iter().map(|v| v.as_u64().map(|u| u as usize)).collect()
    }
}

/// A quasi-bicombing on a graph: one shortest vertex path per ordered pair.
///
/// The default selection is the lexicographically smallest shortest path
/// under the vertex ordering.
#[derive(Debug, Clone)]
pub struct GeodesicSet {
    graph: WeightedGraph,
    space: FiniteMetricSpace,
    paths: Vec<Option<Vec<usize>>>,
}

impl GeodesicSet {
    pub fn lexicographic(graph: WeightedGraph) -> Result<Self> {
        let space = graph.to_space(DEFAULT_TOLERANCE)?;
        let n = graph.vertex_count();
        let paths = (0..n * n)
            .into_par_iter()
            .map(|k| {
                let (u, v) = (k / n, k % n);
                graph.lex_shortest_path(u, v, space.row(v))
            })
            .collect();
        Ok(Self { graph, space, paths })
    }

    /// Uses caller-chosen paths; each must be a walk along edges whose length
    /// matches the distance between its endpoints.
    pub fn from_paths(graph: WeightedGraph, chosen: Vec<Vec<usize>>) -> Result<Self> {
        let space = graph.to_space(DEFAULT_TOLERANCE)?;
        let n = graph.vertex_count();
        let mut paths = vec![None; n * n];
        for path in chosen {
            let (Some(&a), Some(&b)) = (path.first(), path.last()) else {
                return Err(Error::Malformed("empty geodesic".into()));
            };
            let mut len = 0.0;
            for w in path.windows(2) {
                len += graph
                    .edge_length(w[0], w[1])
                    .ok_or_else(|| Error::Malformed(format!("({}, {}) is not an edge", w[0], w[1])))?;
            }
            if (len - space.dist(a, b)).abs() > 1e-9 * len.max(1.0) {
                return Err(Error::Malformed(format!("path from {a} to {b} has length {len}, not minimal")));
            }
            paths[a * n + b] = Some(path);
        }
        Ok(Self { graph, space, paths })
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn space(&self) -> &FiniteMetricSpace {
        &self.space
    }

    pub fn path(&self, from: usize, to: usize) -> Result<&[usize]> {
        let n = self.graph.vertex_count();
        check_index(from, n)?;
        check_index(to, n)?;
        self.paths[from * n + to].as_deref().ok_or(Error::MissingGeodesic { from, to })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn square_with_diagonal_weights() {
        // 0-1-2-3-0 cycle with unit edges plus a long chord 0-2.
        let g = WeightedGraph::new(labels(4), vec![(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0), (0, 2, 3.0)]).unwrap();
        let d = g.all_pairs();
        assert_eq!(d[0][2], 2.0);
        let set = GeodesicSet::lexicographic(g).unwrap();
        assert_eq!(set.path(0, 2).unwrap(), &[0, 1, 2]);
        assert_eq!(set.path(2, 0).unwrap(), &[2, 1, 0]);
        assert_eq!(set.path(3, 3).unwrap(), &[3]);
    }

    #[test]
    fn uniform_graph_uses_exact_multiples() {
        let len = 0.25f64.powi(6);
        let g = WeightedGraph::new(labels(3), vec![(0, 1, len), (1, 2, len)]).unwrap();
        assert_eq!(g.distances_from(0)[2], 2.0 * len);
    }

    #[test]
    fn user_paths_are_checked() {
        let g = WeightedGraph::new(labels(3), vec![(0, 1, 1.0), (1, 2, 1.0), (0, 2, 5.0)]).unwrap();
        assert!(GeodesicSet::from_paths(g.clone(), vec![vec![0, 2]]).is_err());
        let set = GeodesicSet::from_paths(g, vec![vec![0, 1, 2]]).unwrap();
        assert!(matches!(set.path(2, 0), Err(Error::MissingGeodesic { from: 2, to: 0 })));
    }

    #[test]
    fn disconnected_graph_has_no_space() {
        let g = WeightedGraph::new(labels(3), vec![(0, 1, 1.0)]).unwrap();
        assert!(g.to_space(1e-9).is_err());
    }

    #[test]
    fn graph_document_round_trip() {
        let doc: GraphDocument = serde_json::from_str(r#"{"vertices": ["p", 1, "b"], "edges": [[0, 1, 1.0], [1, 2, 2.5]]}"#).unwrap();
        let g = doc.to_graph().unwrap();
        assert_eq!(g.labels(), &["p".to_string(), "1".to_string(), "b".to_string()]);
        assert_eq!(g.distances_from(0)[2], 3.5);
    }
}

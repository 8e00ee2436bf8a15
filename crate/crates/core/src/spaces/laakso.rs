use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

pub const LAAKSO_DEFAULT_CAP: u32 = 6;
pub const LAAKSO_MAX_LEVEL: u32 = 8;

/// The level-`N` graph: `6^N` edges of length `4^{−N}` oriented away from
/// the root.
#[derive(Debug, Clone)]
pub struct LaaksoGraph {
    level: u32,
    graph: WeightedGraph,
    /// Outgoing neighbours of each vertex, left first.
    outgoing: Vec<Vec<usize>>,
}

// Junction slots of one level: root, end, bottom junction, top junction,
// left midpoint, right midpoint.
const ROOT: usize = 0;
const END: usize = 1;
const LOW: usize = 2;
const HIGH: usize = 3;
const LEFT_MID: usize = 4;
const RIGHT_MID: usize = 5;

// Copies in edge order: bottom, left chain, right chain, top.
const COPIES: [(usize, usize); 6] =
    [(ROOT, LOW), (LOW, LEFT_MID), (LEFT_MID, HIGH), (LOW, RIGHT_MID), (RIGHT_MID, HIGH), (HIGH, END)];

/// Builds `G_N` for `N <= cap` (`cap <= 8`).
pub fn laakso_graph(level: u32, cap: u32) -> Result<LaaksoGraph> {
    let cap = cap.min(LAAKSO_MAX_LEVEL);
    if level > cap {
        return Err(Error::Parameter(format!("level {level} exceeds the cap {cap}")));
    }
    // Oriented edges of G_k with vertex 0 the root and vertex 1 the end.
    let mut vertices = 2usize;
    let mut edges: Vec<(usize, usize)> = vec![(0, 1)];
    for _ in 0..level {
        let mut next_edges = Vec::with_capacity(edges.len() * 6);
        let mut next = 6usize;
        let mut map = vec![0usize; vertices];
        for (s, t) in COPIES {
            map[0] = s;
            map[1] = t;
            for slot in map.iter_mut().skip(2) {
                *slot = next;
                next += 1;
            }
            next_edges.extend(edges.iter().map(|&(a, b)| (map[a], map[b])));
        }
        vertices = next;
        edges = next_edges;
    }
    let length = 0.25f64.powi(level as i32);
    let mut outgoing = vec![Vec::new(); vertices];
    for &(a, b) in &edges {
        outgoing[a].push(b);
    }
    let labels = (0..vertices).map(|v| format!("v{v}")).collect();
    let graph = WeightedGraph::new(labels, edges.iter().map(|&(a, b)| (a, b, length)).collect())?;
    Ok(LaaksoGraph { level, graph, outgoing })
}

impl LaaksoGraph {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn into_graph(self) -> WeightedGraph {
        self.graph
    }

    pub fn root(&self) -> usize {
        ROOT
    }

    pub fn edge_length(&self) -> f64 {
        0.25f64.powi(self.level as i32)
    }

    /// Outgoing neighbours of `v` as `(left, right)`; equal when there is
    /// no branching, `None` at the end vertex.
    pub fn orientation(&self, v: usize) -> Option<(usize, usize)> {
        let out = self.outgoing.get(v)?;
        Some((*out.first()?, *out.last()?))
    }

    /// Walks `steps` edges from `from`, taking the left (or right) branch
    /// wherever there is a choice.
    pub fn walk(&self, from: usize, steps: u64, keep_left: bool) -> Option<usize> {
        let mut cur = from;
        for _ in 0..steps {
            let (l, r) = self.orientation(cur)?;
            cur = if keep_left { l } else { r };
        }
        Some(cur)
    }

    /// Largest eccentricity, one breadth-first search per vertex.
    pub fn diameter(&self) -> f64 {
        use rayon::prelude::*;
        (0..self.graph.vertex_count())
            .into_par_iter()
            .map(|s| self.graph.distances_from(s).into_iter().fold(0.0, f64::max))
            .reduce(|| 0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaaksoPoints {
    /// `x_1, …, x_n` as graph vertices.
    pub x: Vec<usize>,
    /// The anchors `y_1, …, y_n` on the left-most geodesic from the root.
    pub y: Vec<usize>,
}

/// `y_i` sits at arc length `1/4 + … + 1/4^i` along the path from the root
/// that never turns right; `x_i` is reached from `y_i` by `4^{−i}` of path
/// that never turns left.
pub fn laakso_sra_points(graph: &LaaksoGraph, n: u32) -> Result<LaaksoPoints> {
    let level = graph.level;
    if n == 0 || n > level {
        return Err(Error::Parameter(format!("need 1 <= n <= {level}, got {n}")));
    }
    let hops = |i: u32| 4u64.pow(level - i);
    let mut x = Vec::with_capacity(n as usize);
    let mut y = Vec::with_capacity(n as usize);
    let mut anchor = graph.root();
    for i in 1..=n {
        anchor = graph.walk(anchor, hops(i), true).expect("anchor inside the graph");
        y.push(anchor);
        x.push(graph.walk(anchor, hops(i), false).expect("point inside the graph"));
    }
    Ok(LaaksoPoints { x, y })
}

/// `d(x_i, x_k) = 4^{−i} + Σ_{m=i+1}^{k} 4^{−m} + 4^{−k}` for `1 <= i < k`.
pub fn laakso_closed_form(i: u32, k: u32) -> f64 {
    let (i, k) = (i.min(k), i.max(k));
    if i == k {
        return 0.0;
    }
    let q = |m: u32| 0.25f64.powi(m as i32);
    q(i) + (i + 1..=k).map(q).sum::<f64>() + q(k)
}

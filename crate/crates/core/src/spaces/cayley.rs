use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Maximum number of group elements a breadth-first search may visit.
pub const BFS_BUDGET: usize = 4_000_000;

/// Word-metric distances from the identity of `ℤⁿ` for a symmetric
/// generating set, over the ball of a given radius.
#[derive(Debug, Clone)]
pub struct WordMetricBall {
    generators: Vec<Vec<i64>>,
    radius: u32,
    distances: HashMap<Vec<i64>, u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubadditivityWitness {
    pub g: Vec<i64>,
    pub h: Vec<i64>,
    pub d_g: u32,
    pub d_h: u32,
    pub d_sum: u32,
}

fn check_generators(generators: &[Vec<i64>]) -> Result<usize> {
    let dimension = generators.first().map(Vec::len).unwrap_or(0);
    if dimension == 0 || generators.iter().any(|g| g.len() != dimension) {
        return Err(Error::Malformed("generators must be nonempty vectors of one dimension".into()));
    }
    if generators.iter().any(|g| g.iter().all(|&c| c == 0)) {
        return Err(Error::Parameter("the identity is not a generator".into()));
    }
    for g in generators {
        let inverse: Vec<i64> = g.iter().map(|c| -c).collect();
        if !generators.contains(&inverse) {
            return Err(Error::Parameter(format!("generator set is not symmetric: {g:?} has no inverse")));
        }
    }
    if !generates_lattice(generators, dimension) {
        return Err(Error::Parameter("generators do not generate the whole lattice".into()));
    }
    Ok(dimension)
}

/// Integer row echelon form; the rows generate `ℤⁿ` exactly when there are
/// `n` pivots and each is `±1`.
fn generates_lattice(generators: &[Vec<i64>], dimension: usize) -> bool {
    let mut rows: Vec<Vec<i128>> = generators.iter().map(|g| g.iter().map(|&c| c as i128).collect()).collect();
    let mut top = 0;
    for col in 0..dimension {
        loop {
            let pivot = (top..rows.len()).filter(|&r| rows[r][col] != 0).min_by_key(|&r| rows[r][col].abs());
            let Some(p) = pivot else { return false };
            rows.swap(top, p);
            let mut done = true;
            for r in top + 1..rows.len() {
                let q = rows[r][col] / rows[top][col];
                if q != 0 {
                    for c in col..dimension {
                        rows[r][c] -= q * rows[top][c];
                    }
                }
                done &= rows[r][col] == 0;
            }
            if done {
                break;
            }
        }
        if rows[top][col].abs() != 1 {
            return false;
        }
        top += 1;
    }
    true
}

fn neighbours<'a>(v: &'a [i64], generators: &'a [Vec<i64>]) -> impl Iterator<Item = Vec<i64>> + 'a {
    generators.iter().map(move |g| v.iter().zip(g).map(|(a, b)| a + b).collect())
}

pub fn cayley_ball(generators: &[Vec<i64>], radius: u32) -> Result<WordMetricBall> {
    let dimension = check_generators(generators)?;
    let origin = vec![0i64; dimension];
    let mut distances = HashMap::from([(origin.clone(), 0u32)]);
    let mut frontier = vec![origin];
    for layer in 1..=radius {
        let mut next = Vec::new();
        for v in &frontier {
            for w in neighbours(v, generators) {
                if !distances.contains_key(&w) {
                    distances.insert(w.clone(), layer);
                    next.push(w);
                }
            }
        }
        if distances.len() > BFS_BUDGET {
            return Err(Error::Budget(format!("ball of radius {radius} exceeds {BFS_BUDGET} elements")));
        }
        frontier = next;
    }
    Ok(WordMetricBall { generators: generators.to_vec(), radius, distances })
}

impl WordMetricBall {
    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.distances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distances.is_empty()
    }

    /// Word length of `g`, if `g` lies in the ball.
    pub fn distance(&self, g: &[i64]) -> Option<u32> {
        self.distances.get(g).copied()
    }

    /// Ball elements sorted by (distance, coordinates).
    pub fn elements(&self) -> Vec<(Vec<i64>, u32)> {
        let mut out: Vec<_> = self.distances.iter().map(|(k, &v)| (k.clone(), v)).collect();
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        out
    }

    /// First pair `(g, h)` in the ball with `g + h` in the ball and
    /// `d(e, g+h) > d(e, g) + d(e, h)`.
    pub fn subadditivity_violation(&self) -> Option<SubadditivityWitness> {
        let elements = self.elements();
        for (g, d_g) in &elements {
            for (h, d_h) in &elements {
                let sum: Vec<i64> = g.iter().zip(h).map(|(a, b)| a + b).collect();
                if let Some(d_sum) = self.distance(&sum) {
                    if d_sum > d_g + d_h {
                        return Some(SubadditivityWitness { g: g.clone(), h: h.clone(), d_g: *d_g, d_h: *d_h, d_sum });
                    }
                }
            }
        }
        None
    }
}

/// `f(k) = d(e, k·g)` for `k = 1..=k_max` and the resulting estimate of
/// `lim f(k)/k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StableNormEstimate {
    pub element: Vec<i64>,
    pub k_max: u32,
    /// `values[k − 1] = f(k)`.
    pub values: Vec<u32>,
    /// `min_k f(k)/k`. Since `f` is subadditive the limit equals the
    /// infimum over all `k`, so this is the best available value.
    pub estimate: f64,
    /// `min_k f(k)/k`.
    pub lower: f64,
    /// `f(k_max)/k_max`.
    pub upper: f64,
    pub bracket_width: f64,
    /// `max_k (f(k) − k·estimate)`, the measured additive constant.
    pub two_c: f64,
    /// `f(i + j) <= f(i) + f(j)` for all tested `i + j <= k_max`.
    pub subadditive: bool,
    pub explored: usize,
}

/// Breadth-first search from the identity until every `k·g`, `k <= k_max`,
/// has been reached, visiting at most `budget` elements.
pub fn stable_norm_estimate(generators: &[Vec<i64>], g: &[i64], k_max: u32, budget: usize) -> Result<StableNormEstimate> {
    let dimension = check_generators(generators)?;
    if g.len() != dimension {
        return Err(Error::Malformed(format!("element has dimension {}, generators {dimension}", g.len())));
    }
    if g.iter().all(|&c| c == 0) || k_max == 0 {
        return Err(Error::Parameter("need a nonidentity element and k_max >= 1".into()));
    }
    let targets: HashMap<Vec<i64>, usize> =
        (1..=k_max as i64).map(|k| (g.iter().map(|c| c * k).collect(), k as usize - 1)).collect();
    let mut values = vec![u32::MAX; k_max as usize];
    let mut remaining = targets.len();
    let origin = vec![0i64; dimension];
    let mut seen = std::collections::HashSet::from([origin.clone()]);
    let mut frontier = vec![origin];
    let mut layer = 0u32;
    while remaining > 0 {
        layer += 1;
        let mut next = Vec::new();
        for v in &frontier {
            for w in neighbours(v, generators) {
                if seen.insert(w.clone()) {
                    if let Some(&k) = targets.get(&w) {
                        values[k] = layer;
                        remaining -= 1;
                    }
                    next.push(w);
                }
            }
        }
        if seen.len() > budget {
            return Err(Error::Budget(format!("reaching {k_max}·g needs more than {budget} group elements")));
        }
        frontier = next;
    }
    let ratio = |k: usize| values[k] as f64 / (k + 1) as f64;
    let lower = (0..values.len()).map(ratio).fold(f64::INFINITY, f64::min);
    let upper = ratio(values.len() - 1);
    let two_c = (0..values.len()).map(|k| values[k] as f64 - (k + 1) as f64 * lower).fold(0.0, f64::max);
    let n = values.len();
    let subadditive = (1..=n).all(|i| (1..=n - i).all(|j| values[i + j - 1] <= values[i - 1] + values[j - 1]));
    Ok(StableNormEstimate {
        element: g.to_vec(),
        k_max,
        values,
        estimate: lower,
        lower,
        upper,
        bracket_width: upper - lower,
        two_c,
        subadditive,
        explored: seen.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn standard() -> Vec<Vec<i64>> {
        vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]
    }

    fn skew() -> Vec<Vec<i64>> {
        vec![vec![1, 0], vec![-1, 0], vec![1, 1], vec![-1, -1]]
    }

    #[test]
    fn ball_distances() {
        let ball = cayley_ball(&standard(), 5).unwrap();
        assert_eq!(ball.distance(&[2, 3]), Some(5));
        assert_eq!(ball.distance(&[3, 3]), None);
        assert_eq!(ball.len(), 61);
        assert_eq!(cayley_ball(&skew(), 6).unwrap().distance(&[0, 1]), Some(2));
    }

    #[test]
    fn ball_is_symmetric_and_subadditive() {
        let ball = cayley_ball(&skew(), 6).unwrap();
        for (g, d) in ball.elements() {
            let inv: Vec<i64> = g.iter().map(|c| -c).collect();
            assert_eq!(ball.distance(&inv), Some(d));
        }
        assert_eq!(ball.subadditivity_violation(), None);
    }

    #[test]
    fn bad_generator_sets() {
        assert!(cayley_ball(&[vec![1, 0], vec![0, 1], vec![0, -1]], 2).is_err());
        assert!(cayley_ball(&[vec![2, 0], vec![-2, 0], vec![0, 1], vec![0, -1]], 2).is_err());
        assert!(cayley_ball(&[vec![1, 1], vec![-1, -1]], 2).is_err());
        assert!(cayley_ball(&[vec![2, 1], vec![-2, -1], vec![3, 1], vec![-3, -1]], 2).is_ok());
    }

    #[test]
    fn stable_norms() {
        let e = stable_norm_estimate(&standard(), &[1, 1], 32, BFS_BUDGET).unwrap();
        assert_eq!((e.estimate, e.bracket_width), (2.0, 0.0));
        assert!(e.subadditive);
        assert_eq!(stable_norm_estimate(&standard(), &[1, 0], 8, BFS_BUDGET).unwrap().estimate, 1.0);
        let e = stable_norm_estimate(&skew(), &[0, 1], 32, BFS_BUDGET).unwrap();
        assert_eq!(e.values, (1..=32).map(|k| 2 * k).collect::<Vec<_>>());
        assert_eq!(e.estimate, 2.0);
        assert!(matches!(stable_norm_estimate(&standard(), &[1, 1], 400, 1000), Err(Error::Budget(_))));
    }
}

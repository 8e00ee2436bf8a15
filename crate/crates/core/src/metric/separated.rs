use serde::{Deserialize, Serialize};

use super::Metric;
use crate::error::{check_index, Error, Result};
use crate::search::max_independent_set;

/// Pools up to this size are solved exactly.
pub const EXACT_SEPARATED_CAP: usize = 30;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparatedSubset {
    pub points: Vec<usize>,
    /// `false` when the greedy fallback ran; the size is then only a lower bound.
    pub exact: bool,
}

/// Largest subset of `within` (default: all points) whose distinct points are
/// pairwise at distance `>= r` (within tolerance).
pub fn max_separated_subset<M: Metric + ?Sized>(space: &M, r: f64, within: Option<&[usize]>) -> Result<SeparatedSubset> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Parameter(format!("separation radius {r} must be positive")));
    }
    let mut pool: Vec<usize> = match within {
        Some(w) => w.to_vec(),
        None => (0..space.len()).collect(),
    };
    for &p in &pool {
        check_index(p, space.len())?;
    }
    pool.sort_unstable();
    pool.dedup();
    let tol = space.tolerance();
    let close = |a: usize, b: usize| space.dist(a, b) < r - tol;

    if pool.len() <= EXACT_SEPARATED_CAP {
        let conflicts: Vec<u64> = pool
            .iter()
            .map(|&a| {
                pool.iter()
                    .enumerate()
                    .filter(|&(_, &b)| b != a && close(a, b))
                    .fold(0u64, |m, (j, _)| m | (1 << j))
            })
            .collect();
        let points = max_independent_set(&conflicts).into_iter().map(|j| pool[j]).collect();
        return Ok(SeparatedSubset { points, exact: true });
    }

    // Farthest-point-first among admissible points, lowest index on ties.
    let mut points = vec![pool[0]];
    let mut gap: Vec<f64> = pool.iter().map(|&p| space.dist(p, pool[0])).collect();
    loop {
        let next = pool
            .iter()
            .zip(&gap)
            .filter(|&(_, &g)| g >= r - tol)
            .fold(None::<(usize, f64)>, |acc, (&p, &g)| match acc {
                Some((_, bg)) if bg >= g => acc,
                _ => Some((p, g)),
            });
        let Some((p, _)) = next else { break };
        points.push(p);
        for (q, g) in pool.iter().zip(gap.iter_mut()) {
            *g = g.min(space.dist(*q, p));
        }
    }
    points.sort_unstable();
    Ok(SeparatedSubset { points, exact: false })
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::compute_beta;
use crate::error::{Error, Result};
use crate::metric::angle_from_sides;

const BLOCK: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransferFuzzReport {
    pub seed: u64,
    pub dimension: usize,
    pub epsilon: f64,
    pub beta: f64,
    pub trials: u64,
    pub violations: u64,
    /// Largest comparison angle `∠̃ x p y` seen, for margin reporting.
    pub max_angle: f64,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// One random configuration: `p`, `y`, a point `x'` on the segment `[p, y]`,
/// and `x` with `|x − x'| <= β |p − x|`. Returns `∠̃ x p y`.
fn sample_angle<R: Rng>(rng: &mut R, dim: usize, beta: f64) -> f64 {
    let coords = |rng: &mut R| -> Vec<f64> { (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect() };
    let (p, y) = loop {
        let p = coords(rng);
        let y = coords(rng);
        if distance(&p, &y) > 1e-6 {
            break (p, y);
        }
    };
    // s in (0, 1]: x' never coincides with p.
    let s = 1.0 - rng.random::<f64>();
    let xp: Vec<f64> = p.iter().zip(&y).map(|(a, b)| a + s * (b - a)).collect();
    let reach = beta * distance(&p, &xp) / (1.0 - beta);
    loop {
        let dir: Vec<f64> = (0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let len = norm(&dir);
        if len < 1e-12 {
            continue;
        }
        let r = reach * rng.random::<f64>().powf(1.0 / dim as f64);
        let x: Vec<f64> = xp.iter().zip(&dir).map(|(c, d)| c + r * d / len).collect();
        let dpx = distance(&p, &x);
        if dpx > 0.0 && distance(&x, &xp) <= beta * dpx {
            return angle_from_sides(dpx, distance(&p, &y), distance(&x, &y)).radians();
        }
    }
}

/// Samples Euclidean configurations satisfying the hypotheses of the
/// geodesic-closeness angle inequality and counts trials where `∠̃ x p y >= ε`.
///
/// Trials run in fixed blocks, each with its own ChaCha stream derived from
/// `seed`, so the result does not depend on thread scheduling.
pub fn angle_transfer_fuzz(dimension: usize, epsilon: f64, trials: u64, seed: u64) -> Result<TransferFuzzReport> {
    if !(2..=4).contains(&dimension) {
        return Err(Error::Parameter(format!("dimension {dimension} must be 2, 3 or 4")));
    }
    if trials == 0 {
        return Err(Error::Parameter("at least one trial is required".into()));
    }
    let beta = compute_beta(epsilon)?;
    let blocks = trials.div_ceil(BLOCK);
    let (violations, max_angle) = (0..blocks)
        .into_par_iter()
        .map(|block| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(block);
            let count = BLOCK.min(trials - block * BLOCK);
            let mut violations = 0u64;
            let mut max_angle = 0.0f64;
            for _ in 0..count {
                let angle = sample_angle(&mut rng, dimension, beta);
                if angle >= epsilon {
                    violations += 1;
                }
                max_angle = max_angle.max(angle);
            }
            (violations, max_angle)
        })
        .reduce(|| (0, 0.0), |a, b| (a.0 + b.0, a.1.max(b.1)));
    Ok(TransferFuzzReport { seed, dimension, epsilon, beta, trials, violations, max_angle })
}

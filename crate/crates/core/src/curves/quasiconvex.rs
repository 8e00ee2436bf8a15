use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Norm, Objective};
use crate::error::{Error, Result};
use crate::sra::Verdict;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuasiConvexCounterexample {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub t: f64,
    /// `f((1 − t) x + t y)`.
    pub interior: f64,
    /// `max{f(x), f(y)}`.
    pub endpoint_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuasiConvexReport {
    pub verdict: Verdict,
    pub counterexample: Option<QuasiConvexCounterexample>,
    pub norm: Norm,
    pub trials: u64,
    pub seed: u64,
}

/// Samples pairs in the box `[lo, hi]^dimension` and interior parameters
/// `t`, checking `f((1 − t) x + t y) <= max{f(x), f(y)}` along straight
/// segments. Segments are minimizing geodesics for every norm, so `norm` is
/// only recorded in the report.
pub fn quasi_convexity_sample(
    objective: &Objective,
    norm: Norm,
    dimension: usize,
    window: (f64, f64),
    trials: u64,
    seed: u64,
) -> Result<QuasiConvexReport> {
    let (lo, hi) = window;
    if !(lo < hi) || dimension == 0 {
        return Err(Error::Parameter(format!("empty sampling window [{lo}, {hi}]^{dimension}")));
    }
    let tol = 1e-9;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let x: Vec<f64> = (0..dimension).map(|_| rng.random_range(lo..hi)).collect();
        let y: Vec<f64> = (0..dimension).map(|_| rng.random_range(lo..hi)).collect();
        let t: f64 = rng.random_range(f64::EPSILON..1.0);
        let mid: Vec<f64> = x.iter().zip(&y).map(|(a, b)| (1.0 - t) * a + t * b).collect();
        let interior = objective.value(&mid);
        let endpoint_max = objective.value(&x).max(objective.value(&y));
        if interior > endpoint_max + tol {
            return Ok(QuasiConvexReport {
                verdict: Verdict::Fail,
                counterexample: Some(QuasiConvexCounterexample { x, y, t, interior, endpoint_max }),
                norm,
                trials,
                seed,
            });
        }
    }
    Ok(QuasiConvexReport { verdict: Verdict::Pass, counterexample: None, norm, trials, seed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convex_functions_pass() {
        let r = quasi_convexity_sample(&Objective::SquaredNorm, Norm::L2, 3, (-2.0, 2.0), 5000, 1).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        let ball = Objective::BallDistanceSquared { center: vec![0.5, 0.5], radius: 0.25 };
        let r = quasi_convexity_sample(&ball, Norm::LInf, 2, (-2.0, 2.0), 5000, 2).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn sine_bump_is_caught() {
        let r = quasi_convexity_sample(&Objective::SineFirst, Norm::L2, 1, (0.0, 3.5), 5000, 3).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        let c = r.counterexample.unwrap();
        assert!(c.interior > c.endpoint_max);
    }
}

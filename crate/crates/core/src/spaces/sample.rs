use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curves::Norm;
use crate::error::{Error, Result};
use crate::metric::{FiniteMetricSpace, DEFAULT_TOLERANCE};

/// `count` seeded uniform points in `[0, 1]^dimension`.
pub fn normed_sample_coords(dimension: usize, count: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if count == 0 || dimension == 0 {
        return Err(Error::Parameter("sample needs at least one point and one coordinate".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).map(|_| (0..dimension).map(|_| rng.random::<f64>()).collect()).collect())
}

pub fn normed_sample(dimension: usize, norm: Norm, count: usize, seed: u64) -> Result<FiniteMetricSpace> {
    let coords = normed_sample_coords(dimension, count, seed)?;
    let labels = (0..count).map(|i| format!("p{i}")).collect();
    FiniteMetricSpace::from_fn(labels, DEFAULT_TOLERANCE, |i, j| norm.distance(&coords[i], &coords[j]))
}

//! Greedy doubling estimates and separated sets on a broom and a sample.
//!
//! `cargo run --example doubling`

use rough_angle::curves::Norm;
use rough_angle::metric::{doubling_estimate, max_separated_subset, Metric};
use rough_angle::spaces::{broom_tree, normed_sample, BroomSequence};

fn main() -> anyhow::Result<()> {
    let radii: Vec<f64> = (-1..=10).map(|k| 0.5f64.powi(k)).collect();
    for n in [10, 20, 40] {
        let broom = broom_tree(&BroomSequence::Dyadic { n })?;
        let centers: Vec<usize> = (0..broom.space().len()).collect();
        let est = doubling_estimate(broom.space(), &centers, &radii)?;
        println!("dyadic broom, {n} branches: doubling estimate {}", est.constant);
    }

    let sample = normed_sample(2, Norm::L2, 300, 1)?;
    let centers: Vec<usize> = (0..sample.len()).step_by(10).collect();
    let est = doubling_estimate(&sample, &centers, &[0.8, 0.4, 0.2, 0.1])?;
    println!("300 points in the unit square: doubling estimate {}", est.constant);
    for r in [0.4, 0.2] {
        let sep = max_separated_subset(&sample, r, Some(&(0..30).collect::<Vec<_>>()))?;
        println!("  largest {r}-separated subset of the first 30 points: {} (exact: {})", sep.points.len(), sep.exact);
    }
    Ok(())
}

//! Angle-separated sets and the geodesic variant on a broom tree.
//!
//! `cargo run --example angular_bounds`

use rough_angle::atb::{atb_star_check, compute_beta, lrb_constant_estimate, max_angle_separated};
use rough_angle::graph::GeodesicSet;
use rough_angle::spaces::{broom_tree, BroomSequence};

fn main() -> anyhow::Result<()> {
    let broom = broom_tree(&BroomSequence::Dyadic { n: 5 })?;
    let geodesics = GeodesicSet::lexicographic(broom.graph()?)?;
    let tips = broom.tips();

    for epsilon in [0.3, 0.7, 1.2] {
        let sep = max_angle_separated(geodesics.space(), broom.root(), epsilon, &tips, None)?;
        let star = atb_star_check(&geodesics, broom.root(), epsilon, &tips)?;
        println!(
            "eps {epsilon}: beta {:.5}, {} tips pairwise separated {:?}, geodesic check {:?}",
            compute_beta(epsilon)?,
            sep.cardinality,
            sep.points,
            star.verdict
        );
        if let Some(w) = star.witness {
            println!("  target {} within {:.4} (threshold {:.4}) of the geodesic to {}", tips[w.i], w.distance, w.threshold, tips[w.j]);
        }
    }

    let lrb = lrb_constant_estimate(&geodesics, broom.root(), 2.0, 64)?;
    println!("divergence constant from the root: K = {:.4} over {} geodesic pairs", lrb.k, lrb.samples);
    Ok(())
}

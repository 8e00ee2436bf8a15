//! Word metrics on Z^2 and stable norms of a few elements.
//!
//! `cargo run --example stable_norm`

use rough_angle::spaces::{cayley_ball, stable_norm_estimate, BFS_BUDGET};

fn main() -> anyhow::Result<()> {
    let sets = [
        ("standard", vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]),
        ("skew", vec![vec![1, 0], vec![-1, 0], vec![1, 1], vec![-1, -1]]),
        ("king", vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1], vec![1, 1], vec![-1, -1], vec![1, -1], vec![-1, 1]]),
    ];
    for (name, generators) in &sets {
        let ball = cayley_ball(generators, 8)?;
        println!("{name}: ball of radius 8 has {} elements, subadditive: {}", ball.len(), ball.subadditivity_violation().is_none());
        for g in [[1, 0], [0, 1], [1, 1], [2, 1]] {
            let e = stable_norm_estimate(generators, &g, 32, BFS_BUDGET)?;
            println!("  |{g:?}| = {:.4}  bracket [{:.4}, {:.4}]  2C = {}", e.estimate, e.lower, e.upper, e.two_c);
        }
    }
    Ok(())
}

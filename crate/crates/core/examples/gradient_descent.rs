//! Gradient descent on a quadratic, measured in several norms.
//!
//! `cargo run --example gradient_descent`

use rough_angle::curves::{curve_length, gradient_descent_trajectory, is_self_contracted, DescentSpec, Norm, Objective};

fn main() -> anyhow::Result<()> {
    let objective = Objective::Quadratic { matrix: vec![vec![5.0, 2.0], vec![2.0, 1.0]] };
    for norm in [Norm::L2, Norm::L1, Norm::LInf] {
        let spec = DescentSpec { objective: objective.clone(), norm, step: 0.15, iterations: 300, start: vec![1.0, -3.0] };
        let trajectory = gradient_descent_trajectory(&spec)?;
        let report = is_self_contracted(&trajectory.curve)?;
        println!(
            "{norm}: step bound {:.4}, length {:.4}, {:?}",
            trajectory.stability_bound,
            curve_length(&trajectory.curve)?.polygonal_length,
            report.verdict
        );
        if let Some(w) = report.witness {
            println!("  ({}, {}, {}): {:.3e} > {:.3e}", w.t1, w.t2, w.t3, w.far, w.near);
        }
    }

    let too_big = DescentSpec { objective, norm: Norm::L2, step: 0.5, iterations: 10, start: vec![1.0, 1.0] };
    println!("step 0.5: {}", gradient_descent_trajectory(&too_big).unwrap_err());
    Ok(())
}

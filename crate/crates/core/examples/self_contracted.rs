//! Self-contracted curves: the Heisenberg axis, broom tips and a zigzag.
//!
//! `cargo run --release --example self_contracted`

use rough_angle::curves::{curve_length, extract_sra_from_curve, is_self_contracted, DiscreteCurve, Norm};
use rough_angle::spaces::{broom_tree, heisenberg_axis, BroomSequence};

fn main() -> anyhow::Result<()> {
    for steps in [10, 100, 1000, 10_000] {
        let curve = DiscreteCurve::through_all(heisenberg_axis(steps, (0.0, 1.0))?);
        let verdict = is_self_contracted(&curve)?.verdict;
        let length = curve_length(&curve)?.polygonal_length;
        println!("axis, {steps:>5} steps: {verdict:?}, length {length:.4}");
    }

    let broom = broom_tree(&BroomSequence::Harmonic { n: 200 })?;
    let tips = DiscreteCurve::new(broom.space(), broom.tips())?;
    println!(
        "harmonic broom tips: {:?}, length {:.4}",
        is_self_contracted(&tips)?.verdict,
        curve_length(&tips)?.polygonal_length
    );
    if let Some(params) = extract_sra_from_curve(&tips, 0.5, 10)? {
        println!("  ten tips forming an SRA(1/2) set: {params:?}");
    }

    let zigzag = DiscreteCurve::from_coords(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.2, 0.1], vec![0.6, 0.0]], Norm::L2)?;
    let report = is_self_contracted(&zigzag)?;
    println!("zigzag: {:?} {:?}", report.verdict, report.witness);
    Ok(())
}

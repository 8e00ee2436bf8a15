//! Builds a Laakso graph, picks the designated points and checks them.
//!
//! `cargo run --release --example laakso_sra -- 5`

use rough_angle::metric::Metric;
use rough_angle::spaces::{laakso_closed_form, laakso_graph, laakso_sra_points, LAAKSO_DEFAULT_CAP};
use rough_angle::sra::{sra_angle_bound, verify_sra_set, SraParameter};

fn main() -> anyhow::Result<()> {
    let level: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(4);
    let laakso = laakso_graph(level, LAAKSO_DEFAULT_CAP)?;
    println!("G_{level}: {} vertices, {} edges", laakso.graph().vertex_count(), laakso.graph().edge_count());

    let points = laakso_sra_points(&laakso, level)?;
    let space = laakso.graph().subspace(&points.x, 1e-12)?;
    for i in 0..space.len() {
        for k in i + 1..space.len() {
            let closed = laakso_closed_form(i as u32 + 1, k as u32 + 1);
            println!("d(x{}, x{}) = {:.10}  closed form {:.10}", i + 1, k + 1, space.dist(i, k), closed);
        }
    }

    let all: Vec<usize> = (0..space.len()).collect();
    for alpha in [0.5, 0.6, 0.9] {
        let alpha = SraParameter::new(alpha)?;
        let sra = verify_sra_set(&space, &all, alpha)?;
        let angles = sra_angle_bound(&space, &all, alpha)?;
        println!(
            "alpha {}: {:?}, largest angle {:.4} vs bound {:.4}",
            alpha.value(),
            sra.verdict,
            angles.max_angle.unwrap_or(0.0),
            angles.bound
        );
        if let Some(w) = sra.witness {
            println!("  witness x={} z={} y={}: {:.6} > {:.6}", w.x, w.z, w.y, w.lhs, w.rhs);
        }
    }
    Ok(())
}

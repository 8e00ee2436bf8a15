//! Snowflaking a random metric and searching for large SRA subsets.
//!
//! `cargo run --example snowflake`

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rough_angle::metric::random::random_metric;
use rough_angle::metric::snowflake_transform;
use rough_angle::sra::{max_sra_subset, verify_sra_set, SearchMode, SraParameter};

fn main() -> anyhow::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let base = random_metric(12, 0.05, &mut rng);
    let all: Vec<usize> = (0..12).collect();

    for alpha in [0.3, 0.6, 0.9] {
        let alpha = SraParameter::new(alpha)?;
        let raw = max_sra_subset(&base, alpha, SearchMode::Exact)?;
        let flake = snowflake_transform(&base, alpha.value())?;
        let whole = verify_sra_set(&flake, &all, alpha)?;
        println!(
            "alpha {:.1}: largest SRA subset of the base metric has {} points {:?}; snowflake passes on all 12: {}",
            alpha.value(),
            raw.points.len(),
            raw.points,
            whole.passed()
        );
    }
    Ok(())
}

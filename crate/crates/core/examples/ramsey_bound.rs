//! Prints the Ramsey chain for several L and the doubling threshold.
//!
//! `cargo run --example ramsey_bound`

use rough_angle::sra::{compute_sra_free_bound, doubling_threshold};

fn main() -> anyhow::Result<()> {
    for l in 2..=5 {
        let cert = compute_sra_free_bound(l)?;
        let chain: Vec<String> = cert.chain.iter().map(|c| format!("H{}={}{}", c.index, c.value, if c.exact { "" } else { "*" })).collect();
        let digits = cert.n.to_string().len();
        let n = if digits > 40 { format!("<{digits}-digit number>") } else { cert.n.to_string() };
        println!("L = {l}: N = {n} ({})", if cert.exact { "exact" } else { "upper bound" });
        if digits <= 40 {
            println!("  {}", chain.join("  "));
        }
    }
    println!("(* marks a binomial upper bound)");
    for alpha in [1.0, 0.75, 0.6, 0.5, 0.1] {
        println!("alpha {alpha}: threshold {}", doubling_threshold(alpha)?.n_tilde);
    }
    Ok(())
}

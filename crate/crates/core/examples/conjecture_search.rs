//! Explores disconnected domains against edgeless codomains, comparing
//! `CS_2` with higher `CS_i` and with the subset sums of component sizes.
//!
//! ```text
//! cargo run --release --example conjecture_search -- [max_x_points] [max_y_points] [i_max]
//! ```

use std::time::Instant;

use digitop::verify::{conjecture_search, RunConfig, REDUCTION};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let max_x = args.first().copied().unwrap_or(6);
    let max_y = args.get(1).copied().unwrap_or(3);
    let i_max = args.get(2).copied().unwrap_or(4);
    let cfg = RunConfig {
        deterministic: false,
        ..RunConfig::default()
    };

    println!("reduction: {REDUCTION}\n");
    let start = Instant::now();
    let reports = conjecture_search(max_x, max_y, i_max, &cfg)?;
    for r in &reports {
        println!(
            "{:<28} CS_2 = {:<24} subset sums match: {:<5} {}",
            r.instance.description,
            r.details["spectra"]["CS_2"].to_string(),
            r.details["cs2_is_subset_sums"],
            if r.verdict.is_pass() { "ok" } else { "COUNTEREXAMPLE" }
        );
    }
    let bad = reports.iter().filter(|r| !r.verdict.is_pass()).count();
    println!("\n{} instances, {bad} not passing, {:.1?}", reports.len(), start.elapsed());
    Ok(())
}

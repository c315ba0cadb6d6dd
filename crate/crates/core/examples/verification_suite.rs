//! Runs the theorem checks over the named images and over seeded random
//! images, then prints one line per check and a tally.
//!
//! ```text
//! cargo run --release --example verification_suite -- [suite] [seed]
//! ```

use std::collections::BTreeMap;
use std::time::Instant;

use digitop::verify::{run_suite, RunConfig, Suite};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let suite: Suite = args.next().as_deref().unwrap_or("paper-fixtures").parse()?;
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(0);
    let cfg = RunConfig {
        seed,
        deterministic: false,
        ..RunConfig::default()
    };

    let start = Instant::now();
    let reports = run_suite(suite, &cfg)?;
    let mut tally: BTreeMap<&str, [usize; 3]> = BTreeMap::new();
    for r in &reports {
        let slot = tally.entry(r.check_id.as_str()).or_default();
        if r.verdict.is_pass() {
            slot[0] += 1;
        } else if r.verdict.is_fail() {
            slot[1] += 1;
            println!("{}", r.to_text_line());
        } else {
            slot[2] += 1;
        }
    }
    println!("{:<22} {:>6} {:>6} {:>6}", "check", "pass", "fail", "skip");
    for (id, [p, f, s]) in &tally {
        println!("{id:<22} {p:>6} {f:>6} {s:>6}");
    }
    println!("{} reports in {:.1?}", reports.len(), start.elapsed());
    Ok(())
}

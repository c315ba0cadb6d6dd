//! Counts and lists continuous maps, with and without budgets.

use std::sync::Arc;
use std::time::{Duration, Instant};

use digitop::enumeration::{
    count_continuous_maps, enumerate_continuous_maps, enumerate_continuous_maps_parallel,
};
use digitop::fixtures::{build, cycle, discrete};
use digitop::{Builtin, EnumerationBudget};

fn main() -> digitop::Result<()> {
    let unlimited = EnumerationBudget::unlimited();
    let cube = Arc::new(build(Builtin::Cube)?);
    let cube_minus = Arc::new(build(Builtin::CubeMinusVertex)?);
    for (x, y) in [
        (Arc::new(cycle(4)), Arc::new(cycle(4))),
        (cube.clone(), cube.clone()),
        (cube.clone(), cube_minus.clone()),
        (Arc::new(discrete(3)), Arc::new(cycle(5))),
    ] {
        let (n, exact) = count_continuous_maps(&x, &y, unlimited);
        println!("#C({} -> {}) = {n}{}", x.label(), y.label(), if exact { "" } else { "+" });
    }

    let start = Instant::now();
    let seq = enumerate_continuous_maps(&cube, &cube, unlimited);
    let t_seq = start.elapsed();
    let start = Instant::now();
    let par = enumerate_continuous_maps_parallel(&cube, &cube, unlimited);
    println!(
        "\ncube self-maps: {} sequential ({t_seq:.1?}), {} parallel ({:.1?}), same order: {}",
        seq.items.len(),
        par.items.len(),
        start.elapsed(),
        seq.items == par.items
    );

    // budgets stop early and say so
    let figure1 = Arc::new(build(Builtin::Figure1)?);
    for budget in [
        unlimited.with_max_results(1000),
        unlimited.with_max_nodes(50_000),
        unlimited.with_time_budget(Duration::from_millis(20)),
    ] {
        let out = enumerate_continuous_maps(&figure1, &figure1, budget);
        println!("figure1 with {budget:?}: {} maps, exhausted {}", out.items.len(), out.exhausted);
    }
    Ok(())
}

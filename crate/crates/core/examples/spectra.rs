//! Fixed point and coincidence spectra: the cycles, the cube, and how
//! `CS_i` behaves as `i` grows.

use std::time::Instant;

use digitop::fixtures::{build, cycle, discrete, interval};
use digitop::spectra::{
    coincidence_spectrum, coincidence_spectrum_union, common_fixed_spectrum, fixed_point_spectrum,
};
use digitop::{Builtin, EnumerationBudget};

fn main() -> digitop::Result<()> {
    let budget = EnumerationBudget::unlimited();
    for n in 1..=7 {
        println!("F(C{n}) = {}", fixed_point_spectrum(&cycle(n), budget));
    }

    let cube = build(Builtin::Cube)?;
    let start = Instant::now();
    println!("\nF(cube)                       = {}", fixed_point_spectrum(&cube, budget));
    println!("CS_2(cube, cube)              = {}", coincidence_spectrum(&cube, &cube, 2, budget)?);
    let minus = build(Builtin::CubeMinusVertex)?;
    println!("CS_2(cube, cube_minus_vertex) = {}", coincidence_spectrum(&cube, &minus, 2, budget)?);
    let single = build(Builtin::Singleton)?;
    println!("CS_2(cube, singleton)         = {}", coincidence_spectrum(&cube, &single, 2, budget)?);
    println!("({:.1?})", start.elapsed());

    // with an edgeless codomain only component sizes matter
    let two_parts = build(Builtin::Discrete(2))?;
    let x = interval(0, 2);
    for (a, b) in [(&x, &two_parts), (&cycle(5), &discrete(3))] {
        let u = coincidence_spectrum_union(a, b, 4, budget)?;
        for s in &u.per_arity {
            println!("CS_{}({}, {}) = {s}", s.arity().unwrap(), a.label(), b.label());
        }
    }

    let c4 = cycle(4);
    for i in 1..=3 {
        println!("CFS_{i}(C4) = {}", common_fixed_spectrum(&c4, i, budget)?);
    }
    Ok(())
}

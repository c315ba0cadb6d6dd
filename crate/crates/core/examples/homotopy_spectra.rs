//! Homotopy coincidence spectra, minimum coincidence numbers and the
//! self-coincidence sequence `m_j`.

use std::sync::Arc;

use digitop::fixtures::{build, cycle, interval};
use digitop::hspectra::{hcs, hfs, mc, mcf, self_coincidence_sequence};
use digitop::{Builtin, DigitalMap, EnumerationBudget};

fn main() -> digitop::Result<()> {
    let budget = EnumerationBudget::unlimited();

    let figure1 = Arc::new(build(Builtin::Figure1)?);
    let id = DigitalMap::identity(&figure1);
    println!("HCS(id, id) on figure1 = {}", hcs(&[&id, &id], budget)?.values);
    println!("MC(id, id) on figure1  = {:?}", mc(&[&id, &id], budget)?);

    let i3 = Arc::new(interval(0, 3));
    let c = DigitalMap::constant(&i3, &i3, 1)?;
    println!("HCS(c, c) on [0,3]     = {}", hcs(&[&c, &c], budget)?.values);

    let c4 = Arc::new(cycle(4));
    let id4 = DigitalMap::identity(&c4);
    let c4_const = DigitalMap::constant(&c4, &c4, 0)?;
    println!("HCS(id, id) on C4      = {}", hcs(&[&id4, &id4], budget)?.values);
    println!("MC(id, c) on C4        = {:?}", mc(&[&id4, &c4_const], budget)?);
    println!("HFS(c) on C4           = {}", hfs(&[&c4_const], budget)?.values);
    println!("MCF(c) on C4           = {:?}", mcf(&[&c4_const], budget)?);

    println!();
    for x in [figure1.clone(), Arc::new(cycle(5)), Arc::new(build(Builtin::Cube)?)] {
        let seq = self_coincidence_sequence(&x, 5, budget)?;
        println!(
            "m_j({}) for j = 1..5: {:?} (exact: {}, non-increasing: {})",
            x.label(),
            seq.values(),
            seq.is_exact(),
            seq.is_non_increasing()
        );
    }
    Ok(())
}

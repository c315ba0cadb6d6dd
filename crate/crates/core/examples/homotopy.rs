//! Rigidity, contractibility and explicit homotopy chains.

use std::sync::Arc;

use digitop::enumeration::one_step_neighbors;
use digitop::fixtures::{build, cycle, discrete};
use digitop::homotopy::{are_homotopic, homotopy_class, is_contractible, is_rigid_image};
use digitop::{Builtin, DigitalMap, EnumerationBudget};

fn main() -> digitop::Result<()> {
    let budget = EnumerationBudget::unlimited();
    let images = [
        Arc::new(build(Builtin::Figure1)?),
        Arc::new(build(Builtin::Cube)?),
        Arc::new(cycle(4)),
        Arc::new(cycle(6)),
        Arc::new(discrete(3)),
    ];
    println!("{:<12} {:>6} {:>13} {:>12}", "image", "rigid", "contractible", "id nbrs");
    for x in &images {
        let nbrs = one_step_neighbors(&DigitalMap::identity(x), budget).items.len();
        println!(
            "{:<12} {:>6} {:>13} {:>12}",
            x.label(),
            is_rigid_image(x),
            is_contractible(x, budget).label(),
            nbrs
        );
    }

    let c4 = Arc::new(cycle(4));
    let id = DigitalMap::identity(&c4);
    let c = DigitalMap::constant(&c4, &c4, 2)?;
    if let Some(w) = are_homotopic(&id, &c, budget)?.witness() {
        println!("\nid ≃ const_2 on C4 in {} steps:", w.len() - 1);
        for m in &w.chain {
            println!("  {:?}", m.assignment());
        }
    }
    let class = homotopy_class(&id, budget);
    println!("class of id on C4: {} maps (complete: {})", class.len(), class.is_complete());
    Ok(())
}

//! Continuous maps between the 4-cycle and the 4-point tree, their
//! coincidence sets, and fixed point sets of self-maps of a cycle.

use std::sync::Arc;

use digitop::fixtures::{build, cycle};
use digitop::maps::{coincidence_set, common_fixed_set, compose, fixed_point_set};
use digitop::{Builtin, DigitalMap, Error};

fn main() -> digitop::Result<()> {
    let square = Arc::new(build(Builtin::Square4)?);
    let tee = Arc::new(build(Builtin::Tee4)?);

    let f = DigitalMap::from_assignment(&square, &tee, vec![1, 0, 1, 2])?;
    let g = DigitalMap::from_assignment(&square, &tee, vec![0, 1, 3, 1])?;
    let c = DigitalMap::constant(&square, &tee, 3)?;
    println!("C(f, g)    = {:?}", coincidence_set(&[&f, &g])?.members());
    println!("C(g, c)    = {:?}", coincidence_set(&[&g, &c])?.members());
    println!("C(f, g, c) = {:?}", coincidence_set(&[&f, &g, &c])?.members());

    // x_i -> y_i puts the adjacent x_0, x_3 on two leaves of the tree
    match DigitalMap::from_assignment(&square, &tee, vec![0, 1, 2, 3]) {
        Err(Error::Discontinuous { x, y, fx, fy }) => {
            println!("not continuous: x_{x} ~ x_{y} but y_{fx} and y_{fy} are apart")
        }
        other => println!("unexpected: {other:?}"),
    }

    let c6 = Arc::new(cycle(6));
    let rot = DigitalMap::from_assignment(&c6, &c6, vec![1, 2, 3, 4, 5, 0])?;
    let fold = DigitalMap::from_assignment(&c6, &c6, vec![0, 1, 2, 3, 2, 1])?;
    let rot_inv = DigitalMap::from_assignment(&c6, &c6, vec![5, 0, 1, 2, 3, 4])?;
    println!("\nFix(rotation)           = {:?}", fixed_point_set(&rot)?.members());
    println!("Fix(fold)               = {:?}", fixed_point_set(&fold)?.members());
    println!("Fix(rotation ∘ inverse) = {:?}", fixed_point_set(&compose(&rot, &rot_inv)?)?.members());
    println!("CF(fold, id)            = {:?}", common_fixed_set(&[&fold, &DigitalMap::identity(&c6)])?.members());
    Ok(())
}

//! Builds the named images, prints their structure, writes one to JSON and
//! reads it back, and looks for isomorphisms between 4-point images.

use digitop::fixtures::{build, cycle};
use digitop::io::{image_to_file, parse_image};
use digitop::iso::find_isomorphism;
use digitop::{AdjacencySpec, Builtin, DigitalImage, Point};

fn describe(x: &DigitalImage) {
    let sizes: Vec<usize> = x.components().iter().map(Vec::len).collect();
    println!(
        "{:<20} dim {}  {:>2} points  {:>2} edges  components {:?}",
        x.label(),
        x.dimension(),
        x.len(),
        x.edge_count(),
        sizes
    );
}

fn main() -> digitop::Result<()> {
    for b in [
        Builtin::Figure1,
        Builtin::Cube,
        Builtin::CubeMinusVertex,
        Builtin::Square4,
        Builtin::Tee4,
        Builtin::Cycle(6),
        Builtin::Interval { a: 0, b: 5 },
        Builtin::Discrete(3),
    ] {
        describe(&build(b)?);
    }

    // an L-shaped image in Z^2 under 8-adjacency
    let l = DigitalImage::new(
        2,
        vec![Point::from([0, 0]), Point::from([1, 0]), Point::from([1, 1]), Point::from([2, 2])],
        AdjacencySpec::Ct(2),
        Some("L".into()),
    )?;
    describe(&l);
    for x in 0..l.len() {
        let nbrs: Vec<String> = l.adjacent_points(x).iter().map(|&y| l.point(y).to_string()).collect();
        println!("  {} ~ {}", l.point(x), nbrs.join(" "));
    }

    let text = serde_json::to_string(&image_to_file(&l)).expect("images serialize");
    println!("\n{text}");
    let back = parse_image(&text, "memory")?;
    println!("read back equal: {}", back.image == l);

    let c4 = cycle(4);
    for other in [Builtin::Square4, Builtin::Tee4] {
        let y = build(other)?;
        match find_isomorphism(&c4, &y) {
            Some(phi) => println!("C4 ≅ {}: {:?}", y.label(), phi.forward()),
            None => println!("C4 and {} are not isomorphic", y.label()),
        }
    }
    Ok(())
}

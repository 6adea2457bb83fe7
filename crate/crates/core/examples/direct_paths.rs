//! Direct-paths between lattice points: enumeration, closed-form layers and
//! the exact law of the node a uniform path visits at a given distance.

use levy_search::lattice::{enumerate_direct_paths, intermediate_bounds, intermediate_distribution, Segment};
use levy_search::LatticePoint;

fn main() -> levy_search::Result<()> {
    let (u, v) = (LatticePoint::ORIGIN, LatticePoint::new(3, 3));
    let paths = enumerate_direct_paths(u, v)?;
    println!("{} direct-paths from {u} to {v}:", paths.len());
    for p in &paths {
        let nodes: Vec<String> = p.nodes().iter().map(ToString::to_string).collect();
        println!("  {}", nodes.join(" -> "));
    }

    let seg = Segment::new(u, v);
    println!("\nlayers of the segment:");
    for i in 0..=seg.len() {
        let layer = seg.layer(i);
        let nodes: Vec<String> = layer.to_vec().iter().map(ToString::to_string).collect();
        println!("  {i}: {}{}", nodes.join(", "), if layer.is_tie() { "  (tie)" } else { "" });
    }

    let (d, i) = (7, 3);
    let (lo, hi) = intermediate_bounds(d, i);
    println!("\nP(node at distance {i} = w) for a uniform destination at distance {d}; bounds [{lo}, {hi}]");
    for (w, p) in intermediate_distribution(u, d, i)? {
        println!("  {w}: {p}");
    }
    Ok(())
}

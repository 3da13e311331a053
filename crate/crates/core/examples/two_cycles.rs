// With out-degrees 1 or 2 and p vertices of out-degree 1, two cycles meet
// in at most p+1 vertices, which bounds the girth by ⌈(n+p)/2⌉.
//
// ```text
// cargo run --example two_cycles
// ```

use shortcycles::graph::{validate_cycle, Digraph};
use shortcycles::oracles::{deg2_short_cycle, girth, two_cycles_min_intersection};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let d = Digraph::from_arcs(
        6,
        [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 0), (4, 1)],
    )?;
    let pair = two_cycles_min_intersection(&d)?;
    println!(
        "C1 = {:?}, C2 = {:?}, common {:?} (at most p+1 = {})",
        pair.c1,
        pair.c2,
        pair.intersection,
        pair.intersection_bound()
    );
    let cert = deg2_short_cycle(&d)?;
    assert!(validate_cycle(&d, &cert));
    println!(
        "short cycle {:?}: {} <= {}; girth {}",
        cert.vertices,
        cert.len(),
        cert.bound,
        girth(&d).expect("cyclic")
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

// Exact girth by breadth-first search, cross-checked against full cycle
// enumeration.
//
// ```text
// cargo run --example girth
// ```

use shortcycles::graph::{validate_cycle, Digraph};
use shortcycles::oracles::{enumerate_cycles, girth_exact};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let graphs = [
        ("triangle", Digraph::cycle(3)),
        ("bidirected triangle", Digraph::complete(3)),
        ("path 0→1→2", Digraph::from_arcs(3, [(0, 1), (1, 2)])?),
        ("5-cycle with chord 0→3", Digraph::from_arcs(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 3)])?),
    ];
    for (name, d) in &graphs {
        let cycles = enumerate_cycles(d, d.n())?;
        let shortest = cycles.iter().map(Vec::len).min();
        match girth_exact(d) {
            Some(cert) => {
                assert!(validate_cycle(d, &cert));
                assert_eq!(Some(cert.len()), shortest);
                println!("{name}: girth {} via {:?} ({} cycles in total)", cert.len(), cert.vertices, cycles.len());
            }
            None => {
                assert!(cycles.is_empty());
                println!("{name}: acyclic, girth inf");
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

// Grow H from a single-edge family, check its rainbow diameter on every
// prefix, and contract it to one vertex.
//
// ```text
// cargo run --example greedy_subgraph
// ```

use shortcycles::graph::{Edge, RainbowInstance};
use shortcycles::rainbow::{
    build_greedy_subgraph, check_diameter_claim, contract, distance_table, rainbow_path_in_h,
};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let e = Edge::new;
    let inst = RainbowInstance::new(
        6,
        vec![
            vec![e(0, 1)],
            vec![e(0, 2), e(1, 2)],
            vec![e(0, 3), e(2, 3)],
            vec![e(3, 4), e(1, 4)],
            vec![e(4, 5), e(2, 5)],
            vec![e(3, 5)],
        ],
    )?;
    let h = build_greedy_subgraph(&inst, 0)?;
    println!("seed {} then:", h.seed_edge);
    for a in &h.attachments {
        println!("  x = {} joined to {} and {} by family {}", a.x, a.a, a.b, a.color);
    }
    println!("t = {}, diameter bound ⌊t/2⌋+1 = {}", h.t(), h.diameter_bound());

    for ((u, v), d) in distance_table(&h) {
        println!("  dist({u},{v}) = {}", d.map_or("none".into(), |d| d.to_string()));
    }
    let pairs = check_diameter_claim(&h)?;
    println!("claim holds on all prefixes ({pairs} pairs checked)");

    let path = rainbow_path_in_h(&h, 1, 5)?;
    println!("rainbow path 1 → 5: {:?}", path.vertices);

    let (g, map) = contract(&inst, &h);
    println!(
        "contracted: {} vertices, {} families, h = {}, families kept {:?}",
        g.n(),
        g.m(),
        map.h,
        map.family_map
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

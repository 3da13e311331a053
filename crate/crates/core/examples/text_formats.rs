// Reading and writing the text formats, and certificate JSON.
//
// ```text
// cargo run --example text_formats
// ```

use shortcycles::graph::text::{parse_digraph, parse_rainbow, write_digraph, write_rainbow};
use shortcycles::graph::{check_cycle, CycleCertificate};
use shortcycles::peeling::short_cycle_via_peeling;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let d = parse_digraph("# bidirected triangle\ndigraph 3 6\n0 1\n1 0\n1 2\n2 1\n0 2\n2 0\n")?;
    assert_eq!(parse_digraph(&write_digraph(&d))?, d);

    let cert = short_cycle_via_peeling(&d)?;
    let json = serde_json::to_string(&cert)?;
    println!("{json}");
    let back: CycleCertificate = serde_json::from_str(&json)?;
    check_cycle(&d, &back)?;

    let inst = parse_rainbow("rainbow 3 2\n0-1\n0-1,0-2\n")?;
    print!("{}", write_rainbow(&inst));

    match parse_digraph("digraph 2 1\n0 5\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

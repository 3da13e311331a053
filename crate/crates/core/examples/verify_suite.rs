// Exhaustive checks over every sink-less labeled digraph on up to four
// vertices, and over every out-degree-{1,2} digraph on up to five.
//
// ```text
// cargo run --release --example verify_suite
// ```

use shortcycles::harness::{run_suite, Check, DigraphFilter, Generator, SuiteConfig};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let labeled = SuiteConfig::new(
        1,
        4,
        Generator::Labeled(DigraphFilter::Sinkless),
        &[Check::TwoPhi, Check::TwoPsiStrict, Check::Chc, Check::SideSums],
    );
    let r = run_suite(&labeled)?;
    println!("{} sink-less digraphs, {} violations", r.tally.instances, r.violation_count());
    for (check, t) in &r.tally.checks {
        println!("  {check}: {}/{}", t.passed, t.checked);
    }
    let tight = &r.tally.tight;
    println!("  g = 2φ on {} graphs, {} of them single cycles", tight.count, tight.single_cycles);

    let outmaps = SuiteConfig::new(
        2,
        5,
        Generator::Outmaps { dmin: 1, dmax: 2 },
        &[Check::TwoCycles, Check::Deg2Girth],
    );
    let r = run_suite(&outmaps)?;
    println!("{} out-degree maps, {} violations", r.tally.instances, r.violation_count());
    assert!(r.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

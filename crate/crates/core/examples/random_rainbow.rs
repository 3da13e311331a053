// Seeded random rainbow instances through the rainbow checks.
//
// ```text
// cargo run --release --example random_rainbow
// ```

use shortcycles::graph::text::write_rainbow;
use shortcycles::harness::{
    random_rainbow_instance, run_suite, Check, Generator, RainbowMode, SuiteConfig,
};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let inst = random_rainbow_instance(6, 2, 42, RainbowMode::Disjoint)?;
    print!("{}", write_rainbow(&inst));

    let mut cfg = SuiteConfig::new(
        4,
        8,
        Generator::Rainbow { count: 100 },
        &[Check::RainbowBound, Check::RdClaim],
    );
    cfg.seed = 42;
    let r = run_suite(&cfg)?;
    println!(
        "{} instances, {} violations, largest gap to the optimum {:?}",
        r.tally.instances,
        r.violation_count(),
        r.tally.max_rainbow_gap
    );
    assert!(r.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

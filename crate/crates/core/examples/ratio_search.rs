// Look for sink-less digraphs with a large girth/ψ ratio; it always
// stays below 2.
//
// ```text
// cargo run --release --example ratio_search
// ```

use shortcycles::harness::extremal_ratio_search;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    for n in 3..=7 {
        let r = extremal_ratio_search(n, 2_000, 7)?;
        let best = r.best.expect("sink-less digraphs exist for n >= 2");
        println!(
            "n = {n}: g = {}, ψ = {}, g/ψ ≈ {:.4} after {} evaluations{}",
            best.girth,
            best.psi,
            best.ratio,
            r.evaluated,
            if r.exhaustive { " (exhaustive)" } else { "" }
        );
        assert!(r.violations.is_empty());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

// A rainbow cycle of length at most ⌈(n+p)/2⌉ for n families of one or
// two edges, compared with the exact optimum.
//
// ```text
// cargo run --example rainbow
// ```

use shortcycles::graph::{text::parse_rainbow, validate_rainbow_cycle};
use shortcycles::oracles::shortest_rainbow_cycle_exact;
use shortcycles::rainbow::{find_rainbow_cycle_traced, LevelOutcome};

const INSTANCE: &str = "\
rainbow 6 6
0-1
0-2,1-2
2-3,4-5
3-4
1-5,0-4
3-5
";

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let inst = parse_rainbow(INSTANCE)?;
    let (cert, trace) = find_rainbow_cycle_traced(&inst)?;
    assert!(validate_rainbow_cycle(&inst, &cert));

    for level in &trace.levels {
        let how = match &level.outcome {
            LevelOutcome::Loop => "loop".to_string(),
            LevelOutcome::SharedEdge => "edge shared by two families".to_string(),
            LevelOutcome::Oracle { length } => format!("all pairs, exact search ({length})"),
            LevelOutcome::Contracted { t, through_h } => {
                format!("contracted H with t = {t}; inner cycle through h: {through_h}")
            }
        };
        println!("n = {}, p = {}: {how}", level.n, level.p);
    }
    for s in &cert.steps {
        println!("  {} (family {})", s.edge, s.color);
    }
    let best = shortest_rainbow_cycle_exact(&inst)?.expect("a rainbow cycle exists");
    println!("length {} <= bound {}; optimum {}", cert.len(), cert.bound, best.len());
    assert!(best.len() <= cert.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

//! Brute-force ground truth. Exponential by construction, guarded by hard
//! caps that fail loudly instead of truncating.

mod cycles;
mod girth;
mod rainbow;
mod two_cycles;

pub use cycles::{enumerate_cycles, for_each_cycle, MAX_ENUMERATED_CYCLES};
pub use girth::{girth, girth_exact};
pub use rainbow::{
    shortest_rainbow_cycle, shortest_rainbow_cycle_exact, shortest_rainbow_path, MAX_RAINBOW_ORACLE_N,
};
pub use two_cycles::{deg2_bound, deg2_short_cycle, two_cycles_min_intersection, TwoCyclePair};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("digraph has no directed cycle")]
    Acyclic,
    #[error("resource cap exceeded: {what} limited to {limit}")]
    ResourceCap { what: &'static str, limit: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("THEOREM VIOLATION (counterexample?): {0}")]
    TheoremViolation(String),
    #[error("BOUND VIOLATION (counterexample?): {0}")]
    BoundViolation(String),
}

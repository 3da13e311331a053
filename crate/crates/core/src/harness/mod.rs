//! Exhaustive and seeded verification over small instance spaces.

mod enumerate;
mod random;
mod ratio;
mod suite;

pub use enumerate::{
    arc_slots, enumerate_digraphs, enumerate_outmaps, is_strongly_connected, labeled_count,
    labeled_digraph, DigraphFilter, OutmapSpace, LABELED_CAP, OUTMAP_CAP,
};
pub use random::{
    derive_seed, disjoint_feasible, disjoint_pairings, mixed_rainbow_instance,
    random_rainbow_instance, RainbowMode, PAIRINGS_CAP, RAINBOW_CAP,
};
pub use ratio::{extremal_ratio_search, RatioSearch, RATIO_CAP};
pub use suite::{
    run_suite, Check, CheckTally, Generator, RatioRecord, Report, SuiteConfig, Tally, TightRecord,
    Violation, DEFAULT_RAINBOW_COUNT, MAX_STORED,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("{generator} generator is capped at n = {cap}, got n = {n}")]
    CapExceeded {
        generator: &'static str,
        n: usize,
        cap: usize,
    },
    #[error("no pairwise-disjoint instance with n = {n}, p = {p}: too few edges")]
    Infeasible { n: usize, p: usize },
    #[error("resource cap: {0}")]
    ResourceCap(String),
    #[error("{0}")]
    BadConfig(String),
}

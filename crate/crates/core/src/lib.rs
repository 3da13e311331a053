pub mod cli;
pub mod graph;
pub mod harness;
pub mod oracles;
pub mod peeling;
pub mod rainbow;

//! Graph types shared by every algorithm: simple digraphs, edge-family
//! systems, exact rationals, certificates and the text formats.

mod certificate;
mod digraph;
mod family;
mod rational;
pub mod text;

pub use certificate::{
    check_cycle, check_rainbow_cycle, rainbow_walk_vertices, validate_cycle,
    validate_rainbow_cycle, BoundKind, CertificateError, CycleCertificate, RainbowCycleCertificate,
    RainbowStep,
};
pub use digraph::Digraph;
pub use family::{Edge, EdgeRef, RainbowCycle, RainbowInstance};
pub use rational::Rational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate arc {0}->{1}")]
    DuplicateArc(usize, usize),
    #[error("family {0} is empty")]
    EmptyFamily(usize),
    #[error("family {family} has {size} edges; at most 2 allowed")]
    FamilyTooLarge { family: usize, size: usize },
    #[error("family {0} contains a loop")]
    LoopInFamily(usize),
    #[error("family {0} lists the same edge twice")]
    RepeatedEdgeInFamily(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

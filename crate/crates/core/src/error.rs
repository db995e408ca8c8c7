use alloc::string::String;

use crate::geometry::LegalityReport;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("negative vertex weight at index {0}")]
    NegativeWeight(usize),
    #[error("vertices {0} and {1} are adjacent; duplication requires a nonadjacent pair")]
    AdjacentPair(usize, usize),
    #[error("partition has {blocks} blocks but at most {max} are allowed")]
    TooManyBlocks { blocks: usize, max: usize },
    #[error("brute-force cap exceeded: {what} is {actual}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        actual: usize,
        cap: usize,
    },
    #[error("drawing is not legal ({} violation(s))", .0.violations.len())]
    IllegalDrawing(LegalityReport),
    #[error("no legal placement found: {0}")]
    NoLegalPlacement(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

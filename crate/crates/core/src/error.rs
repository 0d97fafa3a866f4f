use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("pivot needs two distinct vertices, got {0} twice")]
    SameVertex(usize),

    #[error("{what} supports order at most {max}, got {order}")]
    OrderTooLarge {
        what: &'static str,
        order: usize,
        max: usize,
    },

    #[error("{what} requires order at least {min}, got {order}")]
    OrderTooSmall {
        what: &'static str,
        order: usize,
        min: usize,
    },

    #[error("matrix dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("polynomial basis mismatch: expected {expected}, found {found}")]
    BasisMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("degree of the zero polynomial is undefined")]
    ZeroPolynomial,

    #[error("graph has loops; {0} requires a loopless graph")]
    LoopsNotAllowed(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("evaluators disagree on {graph}: expansion {expansion}, reduction {reduction}")]
    EvaluatorMismatch {
        graph: String,
        expansion: String,
        reduction: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

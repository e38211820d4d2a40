use thiserror::Error;

use crate::VertexSet;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid edge {edge:?}: {reason}")]
    InvalidEdge { edge: Vec<usize>, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("edge ({0}, {1}) is not in the graph")]
    EdgeNotFound(usize, usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unsupported graph class: {0}")]
    UnsupportedClass(String),

    #[error("{n} vertices exceeds the enumeration cap of {cap}; {hint}")]
    CapExceeded { n: usize, cap: usize, hint: String },

    #[error("set is not realizable; its closure is {closure:?}")]
    NotRealizable { closure: VertexSet },

    #[error("set is not stalled: the forcing rule applies at vertex {vertex}")]
    NotStalled { vertex: usize },

    #[error("family is not intersection-closed: {left:?} and {right:?}")]
    NotIntersectionClosed { left: VertexSet, right: VertexSet },

    #[error("not a matroid: {0}")]
    NotMatroid(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

impl Error {
    /// Stable machine-readable tag for error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidEdge { .. } => "invalid_edge",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::EdgeNotFound(..) => "edge_not_found",
            Error::VertexOutOfRange { .. } => "vertex_out_of_range",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::UnsupportedClass(_) => "unsupported_class",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::NotRealizable { .. } => "not_realizable",
            Error::NotStalled { .. } => "not_stalled",
            Error::NotIntersectionClosed { .. } => "not_intersection_closed",
            Error::NotMatroid(_) => "not_matroid",
            Error::Hypothesis(_) => "hypothesis_violation",
            Error::Invariant(_) => "invariant_failure",
        }
    }
}

/// Hard limit for bitmask enumeration.
pub const MASK_LIMIT: usize = 63;

pub(crate) fn check_cap(n: usize, cap: usize, hint: &str) -> Result<()> {
    if n > cap || n > MASK_LIMIT {
        return Err(Error::CapExceeded {
            n,
            cap: cap.min(MASK_LIMIT),
            hint: hint.to_string(),
        });
    }
    Ok(())
}

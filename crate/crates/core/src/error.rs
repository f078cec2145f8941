use thiserror::Error;

use crate::dynkin::Node;

/// Errors raised by the library.
///
/// Variants split into two families: domain rejections (the input is outside
/// the region where an operation is defined) and internal inconsistencies
/// (an arithmetic identity that must hold failed). The CLI maps them to exit
/// codes 1 and 2 respectively.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown diagram `{0}` (expected A<n>, D<n> with n >= 4, or E6/E7/E8)")]
    UnknownDiagram(String),

    #[error("node {node} is not a node of {diagram}")]
    NodeOutOfRange { node: Node, diagram: String },

    #[error("vector has {got} coordinates, diagram has rank {expected}")]
    RankMismatch { expected: usize, got: usize },

    #[error("operation requires a diagram of type D or E, got {0}")]
    NeedsTrivalentNode(String),

    #[error("subdiagram {0} is not connected")]
    Disconnected(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for failures of identities that should hold for every valid
    /// input. These indicate a bug, not a bad request.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Inconsistent(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

use crate::graph::{CommunityId, VertexId};

/// Errors produced while loading inputs or validating parameters.
#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list contains no edges")]
    EmptyGraph,

    #[error("vertex {0} has no community assignment")]
    MissingAssignment(VertexId),

    #[error("line {line}: vertex {vertex} is assigned more than once")]
    DuplicateAssignment { line: usize, vertex: VertexId },

    #[error("vertex {vertex} is out of range (graph has {vertex_count} vertices)")]
    VertexOutOfRange { vertex: u64, vertex_count: usize },

    #[error("community {0} does not exist")]
    UnknownCommunity(CommunityId),

    #[error("community {0} listed more than once in target set")]
    DuplicateTarget(CommunityId),

    #[error("target count {requested} out of range: need 2 <= k <= {available}")]
    TargetCountOutOfRange { requested: usize, available: usize },

    #[error("vertex set is empty")]
    EmptyVertexSet,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

use crate::multigraph::VertexId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("no edge between {0} and {1}")]
    MissingEdge(VertexId, VertexId),
    #[error("loop at {0}")]
    Loop(VertexId),
    #[error("vertex sets overlap")]
    OverlappingSets,
    #[error("cannot merge an empty set")]
    EmptyMerge,
    #[error("flow exceeded its bound; no cut available")]
    FlowExceeded,
    #[error("invalid separation: {0}")]
    InvalidSeparation(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("guard exceeded: {0}")]
    Guard(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

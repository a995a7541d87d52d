use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("element is elliptic, a hyperbolic element is required")]
    NotHyperbolic,
    #[error("element is hyperbolic, an elliptic element is required")]
    NotElliptic,
    #[error("characteristic spaces are disjoint")]
    Disjoint,
    #[error("shift length is undefined: {0}")]
    ShiftUndefined(String),
    #[error("every vertex and edge group must have rank 1")]
    NotRankOne,
    #[error("graph file: {0}")]
    Schema(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("tuples have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

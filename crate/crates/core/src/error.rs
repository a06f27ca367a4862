use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("invalid tiling: {0}")]
    InvalidTiling(String),

    #[error("occupancy is complete, no uncovered cell remains")]
    NoCell,

    #[error("region has no tiling by {0}-ribbons")]
    NoTiling(usize),

    #[error("entropy is undefined: region has no tiling by {0}-ribbons")]
    UndefinedEntropy(usize),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

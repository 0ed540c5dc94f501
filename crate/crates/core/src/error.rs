use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("neighbor index {index} out of range for vertex {vertex} (degree {degree})")]
    IndexOutOfRange {
        vertex: usize,
        index: usize,
        degree: usize,
    },

    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("epsilon {eps} out of range: {reason}")]
    Epsilon { eps: f64, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors reported by validation and by internal consistency checks.
///
/// `Inconsistency` is reserved for conditions that indicate a bug rather
/// than bad input (for example a box integral that should be nonnegative
/// coming out negative beyond tolerance); the CLI maps it to exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("edge {edge:?} is invalid: {reason}")]
    InvalidEdge { edge: Vec<u32>, reason: String },

    #[error("uniformity mismatch: expected k={expected}, got k={got}")]
    UniformityMismatch { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("index error: {0}")]
    IndexError(String),

    #[error("{0:?} is not a subset of the free index set")]
    NotSubsetOfFree(Vec<String>),

    #[error("index family is empty")]
    EmptyFamily,

    #[error("index families have different ground sets")]
    GroundMismatch,

    #[error("{0:?} do not partition the free index set")]
    NotPartition(Vec<String>),

    #[error("family is not an antichain: {0} contains {1}")]
    NotAntichain(String, String),

    #[error("template has {got} edges, exceeding its size bound {bound}")]
    SizeBoundExceeded { got: usize, bound: usize },

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

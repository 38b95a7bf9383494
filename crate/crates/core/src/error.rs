use thiserror::Error;

/// Errors produced by this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("invalid sample design: {0}")]
    InvalidDesign(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("count overflow while accumulating {0}")]
    Overflow(&'static str),

    #[error("zero inclusion probability for pattern {0} with nonzero counts")]
    ZeroProbability(&'static str),

    #[error("graph has {n} vertices, above the brute-force cap of {cap}; use exact counting instead")]
    OracleCap { n: usize, cap: usize },

    #[error("unknown graphlet {0:?}")]
    UnknownGraphlet(String),

    #[error("distribution subset has no mass")]
    EmptyDistribution,

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("sample is empty")]
    EmptySample,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

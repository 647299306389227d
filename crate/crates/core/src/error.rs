use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },

    #[error("{what} exceeds the guard: {got} > {limit}")]
    GuardExceeded {
        what: &'static str,
        limit: u64,
        got: u64,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("pair {x} / {y} is at inadmissible distance {distance}")]
    InadmissibleDistance { x: String, y: String, distance: u32 },

    #[error("ratio bound is void: smallest eigenvalue {lambda_min} is non-negative")]
    RatioBoundVoid { lambda_min: String },

    #[error("bound not certified: {0}")]
    Uncertified(String),

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

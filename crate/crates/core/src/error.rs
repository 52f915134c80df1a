use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("invalid graph: {0}")]
    Invalid(String),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: u32, n: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("instance too large for exhaustive search: {size} > limit {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("{0} is not a target set")]
    NotTargetSet(String),

    #[error("invalid reconfiguration sequence: {0}")]
    InvalidSequence(String),
}

impl Error {
    /// Maps an error onto the CLI exit-code convention (1 invalid input, 2 too large).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::TooLarge { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

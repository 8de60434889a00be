use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("inexact division")]
    InexactDivision,

    #[error("zero input to {0}")]
    ZeroInput(&'static str),

    /// A configured budget was exhausted. `limit` names the budget field.
    #[error("resource limit `{limit}` exceeded (limit {max}, reached {reached})")]
    Resource {
        limit: &'static str,
        max: usize,
        reached: usize,
    },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("term order does not eliminate {0}")]
    NotEliminating(String),

    #[error("term order is not admissible: {0}")]
    InadmissibleOrder(String),

    #[error("element is not weight-homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("unresolved (non-linear) components: {}", .0.join(", "))]
    Unresolved(Vec<String>),

    /// The brute-force oracle disagrees with a Gröbner result.
    #[error("oracle contradicts pipeline: {0}")]
    Contradiction(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

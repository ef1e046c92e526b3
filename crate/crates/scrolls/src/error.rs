use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by the scroll calculus.
///
/// The CLI maps these onto its exit codes: `Parse` is a textual input
/// problem, `Degenerate` means genericity retries were exhausted, and
/// `Resource` means an intermediate polynomial blew past the configured
/// caps.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at offset {offset}: {msg}")]
    Parse { offset: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("missing assignment for variable `{0}`")]
    MissingAssignment(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("rank drop at the given point: {0}")]
    RankDrop(String),

    #[error("rank collapse in {op}: achieved rank {achieved}, required {required}")]
    RankCollapse {
        op: String,
        achieved: usize,
        required: usize,
    },

    #[error("{op}: input scroll is not stationary")]
    NonStationary { op: String },

    #[error("{op}: scroll spans a linear subspace (derivation is a fixpoint)")]
    Fixpoint { op: String },

    #[error("precondition violated in {op}: {msg}")]
    Precondition { op: String, msg: String },

    #[error("no generic point found for {op} after {attempts} attempts")]
    Degenerate { op: String, attempts: u32 },

    #[error("resource cap exceeded in {op}: {what}")]
    Resource { op: String, what: String },

    #[error("internal consistency failure in {op}: {msg}")]
    Internal { op: String, msg: String },
}

impl Error {
    pub fn precondition(op: &str, msg: impl Into<String>) -> Self {
        Error::Precondition {
            op: op.to_string(),
            msg: msg.into(),
        }
    }

    pub fn internal(op: &str, msg: impl Into<String>) -> Self {
        Error::Internal {
            op: op.to_string(),
            msg: msg.into(),
        }
    }
}

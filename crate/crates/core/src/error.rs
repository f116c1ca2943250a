use thiserror::Error;

/// Everything that can go wrong while building or checking objects.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("operation `{op}` expects {expected} arguments, got {got}")]
    ArityMismatch {
        op: String,
        expected: usize,
        got: usize,
    },

    #[error("unknown operation `{0}`")]
    UnknownOperation(String),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("invalid algebra `{algebra}`: {reason}")]
    InvalidAlgebra { algebra: String, reason: String },

    #[error("not a congruence: {0}")]
    NotCongruence(String),

    #[error("map {src} -> {dst} is not a homomorphism: `{op}` at {args:?}")]
    NotHomomorphism {
        src: String,
        dst: String,
        op: String,
        args: Vec<usize>,
    },

    #[error("invalid map {src} -> {dst}: {reason}")]
    InvalidMap {
        src: String,
        dst: String,
        reason: String,
    },

    #[error("{0} is not surjective")]
    NotSurjective(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("{0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

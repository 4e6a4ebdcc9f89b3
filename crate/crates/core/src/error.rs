use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("eigensolver failed to converge (LAPACK info = {0})")]
    Eigensolver(i32),

    #[error("BLAS self-check failed: {0}")]
    Blas(String),

    #[error("swarm is empty: no chiral walkers and the non-chiral walker is excluded")]
    EmptySwarm,

    #[error("cannot evaluate a ranking without {0}")]
    EmptyClass(&'static str),

    #[error("the two graph versions share no node labels")]
    NoLabelOverlap,

    #[error("malformed score file: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("simplex budget exceeded: {reached} nondegenerate simplices > limit {limit}")]
    BudgetExceeded { limit: usize, reached: usize },

    #[error("malformed document {source_name}: {message}")]
    Malformed { source_name: String, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("not a sub-simplicial set: {0}")]
    NotSubcomplex(String),

    #[error("space is not connected (H_0 has rank {0})")]
    Disconnected(usize),

    #[error("degree {degree} is not computable on a skeleton truncated at dimension {top}")]
    Truncated { degree: usize, top: usize },

    #[error("mismatched complexes: {0}")]
    Mismatch(String),

    #[error("non-integral value: {0}")]
    NonIntegral(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("{path}: {source}")]
    File { path: String, source: std::io::Error },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn malformed(source_name: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Malformed { source_name: source_name.into(), message: message.into() }
    }

    pub(crate) fn file(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::File { path: path.display().to_string(), source }
    }
}

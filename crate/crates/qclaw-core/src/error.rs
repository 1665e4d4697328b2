use thiserror::Error;

/// Errors surfaced by instance construction, oracle access, and the finders.
#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range for domain of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("a cutoff is required: {0}")]
    MissingCutoff(String),

    #[error("unsupported witness structure: {0}")]
    UnsupportedStructure(String),

    #[error("degenerate relation: {0}")]
    DegenerateRelation(String),

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Every failure the library can report, grouped by the kind of caller mistake
/// or numerical breakdown that produced it.
#[derive(Debug, Error)]
pub enum QorwError {
    /// Shapes that do not fit together (mismatched dimensions, empty Kraus sets).
    #[error("structural error: {0}")]
    Structural(String),
    /// A numeric argument outside its admissible range.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// A computed quantity violated an invariant it must satisfy.
    #[error("numeric error: {0}")]
    Numeric(String),
    /// A configured size cap was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// An operation was called on a model it is not defined for.
    #[error("usage error: {0}")]
    Usage(String),
    #[error("model document: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, QorwError>;

use thiserror::Error;

/// Errors produced by the estimation pipeline and its front end.
#[derive(Debug, Error)]
pub enum Error {
    /// A physical or frequency parameter falls outside its admissible range.
    #[error("domain error: {0}")]
    Domain(String),
    /// Array or grid sizes are incompatible.
    #[error("size error: {0}")]
    Size(String),
    /// A lag or grid index lies outside the stored bounds.
    #[error("index error: {0}")]
    Index(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    /// A configuration file or override failed validation.
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

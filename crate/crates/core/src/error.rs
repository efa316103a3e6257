use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A vertex index fell outside `[0, n)`.
    #[error("vertex index {index} out of range for {n} vertices")]
    Dimension { index: usize, n: usize },

    /// A parameter outside its admissible domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed input text. Line numbers are 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An exponential routine refused an instance larger than its guard.
    #[error("instance has {n} vertices; exhaustive routine is limited to {max}")]
    SizeGuard { n: usize, max: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

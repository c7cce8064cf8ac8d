use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by the library. Input errors map to CLI exit code 2,
/// scale-guard errors to exit code 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("vertex {vertex} out of range for graph with {num_vertices} vertices")]
    InvalidVertex { vertex: usize, num_vertices: usize },

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("scale guard: {0}")]
    ScaleGuard(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn invalid_input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn scale_guard(msg: impl Into<String>) -> Self {
        Error::ScaleGuard(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

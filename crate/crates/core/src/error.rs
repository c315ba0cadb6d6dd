use thiserror::Error;

/// Errors raised by image construction, map validation and file loading.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("map is not continuous: points {x} and {y} are adjacent but their images {fx} and {fy} are neither equal nor adjacent")]
    Discontinuous {
        x: usize,
        y: usize,
        fx: usize,
        fy: usize,
    },

    #[error("{path}: line {line}, column {column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

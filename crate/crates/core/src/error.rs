use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {field}: {message}")]
    InvalidInstance { field: String, message: String },

    #[error("unknown node id {0}")]
    UnknownNode(usize),

    #[error("malformed solution: {0}")]
    Structural(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The request exceeds a documented size or time cap.
    #[error("refused: {0}")]
    Refused(String),

    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::InvalidInstance {
            field: field.into(),
            message: message.into(),
        }
    }
}

//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("empty file: {0}")]
    EmptyData(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("degenerate leaf: {0}")]
    DegenerateLeaf(String),

    #[error("unsupported mode: {0}")]
    UnsupportedMode(String),

    #[error("unknown loss '{0}' (expected cross_entropy or multiclass_exponential)")]
    UnknownLoss(String),

    #[error("model format version mismatch: found '{found}', expected '{expected}'")]
    ModelVersion { found: String, expected: String },

    #[error("model checksum mismatch (file corrupt or truncated)")]
    ModelChecksum,

    #[error("model file malformed: {0}")]
    ModelFormat(String),
}

impl Error {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

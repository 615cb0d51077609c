use std::path::PathBuf;

use crate::color::Illuminant;

/// Errors produced anywhere in the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("illuminant mismatch: expected {expected}, found {found}")]
    IlluminantMismatch {
        expected: Illuminant,
        found: Illuminant,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("cannot parse Munsell notation {input:?}: bad token {token:?} ({reason})")]
    MunsellParse {
        input: String,
        token: String,
        reason: &'static str,
    },

    #[error("chip database build failed; missing chips: {}", missing.join(", "))]
    MissingChips { missing: Vec<String> },

    #[error("{path}: row {row}: {message}")]
    Load {
        path: String,
        row: usize,
        message: String,
    },

    #[error("{0}")]
    Evaluation(String),

    #[error("inventory mismatch for {set}: missing codes {}", missing.join(", "))]
    InventoryMismatch { set: String, missing: Vec<String> },

    #[error("{path}: {source}")]
    Image {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn load(path: impl std::fmt::Display, row: usize, message: impl Into<String>) -> Self {
        Error::Load {
            path: path.to_string(),
            row,
            message: message.into(),
        }
    }
}

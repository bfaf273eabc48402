use std::path::PathBuf;

/// Errors raised by configuration, construction and I/O.
///
/// Evaluation faults (non-finite objective values) are not errors: they are
/// counted against the run and the offending point is treated as `+inf`.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unknown function `{0}`")]
    Catalog(String),

    #[error("construction error: {0}")]
    Construction(String),

    #[error("{path}: expected {expected} values ({detail}), found {found}")]
    Count {
        path: String,
        expected: usize,
        found: usize,
        detail: String,
    },

    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    #[error("aggregation error: {0}")]
    Aggregation(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

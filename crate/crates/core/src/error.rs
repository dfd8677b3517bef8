use std::path::PathBuf;

use thiserror::Error;

use crate::group::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero has no factorization")]
    Zero,

    #[error("{0}")]
    InvalidArgument(String),

    #[error("arithmetic overflow computing {0}; use a wider scalar type")]
    Overflow(&'static str),

    #[error("order spectrum support of {support} entries exceeds the limit of {limit}")]
    SpectrumTooLarge { support: usize, limit: usize },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("inconsistent profile: {0}")]
    InconsistentProfile(String),

    #[error("corrupt checkpoint {path}: {reason}")]
    CorruptCheckpoint { path: PathBuf, reason: String },

    #[error("composite n = {n} satisfies phi(n) | n-1 with k = {exact_k}\n{report}")]
    CompositeHit {
        n: u64,
        exact_k: u64,
        report: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

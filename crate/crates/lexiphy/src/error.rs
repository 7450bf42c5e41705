use std::path::PathBuf;

use lexiphy_core::align::AlignError;
use lexiphy_core::cognate::CognateError;
use lexiphy_core::eval::EvalError;
use lexiphy_core::ingest::IngestError;
use lexiphy_core::mcmc::McmcError;
use lexiphy_core::phylo::{NewickError, PhyloError};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: missing required column {column}")]
    MissingColumn { path: PathBuf, column: String },
    #[error("{path}, row {row}: duplicate ID {id}")]
    DuplicateId { path: PathBuf, row: usize, id: u64 },
    #[error("{path}, row {row}: empty IPA form")]
    EmptyForm { path: PathBuf, row: usize },
    #[error("{path}, row {row}: bad {column} value {value:?}")]
    BadField {
        path: PathBuf,
        row: usize,
        column: String,
        value: String,
    },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("log-posterior became NaN")]
    Numeric,
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Align(#[from] AlignError),
    #[error(transparent)]
    Cognate(#[from] CognateError),
    #[error(transparent)]
    Phylo(#[from] PhyloError),
    #[error(transparent)]
    Newick(#[from] NewickError),
    #[error(transparent)]
    Mcmc(McmcError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("manifest: {0}")]
    Json(#[from] serde_json::Error),
}

impl From<McmcError> for Error {
    fn from(e: McmcError) -> Self {
        match e {
            McmcError::NotANumber => Error::Numeric,
            McmcError::BadConfig(msg) => Error::Usage(msg.into()),
            other => Error::Mcmc(other),
        }
    }
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code: 2 usage, 3 data, 4 numeric.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 2,
            Error::Cognate(CognateError::UnknownMethod(_))
            | Error::Cognate(CognateError::BadThreshold(_))
            | Error::Cognate(CognateError::BadPrune(_))
            | Error::Cognate(CognateError::BadGramLength) => 2,
            Error::Numeric => 4,
            _ => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

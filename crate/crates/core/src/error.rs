use std::path::PathBuf;

use thiserror::Error;

/// A single problem found while parsing a configuration file.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigIssue {
    pub line: usize,
    pub key: String,
    pub message: String,
}

impl std::fmt::Display for ConfigIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("vorticity has nonzero mean {0:e}; the torus Poisson problem is not invertible")]
    NonZeroMean(f64),

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("oracle limited to n <= 32, got n = {0}")]
    OracleTooLarge(usize),

    #[error("non-finite state at step {step} (t = {time}); blow-up or instability")]
    NumericalBlowUp { step: usize, time: f64 },

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("exponent p = {0} was not recorded in the trajectory")]
    MissingExponent(f64),

    #[error("recording grids do not match: {0}")]
    TimeGridMismatch(String),

    #[error("all ensemble members failed")]
    AllMembersFailed,

    #[error("configuration errors:\n{}", .0.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("\n"))]
    Config(Vec<ConfigIssue>),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: malformed file: {message}")]
    Format { path: PathBuf, message: String },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

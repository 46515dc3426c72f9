use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("row {row}: unknown vertex `{token}`")]
    UnknownVertex { token: String, row: usize },

    #[error("row {row}: negative weight {weight}; edge weights must be non-negative (pass the negative-weight override to accept them)")]
    NegativeWeight { row: usize, weight: f64 },

    #[error("row {row}: weight is not a finite number")]
    NonFiniteWeight { row: usize },

    #[error("row {row}: edge endpoint {index} is out of range for {n} vertices")]
    EndpointOutOfRange { row: usize, index: u32, n: usize },

    #[error("vertex `{token}`: community {community} is outside 1..={k}")]
    LabelOutOfRange { token: String, community: u32, k: usize },

    #[error("vertex `{token}` has conflicting labels {first} and {second}")]
    ConflictingLabel { token: String, first: u32, second: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("{path}:{line}: {message}")]
    Parse { path: PathBuf, line: u64, message: String },

    #[error("{path}: {source}")]
    InFile { path: PathBuf, source: Box<Error> },

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("graph has {n} vertices, above the spectral baseline cap of {cap}; use the encoder embedding for graphs of this size")]
    TooLarge { n: usize, cap: usize },

    #[error("subspace iteration did not converge after {iterations} block steps (worst relative residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub(crate) fn in_file(path: impl Into<PathBuf>, source: Error) -> Self {
        Error::InFile { path: path.into(), source: Box::new(source) }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: u64, message: impl Into<String>) -> Self {
        Error::Parse { path: path.into(), line, message: message.into() }
    }

    /// Rough classification used by the command-line front end for exit codes.
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InFile { source, .. } => source.kind(),
            Error::Io { .. } => ErrorKind::Io,
            Error::NoConvergence { .. } => ErrorKind::Numerical,
            _ => ErrorKind::Validation,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Io,
    Numerical,
}

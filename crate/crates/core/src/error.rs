use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("exact division failed: {0}")]
    NotDivisible(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("prime {0} divides the leading coefficient")]
    BadPrime(u64),

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error(
        "need two non-reciprocal irreducible factors, found {nonreciprocal} \
         (plus {reciprocal} reciprocal)"
    )]
    NotTwoNonReciprocal { nonreciprocal: usize, reciprocal: usize },

    #[error("schedule error: {0}")]
    Schedule(String),

    #[error("hypothesis error: n_k = {nk} is below V = {v}")]
    Hypothesis { nk: u64, v: String },

    #[error("certificate inconsistent: {0}")]
    Consistency(String),

    #[error("resource limit: {message}")]
    Resource {
        message: String,
        checkpoint: Option<PathBuf>,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("invalid algebra: {0}")]
    Algebra(String),

    #[error("divergent integral: term {term} does not vanish at theta = {endpoint} (numerator {value:.3e})")]
    DivergentIntegral {
        term: &'static str,
        endpoint: &'static str,
        value: f64,
    },

    #[error("sector truncation not certified up to l = {0}")]
    Truncation(usize),

    #[error("insufficient resolution: {0}")]
    Resolution(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inconsistent record {record}: {identity}")]
    InconsistentRecord { record: String, identity: String },

    #[error("field {field} of {record} is external and allow_external is off")]
    ExternalField { record: String, field: String },

    #[error("line search stalled: {0}")]
    LineSearch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

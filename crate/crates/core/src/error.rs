use rabikit_specfun::SpecFunError;
use thiserror::Error;

use crate::scenario::ValidationError;

#[derive(Debug, Error)]
pub enum RabiError {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("momentum shift leaves the grid with amplitude {amplitude:e} ({context})")]
    GridOverflow { amplitude: f64, context: String },
    #[error("wave packet reached the {edge} edge with amplitude {amplitude:e} at tau = {tau}")]
    Aliasing { edge: &'static str, amplitude: f64, tau: f64 },
    #[error("special function failure at nu = {nu}, tau = {tau}: {source}")]
    SpecFun {
        nu: f64,
        tau: f64,
        #[source]
        source: SpecFunError,
    },
    #[error("tau = {tau} outside the sampled noise path [0, {end}]")]
    PhaseCoverage { tau: f64, end: f64 },
    #[error("derivative track needs {requested} complex values, capacity is {limit}")]
    Capacity { requested: usize, limit: usize },
    #[error("frame mismatch: expected {expected}")]
    Frame { expected: &'static str },
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("runs are not comparable: {0}")]
    Incomparable(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, RabiError>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> RabiError {
    RabiError::InvalidParameter { name, reason: reason.into() }
}

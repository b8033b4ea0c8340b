//! Error type shared by the library modules.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid selection: {0}")]
    InvalidSelection(String),
    #[error("unsupported region kind `{kind}` at index {index} for {operation}")]
    UnsupportedRegion { index: usize, kind: &'static str, operation: &'static str },
    #[error("edge lists have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("components cannot be joined within the length limit; shortest remaining link is {distance}")]
    JoinFailed { distance: f64 },
    #[error("budget exceeded: {what} needs {required}, budget is {budget}")]
    BudgetExceeded { what: &'static str, required: f64, budget: f64 },
    #[error("precision not reached: {0}")]
    Precision(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

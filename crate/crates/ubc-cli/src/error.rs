use thiserror::Error;
use ubc_gadgets::GadgetError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ubc_core::Error),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error("{path}: {source}")]
    File { path: String, source: std::io::Error },
}

pub type CliResult<T> = Result<T, CliError>;

/// Process exit codes.
pub mod code {
    pub const USAGE: i32 = 2;
    pub const BUDGET: i32 = 3;
    pub const PRECISION: i32 = 4;
    pub const IO: i32 = 5;
}

fn core_code(e: &ubc_core::Error) -> i32 {
    use ubc_core::Error::*;
    match e {
        BudgetExceeded { .. } => code::BUDGET,
        Precision(_) | JoinFailed { .. } => code::PRECISION,
        Io(_) => code::IO,
        _ => code::USAGE,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => code::USAGE,
            CliError::Core(e) | CliError::Gadget(GadgetError::Core(e)) => core_code(e),
            CliError::Gadget(_) => code::USAGE,
            CliError::File { .. } => code::IO,
        }
    }
}

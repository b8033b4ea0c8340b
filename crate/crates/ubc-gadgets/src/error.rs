use thiserror::Error;

pub type Result<T, E = GadgetError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum GadgetError {
    #[error("DIMACS line {line}: {msg}")]
    Dimacs { line: usize, msg: String },
    #[error("invalid formula: {0}")]
    Formula(String),
    #[error("layout does not fit the formula: {0}")]
    Layout(String),
    #[error("unknown bundled layout `{0}`")]
    UnknownBundled(String),
    #[error("assignment has {got} values for {expected} variables")]
    Assignment { expected: usize, got: usize },
    #[error(transparent)]
    Core(#[from] ubc_core::Error),
}

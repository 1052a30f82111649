use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("family is not degenerate: {0}")]
    NotDegenerate(String),
    #[error("outside the valid regime: {0}")]
    Regime(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("resampling exhausted after {trials} trials at step {step}")]
    ResampleExhausted { trials: usize, step: usize },
    #[error("step budget exceeded after {0} steps")]
    StepBudget(usize),
    #[error("empty selection: {0}")]
    EmptySelection(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid_param(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

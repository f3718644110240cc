use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid grading: {0}")]
    InvalidGrading(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("not an L-space knot: {0}")]
    NotLSpaceKnot(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("inconsistent model: {0}")]
    InconsistentModel(String),

    #[error("wrong dispatch: {0}")]
    WrongDispatch(String),

    #[error("not an L-space knot surgery: {0}")]
    NotLSpaceSurgery(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("model validation failed: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

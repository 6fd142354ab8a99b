use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("every input polynomial is zero")]
    AllZero,
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("problem too large: {size} exceeds the limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("unsupported degree: {0}")]
    UnsupportedDegree(String),
    #[error("pole at sample point: {0}")]
    PoleAtSample(String),
    #[error("invalid template: {0}")]
    InvalidTemplate(String),
    #[error("numeric evaluation failed: {0}")]
    Numeric(String),
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::Validation(_) => "ValidationError",
            Error::AllZero => "AllZero",
            Error::NotInvertible(_) => "NotInvertible",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::TooLarge { .. } => "TooLarge",
            Error::UnsupportedDegree(_) => "UnsupportedDegree",
            Error::PoleAtSample(_) => "PoleAtSample",
            Error::InvalidTemplate(_) => "InvalidTemplate",
            Error::Numeric(_) => "NumericError",
        }
    }
}

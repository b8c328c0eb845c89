use thiserror::Error;

/// Errors raised by the arithmetic layers, the registry and the runner.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("value is not a unit modulo p")]
    NotAUnit,
    #[error("division by zero")]
    DivisionByZero,
    #[error("insufficient precision: need {needed} p-adic digits, have {available}")]
    InsufficientPrecision { needed: i64, available: i64 },
    #[error("value is not p-integral")]
    NotPIntegral,
    #[error("unsupported index {0}")]
    UnsupportedIndex(i64),
    #[error("index {index} out of range (max {max})")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("unknown registry id or expression: {0}")]
    Unknown(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

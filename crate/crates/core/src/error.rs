use thiserror::Error;

/// Errors raised by the arithmetic, classification and verification layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("element is divisible by the prime {0}")]
    NotCoprime(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The radicand is a perfect fifth power, so the field collapses to Q.
    #[error("degenerate radicand {0}: perfect fifth power")]
    Degenerate(u64),

    #[error("fixture {path}, line {line}: {message}")]
    Fixture {
        path: String,
        line: u64,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("oracle protocol error: {message} (raw: {raw:?})")]
    OracleProtocol { message: String, raw: String },
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

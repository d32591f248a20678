use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{n} does not fit in 32 bits")]
    OrderOverflow { p: u64, n: u32 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("modulus is reducible over Z_{0}")]
    ReducibleModulus(u32),
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("invalid element encoding: {0}")]
    InvalidElement(String),
    #[error("operation requires characteristic 2")]
    NeedsCharTwo,
    #[error("operation requires odd characteristic")]
    NeedsOddCharacteristic,
    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,
    #[error("{m} does not divide q - 1 = {order}")]
    NoRootOfUnity { m: u64, order: u64 },
    #[error("invalid function: {0}")]
    InvalidFunction(String),
    #[error("hypothesis of {theorem} not met: {reason}")]
    Hypothesis { theorem: String, reason: String },
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn hypothesis(theorem: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Hypothesis {
            theorem: theorem.into(),
            reason: reason.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

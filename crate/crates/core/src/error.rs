use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: wrong length, out-of-range index, bad modulus, ...
    InvalidInput(String),
    /// A monomial expected in a sorted basis was absent. Always a basis bug.
    NotFound(String),
    /// A computed quantity disagreed with what the construction guarantees.
    Pipeline(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::NotFound(msg) => write!(f, "not found: {msg}"),
            Error::Pipeline(msg) => write!(f, "pipeline failure: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::error::Error::InvalidInput(alloc::format!($($arg)*))
    };
}

macro_rules! pipeline_failure {
    ($($arg:tt)*) => {
        $crate::error::Error::Pipeline(alloc::format!($($arg)*))
    };
}

pub(crate) use invalid;
pub(crate) use pipeline_failure;

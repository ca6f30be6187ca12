use std::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument left the mathematical domain of an operation
    /// (e.g. evaluating a transform at a singular endpoint).
    Domain { what: &'static str, value: f64 },
    /// Inconsistent construction (length/domain mismatch, bad parameter).
    Config(String),
    /// A text input (generating-vector file) failed to parse.
    Parse { line: usize, message: String },
    /// The integrand was non-finite at a cubature node.
    NonFiniteNode { index: usize, point: Vec<f64> },
    /// Operation not available for the given inputs.
    Unsupported(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => {
                write!(f, "domain error: {what} (got {value})")
            }
            Error::Config(msg) => write!(f, "configuration error: {msg}"),
            Error::Parse { line, message } => {
                write!(f, "parse error on line {line}: {message}")
            }
            Error::NonFiniteNode { index, point } => write!(
                f,
                "non-finite integrand value at node {index} (t = {point:?}); \
                 this usually signals an endpoint-singular configuration"
            ),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("mismatched quadratic fields: sqrt({left}) vs sqrt({right})")]
    FieldMismatch { left: u32, right: u32 },

    #[error("invalid field discriminant {0}: must be a square-free integer greater than 1")]
    InvalidDiscriminant(u32),

    #[error("no ordering between values of different quadratic fields")]
    Incomparable,

    #[error("unknown operator `{0}`")]
    UnknownOperator(String),

    #[error("operator `{0}` requires a parameter")]
    MissingParameter(String),

    #[error("operator `{name}` does not take a parameter")]
    UnexpectedParameter { name: String },

    #[error("invalid parameter for `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("composition {left} * {right} needs an infinite inner sum")]
    InfiniteSum { left: String, right: String },

    #[error("operator `{0}` is unbounded above the diagonal; use the upper-summation rules")]
    UnboundedUpper(String),

    #[error("series diverges classically for ratio {ratio}; use continued summation")]
    DivergentSum { ratio: String },

    #[error("continued sum has a pole at ratio {ratio}")]
    PoleError { ratio: String },

    #[error("sequence class `{class}` is not supported here: {reason}")]
    UnsupportedSequenceClass { class: String, reason: String },

    #[error("orthogonality pair cannot be evaluated exactly: {0}")]
    UnsupportedPair(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("term {index} is not an integer: {value}")]
    NonIntegerSequence { index: usize, value: String },

    #[error("network error: {0}")]
    Network(String),

    #[error("no cached or fixture response for prefix {0}")]
    CacheMiss(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

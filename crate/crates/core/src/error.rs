use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("variable index {index} out of range for arity {arity}")]
    VariableOutOfRange { index: usize, arity: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("malformed symplectic form: {0}")]
    MalformedForm(String),

    #[error("matrix is singular")]
    Singular,

    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("floating-point literal '{literal}' at column {column}; exact rationals are written p/q, e.g. {suggestion}")]
    FloatLiteral {
        column: usize,
        literal: String,
        suggestion: String,
    },

    #[error("unknown variable '{name}' at column {column}")]
    UnknownVariable { column: usize, name: String },

    #[error("the formal parameter h is not allowed in a polynomial (column {column})")]
    HbarNotAllowed { column: usize },

    #[error("invalid surface: {0}")]
    InvalidSurface(String),

    #[error("unknown chart {0}")]
    UnknownChart(usize),

    #[error("unknown overlap {0}")]
    UnknownOverlap(usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("map is not symplectic: {0}")]
    NotSymplectic(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn arity(expected: usize, found: usize) -> Self {
        Error::ArityMismatch { expected, found }
    }
}

pub(crate) fn check_arity(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::arity(expected, found))
    }
}

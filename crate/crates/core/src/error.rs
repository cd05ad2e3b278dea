use thiserror::Error;

use crate::scalar::Ring;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Location-tagged failure while reading scalar literals, matrices or
/// certificate documents. Lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self { line, column, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("ring mismatch: expected {expected}, found {found}")]
    RingMismatch { expected: Ring, found: Ring },
    #[error("matrix is not strictly upper triangular")]
    NotStrictlyUpper,
    #[error("matrix is not upper triangular with diagonal entries in {{+1, -1}}")]
    NotSignedUnipotent,
    #[error("matrix is singular")]
    Singular,
    #[error("diagonal entry ({0}, {0}) is not 1")]
    NotUnipotent(usize),
    #[error("superdiagonal entry ({0}, {1}) is zero")]
    NotStar(usize, usize),
    #[error("matrix is not a nilpotent Jordan matrix")]
    NotJordanForm,
    #[error("g does not satisfy gJ = -Jg")]
    NotAReverser,
    #[error("paired-block witness violated: {0}")]
    WitnessViolation(String),
    #[error("the zero matrix admits no paired-block witness")]
    NotApplicable,
    #[error("the zero matrix is trivially reversed by the identity")]
    ZeroInput,
    #[error("dimension {n} exceeds the oracle bound {limit}")]
    DimensionTooLarge { n: usize, limit: usize },
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

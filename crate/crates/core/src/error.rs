use thiserror::Error;

/// Errors raised by the library. Variants mirror the failure modes of the
/// individual operations; the CLI maps them onto exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("extension degree {0} out of range (expected 1..=8)")]
    DegreeOutOfRange(u32),
    #[error("field of order {p}^{m} is too large for the element encoding")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("invalid field modulus: {0}")]
    BadModulus(String),
    #[error("fields do not match: {0}")]
    FieldMismatch(String),
    #[error("matrix is not nilpotent of exponent {p}")]
    NotNilpotent { p: usize },
    #[error("generator X_{0} is not nilpotent of exponent p")]
    NotNilpotentGenerator(usize),
    #[error("generators X_{0} and X_{1} do not commute")]
    NonCommuting(usize, usize),
    #[error("Jordan types have unequal totals ({0} vs {1})")]
    UnequalTotals(usize, usize),
    #[error("the zero point has no shifted subgroup")]
    ZeroPoint,
    #[error("mismatched context: {0}")]
    MismatchedContext(String),
    #[error("generating vectors are linearly dependent")]
    DependentGenerators,
    #[error("change-of-basis matrix is singular")]
    SingularBasis,
    #[error("request too large: {0}")]
    TooLarge(String),
    #[error("duplicate direction {0}")]
    DuplicateDirection(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("parse failure at position {pos}: {msg}")]
    ParseFailure { pos: usize, msg: String },
    #[error("malformed module file: {0}")]
    BadFile(String),
    #[error("dimension mismatch: {0}")]
    Shape(String),
}

pub type Result<T> = std::result::Result<T, Error>;

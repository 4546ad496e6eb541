use thiserror::Error;

/// Errors produced by algebra construction, linear algebra and the homology drivers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid signature (p={p}, q={q}): {reason}")]
    InvalidSignature { p: usize, q: usize, reason: String },

    #[error("invalid dimension {0}: must be at least 1")]
    InvalidDimension(usize),

    #[error("invalid basis label {0}")]
    InvalidLabel(String),

    #[error("module law fails for generator pair ({a}, {b})")]
    ModuleLaw { a: usize, b: usize },

    #[error("malformed structure: {0}")]
    Malformed(String),

    #[error("space mismatch: expected {expected}, found {found}")]
    SpaceMismatch { expected: String, found: String },

    #[error("generator index {index} out of range for {count} generators")]
    GeneratorOutOfRange { index: usize, count: usize },

    #[error("size cap exceeded for {what}: {size} > {cap}")]
    CapExceeded { what: String, size: usize, cap: usize },

    #[error("prime {0} divides a denominator")]
    DenominatorDivisible(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("boundary of boundary is nonzero in degree {0}")]
    DifferentialCheck(usize),

    #[error("out of range: {0}")]
    OutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;

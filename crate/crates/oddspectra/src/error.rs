use thiserror::Error;

/// Errors surfaced by field construction and the analysis entry points.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported; the quadratic character needs odd q")]
    EvenCharacteristic,
    #[error("extension degree must be at least 1")]
    InvalidDegree,
    #[error("field order {q} exceeds the supported maximum {max}")]
    FieldTooLarge { q: u128, max: u64 },
    #[error("element index {idx} is out of range for a field of order {q}")]
    IndexOutOfRange { idx: u64, q: u64 },
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("square roots are only defined here for q = 3 (mod 4), got q = {q}")]
    SqrtUnsupported { q: u64 },
    #[error("q = {q} does not satisfy q = {needed}")]
    ResidueMismatch { q: u64, needed: &'static str },
    #[error("{0}")]
    InvalidArgument(&'static str),
    #[error("internal consistency check failed: {0}")]
    IdentityViolation(String),
    #[error("full boomerang tables are capped at q <= {cap}, got q = {q} (raise the cap to override)")]
    FullTableCap { q: u64, cap: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

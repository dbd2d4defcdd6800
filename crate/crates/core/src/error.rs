use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("dual polynomial undefined: constant term is zero")]
    ZeroConstantTerm,
    #[error("not c-real: elementary divisor {witness} has no dual partner of equal multiplicity")]
    NotCReal { witness: String },
    #[error("factorization unsupported over {0}")]
    FactorizationUnsupported(String),
    #[error("enumeration cap exceeded: {needed} > {cap}")]
    CapExceeded { needed: u128, cap: u128 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

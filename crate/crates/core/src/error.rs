use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} has no inverse modulo {1}")]
    NoInverse(u64, u64),

    #[error("multiplicative order of {0} modulo {1} is undefined")]
    OrderUndefined(u64, u64),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("value exceeds 64-bit range: {0}")]
    TooLarge(String),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("formula inapplicable: {0}")]
    FormulaInapplicable(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invariant violated: {0}")]
    InvariantViolated(String),

    #[error("cyclotomic order {0} is unsupported (1..=64)")]
    UnsupportedOrder(u64),
}

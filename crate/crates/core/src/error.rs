use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the group model and the solvers.
///
/// Row and column indices are stored zero-based and displayed one-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative factor order {0}")]
    NegativeOrder(BigInt),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("group mismatch: element does not belong to the expected group")]
    GroupMismatch,
    #[error("homomorphism is not well defined at entry (row {}, column {})", .row + 1, .col + 1)]
    InvalidHomomorphism { row: usize, col: usize },
    #[error("divisibility condition violated at entry (row {}, column {})", .row + 1, .col + 1)]
    Divisibility { row: usize, col: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("expected a {0}")]
    WrongShape(String),
    #[error("group of order {order} exceeds the enumeration budget {budget}")]
    BudgetExceeded { order: BigInt, budget: u64 },
    #[error("homomorphism is not an automorphism")]
    NotAutomorphism,
    #[error("mismatched decomposition parts: {0}")]
    PartMismatch(String),
    #[error("strategy not applicable: {0}")]
    Inapplicable(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

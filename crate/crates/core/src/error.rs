use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in tropical arithmetic")]
    Overflow,
    #[error("division by the epsilon element")]
    DivisionByEpsilon,
    #[error("epsilon raised to non-positive power {0}")]
    EpsilonPower(i64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square")]
    NotSquare,
    #[error("empty polynomial")]
    EmptyPolynomial,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{what}: gave up after {attempts} attempts")]
    AttemptsExhausted { what: &'static str, attempts: u32 },
    #[error("monomial count {size} exceeds cap {cap}")]
    MonomialCap { cap: usize, size: usize },
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("attack failed: {0}")]
    AttackFailed(&'static str),
    #[error("DIMACS line {line}: {msg}")]
    Dimacs { line: usize, msg: String },
    #[error("search space of {size} candidates exceeds budget {budget}")]
    BudgetExceeded { size: u128, budget: u128 },
    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),
    #[error("parse error: {0}")]
    Parse(String),
}

//! Error type shared by every module in the crate.

/// Failure modes of exact-arithmetic and search routines.
///
/// Variants are deliberately coarse: callers branch on the class of
/// failure (bad input vs. unmet precondition vs. exhausted search), not
/// on details, which live in the message.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational {0} is not a perfect square")]
    NonSquareRational(String),
    #[error("characteristic 2 is unsupported")]
    EvenCharacteristic,
    #[error("{0} is not an odd prime below 2^31")]
    BadPrime(u64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("evaluation at zero hit a term of negative degree {0}")]
    NegativeDegree(i64),
    #[error("supplied columns are linearly dependent")]
    DependentColumns,
    #[error("coefficient vector must be nonzero")]
    ZeroCoefficients,
    #[error("enumeration budget exceeded: needs {needed}, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("exhaustive enumeration is unavailable over the rationals")]
    RationalEnumeration,
    #[error("search failed: {0}")]
    NotFound(String),
    #[error("rank precondition unmet: {0}")]
    RankPrecondition(String),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("matrix is singular")]
    Singular,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

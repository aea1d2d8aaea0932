use thiserror::Error;

/// Errors raised by the construction and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported root system series `{0}` (only A is implemented)")]
    UnsupportedSeries(String),
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("simple root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("weight {0} is not a non-negative integral combination of simple roots")]
    NotInPositiveCone(String),
    #[error("weight has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot invert {0}: numerator does not split into affine factors")]
    NotInvertible(String),
    #[error("exponent {0} is not integral")]
    NonIntegralExponent(String),
    #[error("Cartan factor with identically zero difference {0}")]
    ZeroCartanFactor(String),
    #[error("simple root α_{0} does not belong to the subalgebra g")]
    NotInSubalgebra(usize),
    #[error("{0} is not a root of the ambient algebra")]
    NotARoot(String),
    #[error("root {0} does not lie in the complement of g")]
    NotComplementRoot(String),
    #[error("invalid graded module: {0}")]
    InvalidModule(String),
    #[error("reachability relation has a cycle through node {0}")]
    CyclicOrder(usize),
    #[error("node {0} does not exist")]
    UnknownNode(usize),
    #[error("route operation precondition failed: {0}")]
    RoutePrecondition(String),
    #[error("zero element has no leading term")]
    ZeroElement,
    #[error("projector oracle supports g of rank at most 2, got rank {0}")]
    UnsupportedOracleRank(usize),
    #[error("projector series did not terminate within {0} terms")]
    TruncationExceeded(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

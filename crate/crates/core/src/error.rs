use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not inert in Q(sqrt6)")]
    NotInert(u64),
    #[error("denominator divisible by {0}")]
    DenominatorNotUnit(u64),
    #[error("singular curve or model: {0}")]
    Singular(String),
    #[error("point not on curve: {0}")]
    NotOnCurve(String),
    #[error("bad reduction at {0}")]
    BadReduction(u64),
    #[error("pole of fractional-linear map")]
    Pole,
    #[error("point outside the formal chart: {0}")]
    OutsideChart(String),
    #[error("insufficient precision: {0}")]
    Precision(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

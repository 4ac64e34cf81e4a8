use thiserror::Error;

use crate::yy::YyType;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),

    #[error("exponent matrix is singular")]
    SingularSystem,

    #[error("exponent system has a non-positive solution entry (w/d = {0})")]
    NonPositiveSolution(String),

    #[error("weights {weights:?} have gcd {gcd} != 1")]
    GcdNotOne { weights: Vec<u64>, gcd: u64 },

    #[error("Yau-Yu type {0} is not standard; weight solving is unsupported")]
    UnsupportedType(YyType),

    #[error("quasi-smoothness lost: {0}")]
    QuasiSmoothnessLost(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("mathematical inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    /// Errors that signal a broken mathematical invariant rather than bad
    /// input (non-integer genus, Kollár violation, ...).
    pub fn is_inconsistency(&self) -> bool {
        matches!(self, Error::Inconsistency(_))
    }
}

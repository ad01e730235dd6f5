//! Exact integer and rational arithmetic: dense integer polynomials in `x`
//! and truncated power series in `u` and `x`.

mod poly;
mod series;

pub use poly::IntPolynomial;
pub use series::{series_compose, series_exp, series_reversion, RationalSeries, Var};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactAlgError {
    #[error("{dividend} is not divisible by {divisor} over the integers")]
    NotDivisible { dividend: String, divisor: String },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("series is not reversible: linear coefficient must be 1")]
    NotReversible,
    #[error("series are not univariate in a common variable")]
    VariableMismatch,
    #[error("series has a term without any factor of the divisor variable")]
    NotDivisibleByVariable,
    #[error("exponential does not terminate: a term involves no truncated variable")]
    NonTerminatingExp,
    #[error("invalid coefficient {0:?}")]
    BadCoefficient(String),
    #[error("invalid polynomial JSON: {0}")]
    Json(String),
}

//! Exact arithmetic substrate: rationals, sparse trivariate polynomials and
//! normalized rational functions over a fixed three-variable chart.

mod chart;
mod gcd;
mod point;
mod poly;
mod ratfunc;

pub use chart::Chart;
pub(crate) use chart::is_identifier;
pub use gcd::gcd;
pub use point::{evaluate, Point3, Value};
pub use poly::{Monomial, Poly3};
pub(crate) use poly::coefficient_normalizer;
pub use ratfunc::RationalFunction;

/// Arbitrary-precision rational numbers, always stored in lowest terms with a
/// positive denominator.
pub type BigRational = num_rational::BigRational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("variable charts differ: ({left}) vs ({right})")]
    ChartMismatch { left: String, right: String },
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("negative exponent {0} is not allowed for polynomials")]
    NegativeExponent(i64),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular point: denominator {denominator} vanishes at ({point})")]
    SingularPoint { denominator: String, point: String },
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;

/// Convenience constructor for small integer rationals.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

//! Exterior and vector calculus with rational-function coefficients on a
//! three-variable chart.
//!
//! Two-forms use the basis `(dy∧dz, dz∧dx, dx∧dy)`, so a one-form `A·dx` has
//! `d(A·dx)` with coefficients `∇×A`, and a two-form with coefficients `B` has
//! `d` equal to `(∇·B) dx∧dy∧dz`.

mod field;
mod form;
mod integral;

pub use field::{cross, curl, directional_derivative, div, dot, grad, lie_bracket, triple, VectorField3};
pub use form::{exterior_derivative, interior_product, lie_derivative, wedge, KForm};
pub use integral::{integral_differential, LogIntegral};

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalculusError {
    #[error("wedge of grades {0} and {1} exceeds 3")]
    GradeOverflow(u8, u8),
    #[error("exterior derivative of a 3-form is not defined on a 3-dimensional chart")]
    TopGrade,
    #[error("interior product of a 0-form")]
    ContractScalar,
    #[error("log argument is identically zero")]
    ZeroLogArgument,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub type Result<T, E = CalculusError> = std::result::Result<T, E>;

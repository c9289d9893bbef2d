//! Floating-point oracle: sampling symbolic residuals at random points,
//! central-difference checks of the calculus operators, and fixed-step RK4
//! integration with first-integral drift monitoring.

mod compiled;
mod fd;
mod rk4;
mod sample;

pub use compiled::{CompiledField, CompiledRational};
pub use fd::{fd_identity, finite_difference_check, FdKind};
pub use rk4::{conservation_drift, convergence_order, rk4_integrate, Trajectory};
pub use sample::{sample_identity, SampleBox, SampleOptions, SampleVerdict};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("step size must be positive and finite, got {0}")]
    InvalidStep(f64),
    #[error("integration stopped near a singularity at t = {time}; last safe time {last_safe_time}")]
    Singular { time: f64, last_safe_time: f64 },
    #[error("first integral is singular at t = {time}")]
    SingularIntegral { time: f64 },
    #[error("singular stencil point ({0}, {1}, {2})")]
    SingularStencil(f64, f64, f64),
    #[error("all {0} sample points were singular")]
    Inconclusive(usize),
    #[error("{kind:?} does not apply to a {grade}-form")]
    WrongGrade { kind: FdKind, grade: u8 },
    #[error("need at least one sample point")]
    NoPoints,
}

pub type Result<T, E = NumericError> = std::result::Result<T, E>;

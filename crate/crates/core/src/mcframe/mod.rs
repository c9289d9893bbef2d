//! sl(2) frames, their dual one-forms and the identities tying them to the
//! flow: last multiplier, Maurer–Cartan equations, conformal changes,
//! Frobenius tests, curl/potential relations, Heisenberg frames and
//! (bi-)Hamiltonian structure.

mod conformal;
mod hamiltonian;
mod heisenberg;
mod report;
mod sl2;

pub use conformal::{conformal_transform, sigma_residual, SigmaResidual};
pub use hamiltonian::{bihamiltonian_verify, hamiltonian_field, jacobi_residual, PoissonVector};
pub use heisenberg::{heisenberg_verify, HeisenbergFrame};
pub use report::{Check, Expect, Residual, VerificationReport};
pub use sl2::{
    curl_identities, dual_forms, frame_suite, frobenius_checks, frobenius_residual, last_multiplier,
    potential_from_gamma, proportionality_constant, verify_duality, verify_maurer_cartan, verify_multiplier,
    verify_potential, verify_sl2, PotentialVector, Sl2Frame,
};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::calculus::{CalculusError, VectorField3};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McframeError {
    #[error("degenerate frame: (v x u).w vanishes identically")]
    DegenerateFrame,
    #[error("conformal factor is identically zero")]
    ZeroRho,
    #[error("curl {curl} is not a constant multiple of {target}")]
    NotProportional { curl: VectorField3, target: VectorField3 },
    #[error("not a Poisson vector: J.(curl J) = {0}")]
    NotPoisson(String),
    #[error("expected a one-form, got a {0}-form")]
    NotOneForm(u8),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
}

impl From<AlgebraError> for McframeError {
    fn from(e: AlgebraError) -> Self {
        McframeError::Calculus(e.into())
    }
}

pub type Result<T, E = McframeError> = std::result::Result<T, E>;

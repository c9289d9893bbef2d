use thiserror::Error;

use crate::algebra::{BigRational, RationalFunction};
use crate::calculus::{lie_bracket, lie_derivative, KForm, VectorField3};
use crate::mcframe::{Check, Sl2Frame, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("grading weights must be (1, 2, 3), got {0:?}")]
    UnsupportedWeights([i64; 3]),
}

/// Euler field `E = Σ wᵢ xⁱ ∂ᵢ`; `f` has weight `k` iff `E(f) = k f`.
fn euler_field(chart: &crate::algebra::Chart, weights: [i64; 3]) -> VectorField3 {
    VectorField3::new([0, 1, 2].map(|i| RationalFunction::var(chart, i).scale(&BigRational::from_integer(weights[i].into()))))
}

/// Quasi-homogeneity under `[x] = 1, [y] = 2, [z] = 3`: when `[E, v] = v`,
/// checks `[M] = −6`, `[α] = 0`, `[β] = −1`, `[γ] = 1` through the residuals
/// `L_E θ − k θ` (which count `[dxⁱ] = wᵢ`). Otherwise adds a
/// "not applicable" note and no checks.
pub fn grading_check(frame: &Sl2Frame, weights: [i64; 3]) -> Result<VerificationReport, GradingError> {
    if weights != [1, 2, 3] {
        return Err(GradingError::UnsupportedWeights(weights));
    }
    let mut r = VerificationReport::default();
    let e = euler_field(frame.m.chart(), weights);
    if lie_bracket(&e, &frame.v) != frame.v {
        r.notes.push("grading not applicable: v is not quasi-homogeneous under weights (1, 2, 3)".into());
        return Ok(r);
    }
    let k = |n: i64| BigRational::from_integer(n.into());
    let weighted = |name: &str, w: &KForm, expected: i64| {
        let residual = &lie_derivative(&e, w) - &w.scale_const(&k(expected));
        Check::zero(&format!("grading.{name}"), &format!("[{name}] = {expected}"), residual)
    };
    r.push(weighted("M", &KForm::Zero(frame.m.clone()), -6));
    r.push(weighted("alpha", &frame.alpha, 0));
    r.push(weighted("beta", &frame.beta, -1));
    r.push(weighted("gamma", &frame.gamma, 1));
    Ok(r)
}

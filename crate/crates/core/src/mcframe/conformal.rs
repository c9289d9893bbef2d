use super::{McframeError, Result};
use crate::algebra::{rat, RationalFunction};
use crate::calculus::{grad, wedge, exterior_derivative, KForm};

/// `d log ρ` as the rational one-form `dρ/ρ`.
fn dlog(rho: &RationalFunction) -> Result<KForm> {
    if rho.is_zero() {
        return Err(McframeError::ZeroRho);
    }
    Ok(KForm::One(grad(rho).scale(&rho.inv()?)))
}

/// `β ↦ ρβ`, `α ↦ α − ½ d log ρ`, `γ ↦ γ/ρ`. The Maurer–Cartan equations are
/// preserved; the duality pairings are not (`ι_v(ρβ) = ρ`).
pub fn conformal_transform(
    alpha: &KForm,
    beta: &KForm,
    gamma: &KForm,
    rho: &RationalFunction,
) -> Result<(KForm, KForm, KForm)> {
    let dl = dlog(rho)?;
    let alpha2 = alpha - &dl.scale_const(&rat(1, 2));
    Ok((alpha2, beta.scale(rho), gamma.scale(&rho.inv()?)))
}

/// Integrability test for `σ = α − ½ d log ρ + fγ`.
///
/// With `a = α − ½ d log ρ` and the Maurer–Cartan equations in force,
/// `σ∧dσ = a∧(df − β)∧γ − f·d log ρ∧α∧γ`. `factored` is the first term and
/// `correction` the second, which vanishes when `ρ` is constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaResidual {
    pub sigma: KForm,
    pub direct: KForm,
    pub factored: KForm,
    pub correction: KForm,
}

pub fn sigma_residual(
    alpha: &KForm,
    gamma: &KForm,
    beta: &KForm,
    rho: &RationalFunction,
    f: &RationalFunction,
) -> Result<SigmaResidual> {
    let dl = dlog(rho)?;
    let a = alpha - &dl.scale_const(&rat(1, 2));
    let sigma = &a + &gamma.scale(f);
    let direct = wedge(&sigma, &exterior_derivative(&sigma)?)?;
    let df = exterior_derivative(&KForm::Zero(f.clone()))?;
    let factored = wedge(&wedge(&a, &(&df - beta))?, gamma)?;
    let correction = -&wedge(&wedge(&dl, alpha)?, gamma)?.scale(f);
    Ok(SigmaResidual { sigma, direct, factored, correction })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Chart;
    use crate::calculus::VectorField3;
    use crate::mcframe::{verify_maurer_cartan, Sl2Frame};

    fn vars() -> [RationalFunction; 3] {
        let c = Chart::xyz();
        [0, 1, 2].map(|i| RationalFunction::var(&c, i))
    }

    fn k(n: i64) -> RationalFunction {
        RationalFunction::from_int(&Chart::xyz(), n)
    }

    fn guillot() -> Sl2Frame {
        let [x, y, z] = vars();
        let v = VectorField3::new([&x * &x + &y * &y * &y * &y, &x * &y, k(2) * &y * &y * &z - &x * &z]);
        let u = VectorField3::new([k(2) * &x, y.clone(), -&z]);
        let w = VectorField3::new([k(-1), k(0), k(0)]);
        Sl2Frame::new(v, u, w).unwrap()
    }

    #[test]
    fn unit_rho_is_identity() {
        let f = guillot();
        let (a, b, g) = conformal_transform(&f.alpha, &f.beta, &f.gamma, &k(1)).unwrap();
        assert_eq!((a, b, g), (f.alpha.clone(), f.beta.clone(), f.gamma.clone()));
        assert_eq!(conformal_transform(&f.alpha, &f.beta, &f.gamma, &k(0)), Err(McframeError::ZeroRho));
    }

    #[test]
    fn rho_y_keeps_maurer_cartan() {
        let f = guillot();
        let [_, y, _] = vars();
        let (a, b, g) = conformal_transform(&f.alpha, &f.beta, &f.gamma, &y).unwrap();
        assert!(verify_maurer_cartan(&a, &b, &g).all_hold());
        let y2 = &y * &y;
        let (_, b2, _) = conformal_transform(&f.alpha, &f.beta, &f.gamma, &y2).unwrap();
        let KForm::Zero(p) = crate::calculus::interior_product(&f.v, &b2).unwrap() else { panic!() };
        assert_eq!(p, y2);
    }

    #[test]
    fn sigma_unit_rho_zero_f_is_alpha_dalpha() {
        let f = guillot();
        let s = sigma_residual(&f.alpha, &f.gamma, &f.beta, &k(1), &k(0)).unwrap();
        let ada = wedge(&f.alpha, &exterior_derivative(&f.alpha).unwrap()).unwrap();
        assert!(!ada.is_zero());
        assert_eq!(s.direct, ada);
        assert_eq!(s.factored, ada);
        assert!(s.correction.is_zero());
    }

    #[test]
    fn sigma_with_exact_beta() {
        // α = x dy, β = dy, γ = dx − x² dy satisfy the Maurer–Cartan equations
        // and β = d(y).
        let [x, y, _] = vars();
        let alpha = KForm::one_form(k(0), x.clone(), k(0));
        let beta = KForm::one_form(k(0), k(1), k(0));
        let gamma = KForm::one_form(k(1), -(&x * &x), k(0));
        assert!(verify_maurer_cartan(&alpha, &beta, &gamma).all_hold());
        let s = sigma_residual(&alpha, &gamma, &beta, &k(1), &y).unwrap();
        assert!(s.direct.is_zero());
    }

    #[test]
    fn sigma_decomposition_for_nonconstant_rho() {
        let f = guillot();
        let [x, y, z] = vars();
        let rho = &y * &z + k(1);
        let g = &x * &y - &z;
        let s = sigma_residual(&f.alpha, &f.gamma, &f.beta, &rho, &g).unwrap();
        assert_eq!(s.direct, &s.factored + &s.correction);
        assert!(!s.correction.is_zero());
    }
}

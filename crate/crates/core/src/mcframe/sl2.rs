use super::{Check, McframeError, Result, VerificationReport};
use crate::algebra::{BigRational, RationalFunction};
use crate::calculus::{
    cross, curl, div, exterior_derivative, interior_product, lie_bracket, triple, wedge, KForm, VectorField3,
};

/// Vector fields `(v, u, w)` with `[u,v] = 2v`, `[u,w] = −2w`, `[v,w] = u`,
/// together with the last multiplier and the dual one-forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Frame {
    pub v: VectorField3,
    pub u: VectorField3,
    pub w: VectorField3,
    pub m: RationalFunction,
    pub alpha: KForm,
    pub beta: KForm,
    pub gamma: KForm,
}

impl Sl2Frame {
    /// Computes `M` and `(α, β, γ)`; the bracket relations are not enforced
    /// here, see [`verify_sl2`].
    pub fn new(v: VectorField3, u: VectorField3, w: VectorField3) -> Result<Self> {
        v.chart().ensure_same(u.chart())?;
        v.chart().ensure_same(w.chart())?;
        let m = last_multiplier(&v, &u, &w)?;
        let (alpha, beta, gamma) = dual_forms(&v, &u, &w, &m);
        Ok(Sl2Frame { v, u, w, m, alpha, beta, gamma })
    }
}

/// Curl-potential of `M·v`: `curl(A) = scale · M·v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotentialVector {
    pub a: VectorField3,
    pub scale: BigRational,
}

pub fn verify_sl2(v: &VectorField3, u: &VectorField3, w: &VectorField3) -> VerificationReport {
    let mut r = VerificationReport::default();
    r.push(Check::zero("sl2.uv", "[u,v] = 2v", &lie_bracket(u, v) - &v.scale_const(&two())));
    r.push(Check::zero("sl2.uw", "[u,w] = -2w", &lie_bracket(u, w) + &w.scale_const(&two())));
    r.push(Check::zero("sl2.vw", "[v,w] = u", &lie_bracket(v, w) - u));
    r
}

/// `M = 1 / ((v×u)·w)`.
pub fn last_multiplier(v: &VectorField3, u: &VectorField3, w: &VectorField3) -> Result<RationalFunction> {
    let t = triple(v, u, w);
    if t.is_zero() {
        return Err(McframeError::DegenerateFrame);
    }
    Ok(t.inv()?)
}

/// `α = M(w×v)·dx`, `β = M(u×w)·dx`, `γ = M(v×u)·dx`.
pub fn dual_forms(v: &VectorField3, u: &VectorField3, w: &VectorField3, m: &RationalFunction) -> (KForm, KForm, KForm) {
    (
        KForm::One(cross(w, v).scale(m)),
        KForm::One(cross(u, w).scale(m)),
        KForm::One(cross(v, u).scale(m)),
    )
}

pub fn verify_multiplier(frame: &Sl2Frame) -> VerificationReport {
    let mut r = VerificationReport::default();
    let t = triple(&frame.v, &frame.u, &frame.w);
    r.push(Check::nonzero("multiplier.nondegenerate", "(v x u).w != 0", t.clone()));
    r.push(Check::zero("multiplier.reciprocal", "M (v x u).w = 1", &frame.m * &t - RationalFunction::one(t.chart())));
    r
}

/// Nine pairings `ι_X θ` for `X ∈ {v, u, w}`, `θ ∈ {α, β, γ}`.
pub fn verify_duality(frame: &Sl2Frame) -> VerificationReport {
    let mut r = VerificationReport::default();
    let one = RationalFunction::one(frame.m.chart());
    let fields = [("v", &frame.v), ("u", &frame.u), ("w", &frame.w)];
    let forms = [("alpha", &frame.alpha), ("beta", &frame.beta), ("gamma", &frame.gamma)];
    for (fname, x) in fields {
        for (wname, theta) in forms {
            let pairing = contract(x, theta);
            let dual = matches!((fname, wname), ("v", "beta") | ("u", "alpha") | ("w", "gamma"));
            let (residual, anchor) = if dual {
                (&pairing - &one, format!("i_{fname} {wname} = 1"))
            } else {
                (pairing, format!("i_{fname} {wname} = 0"))
            };
            r.push(Check::zero(&format!("duality.{fname}.{wname}"), &anchor, residual));
        }
    }
    r
}

fn contract(x: &VectorField3, theta: &KForm) -> RationalFunction {
    let KForm::Zero(f) = interior_product(x, theta).expect("one-form") else { unreachable!() };
    f
}

fn d(omega: &KForm) -> KForm {
    exterior_derivative(omega).expect("grade < 3")
}

fn wedge2(a: &KForm, b: &KForm) -> KForm {
    wedge(a, b).expect("grades sum to at most 3")
}

/// Residuals of `dβ = −2α∧β`, `dα = γ∧β`, `dγ = 2α∧γ`, and `dα ≠ 0`.
pub fn verify_maurer_cartan(alpha: &KForm, beta: &KForm, gamma: &KForm) -> VerificationReport {
    let mut r = VerificationReport::default();
    let two = two();
    r.push(Check::zero("maurer_cartan.dbeta", "d beta = -2 alpha^beta", &d(beta) + &wedge2(alpha, beta).scale_const(&two)));
    r.push(Check::zero("maurer_cartan.dalpha", "d alpha = gamma^beta", &d(alpha) - &wedge2(gamma, beta)));
    r.push(Check::zero("maurer_cartan.dgamma", "d gamma = 2 alpha^gamma", &d(gamma) - &wedge2(alpha, gamma).scale_const(&two)));
    r.push(Check::nonzero("maurer_cartan.dalpha_nonzero", "d alpha != 0", d(alpha)));
    r
}

/// `curl(M v×u) = 2Mv`, `curl(M u×w) = 2Mw`, `curl(M v×w) = −Mu` and the
/// vanishing divergences of `Mv`, `Mu`, `Mw`.
pub fn curl_identities(frame: &Sl2Frame) -> VerificationReport {
    let Sl2Frame { v, u, w, m, .. } = frame;
    let two = two();
    let mut r = VerificationReport::default();
    let (mv, mu, mw) = (v.scale(m), u.scale(m), w.scale(m));
    r.push(Check::zero(
        "curl.vu",
        "curl(M v x u) = 2Mv (the bare form '= 2v' drops M)",
        &curl(&cross(v, u).scale(m)) - &mv.scale_const(&two),
    ));
    r.push(Check::zero(
        "curl.uw",
        "curl(M u x w) = 2Mw (the bare form '= 2w' drops M)",
        &curl(&cross(u, w).scale(m)) - &mw.scale_const(&two),
    ));
    r.push(Check::zero(
        "curl.vw",
        "curl(M v x w) = -Mu (the bare form '= -u' drops M)",
        &curl(&cross(v, w).scale(m)) + &mu,
    ));
    r.push(Check::zero("div.Mv", "div(M v) = 0", div(&mv)));
    r.push(Check::zero("div.Mu", "div(M u) = 0", div(&mu)));
    r.push(Check::zero("div.Mw", "div(M w) = 0", div(&mw)));
    r
}

/// Constant `s` with `lhs = s·target`, read off the first nonzero component
/// of `target` and then checked on all three.
pub fn proportionality_constant(lhs: &VectorField3, target: &VectorField3) -> Result<BigRational> {
    let not_proportional = || McframeError::NotProportional { curl: lhs.clone(), target: target.clone() };
    let i = (0..3).find(|&i| !target.components[i].is_zero()).ok_or_else(not_proportional)?;
    let s = (&lhs.components[i] / &target.components[i]).as_constant().ok_or_else(not_proportional)?;
    if lhs != &target.scale_const(&s) {
        return Err(not_proportional());
    }
    Ok(s)
}

/// `A` = covector of `γ` with `curl(A) = s·M·v`.
pub fn potential_from_gamma(frame: &Sl2Frame) -> Result<PotentialVector> {
    let a = frame.gamma.as_vector().expect("one-form").clone();
    let scale = proportionality_constant(&curl(&a), &frame.v.scale(&frame.m))?;
    Ok(PotentialVector { a, scale })
}

pub fn verify_potential(frame: &Sl2Frame) -> VerificationReport {
    let mut r = VerificationReport::default();
    let a = frame.gamma.as_vector().expect("one-form");
    let mv = frame.v.scale(&frame.m);
    r.push(Check::zero("potential.curl", "curl(A) = 2Mv with A the covector of gamma", &curl(a) - &mv.scale_const(&two())));
    match proportionality_constant(&curl(a), &mv) {
        Ok(s) => r.notes.push(format!("potential scale: curl(A) = {s} * M v")),
        Err(_) => r.notes.push("potential: curl(A) is not a constant multiple of M v".into()),
    }
    r
}

/// `ω∧dω` for a one-form.
pub fn frobenius_residual(omega: &KForm) -> Result<KForm> {
    if omega.grade() != 1 {
        return Err(McframeError::NotOneForm(omega.grade()));
    }
    Ok(wedge2(omega, &d(omega)))
}

pub fn frobenius_checks(alpha: &KForm, beta: &KForm, gamma: &KForm) -> VerificationReport {
    let res = |w: &KForm| wedge2(w, &d(w));
    let mut r = VerificationReport::default();
    r.push(Check::zero("frobenius.beta", "beta^d beta = 0", res(beta)));
    r.push(Check::zero("frobenius.gamma", "gamma^d gamma = 0", res(gamma)));
    r.push(Check::nonzero("frobenius.alpha", "alpha^d alpha != 0", res(alpha)));
    r
}

/// Structural suite in dependency order: sl(2) brackets, multiplier,
/// duality, Maurer–Cartan, curl identities, potential, Frobenius.
pub fn frame_suite(system: &str, frame: &Sl2Frame) -> VerificationReport {
    let mut r = VerificationReport::new(system);
    r.extend(verify_sl2(&frame.v, &frame.u, &frame.w));
    r.extend(verify_multiplier(frame));
    r.extend(verify_duality(frame));
    r.extend(verify_maurer_cartan(&frame.alpha, &frame.beta, &frame.gamma));
    r.extend(curl_identities(frame));
    r.extend(verify_potential(frame));
    r.extend(frobenius_checks(&frame.alpha, &frame.beta, &frame.gamma));
    r
}

fn two() -> BigRational {
    BigRational::from_integer(2.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Chart;

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
    fn guillot_multiplier_and_forms() {
        let [x, y, z] = vars();
        let f = guillot();
        assert_eq!(f.m.to_string(), "1/(2*y^3*z)");
        let y2 = &y * &y;
        let y3 = &y2 * &y;
        let alpha = KForm::one_form(k(0), (k(2) * &y2 - &x) / (k(2) * &y3), -(&x / (k(2) * &z * &y2)));
        let beta = KForm::one_form(k(0), (k(2) * &y3).inv().unwrap(), (k(2) * &z * &y2).inv().unwrap());
        let gamma = KForm::one_form(
            k(-1),
            (&y2 * &y2 + k(4) * &x * &y2 - &x * &x) / (k(2) * &y3),
            (&y2 * &y2 - &x * &x) / (k(2) * &z * &y2),
        );
        assert_eq!(f.alpha, alpha);
        assert_eq!(f.beta, beta);
        assert_eq!(f.gamma, gamma);
    }

    #[test]
    fn guillot_suite_holds() {
        let f = guillot();
        let r = frame_suite("guillot", &f);
        assert!(r.all_hold(), "{r}");
        assert_eq!(potential_from_gamma(&f).unwrap().scale, two());
    }

    #[test]
    fn bracket_failure_residual() {
        let f = guillot();
        let r = verify_sl2(&f.v, &f.v, &f.v);
        assert!(!r.all_hold());
        assert_eq!(r.checks[0].residual, (&f.v.scale_const(&two())).map(|c| -c).into());
    }

    #[test]
    fn constant_frame() {
        let c = Chart::xyz();
        let e = |i| VectorField3::coordinate(&c, i);
        assert!(last_multiplier(&e(0), &e(1), &e(2)).unwrap().is_one());
        assert_eq!(last_multiplier(&e(0), &e(0), &e(2)), Err(McframeError::DegenerateFrame));
    }

    #[test]
    fn scaled_gamma_breaks_duality() {
        let mut f = guillot();
        f.gamma = f.gamma.scale_const(&two());
        let r = verify_duality(&f);
        let c = r.get("duality.w.gamma").unwrap();
        assert!(!c.holds());
        assert!(c.residual.components()[0].is_one());
    }

    #[test]
    fn coordinate_forms_fail_maurer_cartan() {
        let c = Chart::xyz();
        let r = verify_maurer_cartan(&KForm::dx(&c, 0), &KForm::dx(&c, 1), &KForm::dx(&c, 2));
        let db = r.get("maurer_cartan.dbeta").unwrap();
        assert!(!db.holds());
        assert_eq!(db.residual, KForm::Two(VectorField3::coordinate(&c, 2).scale_const(&two())).into());
    }

    #[test]
    fn frobenius_examples() {
        let f = guillot();
        assert!(frobenius_residual(&f.gamma).unwrap().is_zero());
        assert!(!frobenius_residual(&f.alpha).unwrap().is_zero());
        let [x, y, z] = vars();
        let df = exterior_derivative(&KForm::Zero(&x * &y / &z)).unwrap();
        assert!(frobenius_residual(&df).unwrap().is_zero());
        assert_eq!(frobenius_residual(&KForm::Zero(x)), Err(McframeError::NotOneForm(0)));
    }

    #[test]
    fn multiplier_one_breaks_divergence() {
        let mut f = guillot();
        f.m = k(1);
        let r = curl_identities(&f);
        let [x, y, _] = vars();
        assert_eq!(r.get("div.Mv").unwrap().residual, (k(2) * &x + k(2) * &y * &y).into());
    }

    #[test]
    fn proportionality_rejects_mismatch() {
        // ω² = dy − x dz has curl (0, 1, 0); against u = x∂y + ∂z it is not proportional.
        let [x, _, _] = vars();
        let a = VectorField3::new([k(0), k(1), -&x]);
        let target = VectorField3::new([k(0), x.clone(), k(1)]);
        assert!(matches!(
            proportionality_constant(&curl(&a), &target),
            Err(McframeError::NotProportional { .. })
        ));
        let e2 = VectorField3::new([k(0), k(1), k(0)]);
        assert_eq!(proportionality_constant(&curl(&a), &e2).unwrap(), BigRational::from_integer(1.into()));
    }
}

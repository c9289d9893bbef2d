use crate::algebra::{Chart, Poly3, RationalFunction};
use crate::calculus::directional_derivative;
use crate::mcframe::{Check, VerificationReport};

/// `x = −2(t₁+t₂+t₃)`, `y = 4(t₁t₂+t₂t₃+t₁t₃)`, `z = −8t₁t₂t₃`.
pub fn dh_substitution() -> [Poly3; 3] {
    let c = Chart::t123();
    let [t1, t2, t3] = [0, 1, 2].map(|i| Poly3::var(&c, i));
    let k = |n| Poly3::from_int(&c, n);
    [
        k(-2) * (&t1 + &t2 + &t3),
        k(4) * (&t1 * &t2 + &t2 * &t3 + &t1 * &t3),
        k(-8) * &t1 * &t2 * &t3,
    ]
}

/// Chain rule along the classical flow against the symmetric-variable field
/// evaluated on the substitution; residuals are polynomials in `t₁, t₂, t₃`.
pub fn dh_reduction_check() -> VerificationReport {
    let classic = super::builtin("dh_classic").expect("builtin").spec.v_field();
    let symmetric = super::builtin("dh_symmetric").expect("builtin").spec.v_field();
    let sub = dh_substitution();
    let images = [&sub[0], &sub[1], &sub[2]];
    let mut r = VerificationReport::new("dh_reduction");
    let names = ["x", "y", "z"];
    let targets = ["y/2", "3z", "2xz - y^2/2"];
    for i in 0..3 {
        let chain = directional_derivative(&classic, &RationalFunction::from_poly(sub[i].clone()));
        let target = symmetric.components[i].numer().compose(images).expect("same chart");
        let residual = &chain - &RationalFunction::from_poly(target);
        r.push(Check::zero(
            &format!("dh_reduction.{}", names[i]),
            &format!("d{}/dt = {} on the substitution", names[i], targets[i]),
            residual,
        ));
    }
    r
}

use super::{Check, McframeError, Result, VerificationReport};
use crate::algebra::{rat, RationalFunction};
use crate::calculus::{cross, curl, div, dot, integral_differential, interior_product, wedge, KForm, LogIntegral, VectorField3};

/// `J·(∇×J)`; zero exactly when `J` defines a Poisson structure.
pub fn jacobi_residual(j: &VectorField3) -> RationalFunction {
    dot(j, &curl(j))
}

/// A vector `J` with `J·(∇×J) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonVector {
    j: VectorField3,
}

impl PoissonVector {
    pub fn new(j: VectorField3) -> Result<Self> {
        let r = jacobi_residual(&j);
        if !r.is_zero() {
            return Err(McframeError::NotPoisson(r.to_string()));
        }
        Ok(PoissonVector { j })
    }

    pub fn vector(&self) -> &VectorField3 {
        &self.j
    }
}

/// `J × ∇H`.
pub fn hamiltonian_field(j: &PoissonVector, h: &LogIntegral) -> Result<VectorField3> {
    let dh = integral_differential(h)?;
    Ok(cross(&j.j, dh.as_vector().expect("one-form")))
}

fn differential(h: &LogIntegral) -> Result<KForm> {
    Ok(integral_differential(h)?)
}

/// First-integral, invariant-volume and `dH₁∧dH₂ = 2M ι_v(vol)` checks.
///
/// The orientation matches `M ẋ = ∇H₁ × ∇H₂`; written in the opposite order
/// the identity reads `dH₂∧dH₁ = −2M ι_v(vol)`, which is recorded as a note.
pub fn bihamiltonian_verify(
    v: &VectorField3,
    m: &RationalFunction,
    h1: (&str, &LogIntegral),
    h2: (&str, &LogIntegral),
) -> Result<VerificationReport> {
    let mut r = VerificationReport::default();
    let (d1, d2) = (differential(h1.1)?, differential(h2.1)?);
    for (name, dh) in [(h1.0, &d1), (h2.0, &d2)] {
        let KForm::Zero(flow) = interior_product(v, dh)? else { unreachable!() };
        r.push(Check::zero(&format!("integral.{name}"), &format!("i_v d{name} = 0"), flow));
    }
    r.push(Check::zero("bihamiltonian.div_Mv", "div(M v) = 0", div(&v.scale(m))));
    let vol = KForm::volume(m.chart());
    let rhs = interior_product(v, &vol)?.scale(m).scale_const(&rat(2, 1));
    let w12 = wedge(&d1, &d2)?;
    r.push(Check::zero(
        &format!("bihamiltonian.{}_{}", h1.0, h2.0),
        &format!("d{}^d{} = 2M i_v(dx^dy^dz)", h1.0, h2.0),
        &w12 - &rhs,
    ));
    if (&w12 - &rhs).is_zero() {
        r.notes.push(format!("reversed order: d{}^d{} = -2M i_v(dx^dy^dz)", h2.0, h1.0));
    }
    Ok(r)
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

    #[test]
    fn jacobi_examples() {
        let [x, y, z] = vars();
        assert!(jacobi_residual(&VectorField3::new([y.clone(), -&x, k(0)])).is_zero());
        assert_eq!(jacobi_residual(&VectorField3::new([z.clone(), x.clone(), y.clone()])), &x + &y + &z);
        let f = &x * &x + &y * &y;
        let j = crate::calculus::grad(&f).scale(&z.inv().unwrap());
        assert!(jacobi_residual(&j).is_zero());
    }

    #[test]
    fn hamiltonian_examples() {
        let [x, y, _] = vars();
        let c = Chart::xyz();
        let j = PoissonVector::new(VectorField3::coordinate(&c, 2)).unwrap();
        let field = hamiltonian_field(&j, &LogIntegral::rational(x.clone())).unwrap();
        assert_eq!(field, VectorField3::coordinate(&c, 1));
        assert!(hamiltonian_field(&j, &LogIntegral::rational(k(7))).unwrap().is_zero());
        assert!(matches!(
            PoissonVector::new(VectorField3::new([y.clone(), x.clone(), x.clone()])),
            Err(McframeError::NotPoisson(_))
        ));
    }

    fn guillot_h(eps: i64) -> (VectorField3, RationalFunction, LogIntegral, LogIntegral) {
        let [x, y, z] = vars();
        let y2 = &y * &y;
        let v = VectorField3::new([&x * &x + &y2 * &y2, &x * &y, k(2) * &y2 * &z - &x * &z]);
        let m = (k(2) * &z * &y2 * &y).inv().unwrap();
        let h1 = LogIntegral::rational(&x * &x / &y2 - &y2);
        let e = rat(eps, 1);
        let h2 = LogIntegral::new(
            k(0),
            vec![(e.clone(), k(eps) * &x + &y2), (-(e + rat(1, 2)), y), (rat(-1, 2), z)],
        )
        .unwrap();
        (v, m, h1, h2)
    }

    #[test]
    fn guillot_bihamiltonian_both_signs() {
        for eps in [1, -1] {
            let (v, m, h1, h2) = guillot_h(eps);
            let r = bihamiltonian_verify(&v, &m, ("H1", &h1), ("H2", &h2)).unwrap();
            assert!(r.all_hold(), "eps = {eps}\n{r}");
            let (d1, d2) = (integral_differential(&h1).unwrap(), integral_differential(&h2).unwrap());
            let rhs = interior_product(&v, &KForm::volume(m.chart())).unwrap().scale(&m).scale_const(&rat(2, 1));
            assert_eq!(wedge(&d2, &d1).unwrap(), -&rhs);
        }
    }

    #[test]
    fn poisson_vector_reproduces_flow() {
        let (v, m, h1, h2) = guillot_h(1);
        let j = PoissonVector::new(integral_differential(&h1).unwrap().as_vector().unwrap().clone()).unwrap();
        let field = hamiltonian_field(&j, &h2).unwrap();
        // ∇H₁ × ∇H₂ = 2Mv
        assert_eq!(field, v.scale(&m).scale_const(&rat(2, 1)));
    }

    #[test]
    fn non_integral_fails() {
        let (v, m, _, h2) = guillot_h(1);
        let [x, y, _] = vars();
        let r = bihamiltonian_verify(&v, &m, ("H1", &LogIntegral::rational(x.clone())), ("H2", &h2)).unwrap();
        let c = r.get("integral.H1").unwrap();
        assert!(!c.holds());
        assert_eq!(c.residual, (&x * &x + &y * &y * &y * &y).into());
    }
}

//! Strategies and law checks shared by the property suites and the
//! acceptance gate.
#![allow(dead_code)]

use mcflow::algebra::{gcd, rat, BigRational, Chart, Monomial, Poly3, RationalFunction};
use mcflow::calculus::{
    directional_derivative, exterior_derivative, interior_product, lie_bracket, lie_derivative, wedge, KForm,
    VectorField3,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub type Check = Result<(), TestCaseError>;

fn term() -> impl Strategy<Value = (Monomial, BigRational)> {
    ((0u32..3, 0u32..3, 0u32..3), -6i64..=6).prop_map(|((a, b, c), k)| (Monomial([a, b, c]), rat(k, 1)))
}

/// Up to `max_terms` terms, exponents below 3, small integer coefficients.
pub fn poly(max_terms: usize) -> impl Strategy<Value = Poly3> {
    prop::collection::vec(term(), 0..=max_terms).prop_map(|ts| Poly3::from_terms(&Chart::xyz(), ts))
}

pub fn nonzero_poly(max_terms: usize) -> impl Strategy<Value = Poly3> {
    poly(max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

/// Numerator with up to three terms over a denominator with up to two.
pub fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    (poly(3), nonzero_poly(2)).prop_map(|(n, d)| RationalFunction::new(n, d).expect("nonzero denominator"))
}

/// Denominator a monomial times one linear factor from a small pool, so
/// nested calculus stays within fast gcd territory.
pub fn calc_ratfunc() -> impl Strategy<Value = RationalFunction> {
    let chart = Chart::xyz();
    let pool = [
        Poly3::one(&chart),
        Poly3::from_terms(&chart, [(Monomial([1, 0, 0]), rat(1, 1)), (Monomial([0, 0, 0]), rat(1, 1))]),
        Poly3::from_terms(&chart, [(Monomial([0, 1, 0]), rat(1, 1)), (Monomial([0, 0, 0]), rat(-2, 1))]),
        Poly3::from_terms(&chart, [(Monomial([0, 0, 1]), rat(2, 1)), (Monomial([1, 0, 0]), rat(-1, 1))]),
    ];
    (poly(3), (0u32..2, 0u32..2, 0u32..2), prop::sample::select(pool.to_vec())).prop_map(move |(n, (a, b, c), l)| {
        let d = Poly3::from_terms(&chart, [(Monomial([a, b, c]), rat(1, 1))]);
        RationalFunction::new(n, &d * &l).expect("nonzero denominator")
    })
}

/// Polynomial-valued, to keep nested derivatives cheap.
pub fn poly_fn() -> impl Strategy<Value = RationalFunction> {
    poly(3).prop_map(RationalFunction::from_poly)
}

pub fn field() -> impl Strategy<Value = VectorField3> {
    [calc_ratfunc(), calc_ratfunc(), calc_ratfunc()].prop_map(VectorField3::new)
}

pub fn poly_field() -> impl Strategy<Value = VectorField3> {
    [poly_fn(), poly_fn(), poly_fn()].prop_map(VectorField3::new)
}

pub fn form(grade: u8) -> BoxedStrategy<KForm> {
    match grade {
        0 => calc_ratfunc().prop_map(KForm::Zero).boxed(),
        1 => field().prop_map(KForm::One).boxed(),
        2 => field().prop_map(KForm::Two).boxed(),
        _ => calc_ratfunc().prop_map(KForm::Three).boxed(),
    }
}

/// Pair of forms whose grades sum to at most 3.
pub fn form_pair() -> impl Strategy<Value = (KForm, KForm)> {
    (0u8..=3).prop_flat_map(|p| (0u8..=(3 - p)).prop_map(move |q| (p, q))).prop_flat_map(|(p, q)| (form(p), form(q)))
}

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() })
}

pub fn ring_laws((a, b, c): (Poly3, Poly3, Poly3)) -> Check {
    prop_assert_eq!(&a + &b, &b + &a);
    prop_assert_eq!(&a * &b, &b * &a);
    prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    prop_assert!((&a - &a).is_zero());
    prop_assert_eq!(&a * &Poly3::one(a.chart()), a.clone());
    Ok(())
}

pub fn gcd_divides((a, b, c): (Poly3, Poly3, Poly3)) -> Check {
    prop_assume!(!(a.is_zero() && b.is_zero()));
    let g = gcd(&a, &b).unwrap();
    prop_assert!(a.exact_div(&g).is_some(), "gcd {} does not divide {}", g, a);
    prop_assert!(b.exact_div(&g).is_some(), "gcd {} does not divide {}", g, b);
    prop_assume!(!c.is_zero());
    let h = gcd(&(&a * &c), &(&b * &c)).unwrap();
    prop_assert!(h.exact_div(&c).is_some(), "{} does not divide gcd {}", c, h);
    Ok(())
}

/// Canonical form is independent of a common factor.
pub fn normalize((n, d, k): (Poly3, Poly3, Poly3)) -> Check {
    let f = RationalFunction::new(n.clone(), d.clone()).unwrap();
    let g = RationalFunction::new(&n * &k, &d * &k).unwrap();
    prop_assert_eq!(f, g);
    Ok(())
}

pub fn leibniz((f, g): (RationalFunction, RationalFunction)) -> Check {
    for i in 0..3 {
        let lhs = (&f * &g).derivative(i);
        let rhs = &(&f.derivative(i) * &g) + &(&f * &g.derivative(i));
        prop_assert_eq!(lhs, rhs);
    }
    Ok(())
}

pub fn d_squared(w: KForm) -> Check {
    prop_assume!(w.grade() <= 1);
    let dd = exterior_derivative(&exterior_derivative(&w).unwrap()).unwrap();
    prop_assert!(dd.is_zero(), "d(d {}) = {}", w, dd);
    Ok(())
}

fn sign(p: u8) -> BigRational {
    rat(if p % 2 == 0 { 1 } else { -1 }, 1)
}

pub fn graded_leibniz((a, b): (KForm, KForm)) -> Check {
    let p = a.grade();
    prop_assume!(p + b.grade() <= 2);
    let d = |w: &KForm| exterior_derivative(w).unwrap();
    let w = |x: &KForm, y: &KForm| wedge(x, y).unwrap();
    let lhs = d(&w(&a, &b));
    let rhs = &w(&d(&a), &b) + &w(&a, &d(&b)).scale_const(&sign(p));
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn interior_derivation((x, (a, b)): (VectorField3, (KForm, KForm))) -> Check {
    let p = a.grade();
    let q = b.grade();
    prop_assume!(p + q >= 1);
    let i = |w: &KForm| interior_product(&x, w).ok();
    let w = |x: &KForm, y: &KForm| wedge(x, y).unwrap();
    let lhs = interior_product(&x, &w(&a, &b)).unwrap();
    let mut rhs = KForm::zero(a.chart(), p + q - 1);
    if let Some(ia) = i(&a) {
        rhs = &rhs + &w(&ia, &b);
    }
    if let Some(ib) = i(&b) {
        rhs = &rhs + &w(&a, &ib).scale_const(&sign(p));
    }
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn jacobi((x, y, z): (VectorField3, VectorField3, VectorField3)) -> Check {
    let b = lie_bracket;
    let sum = &(&b(&x, &b(&y, &z)) + &b(&y, &b(&z, &x))) + &b(&z, &b(&x, &y));
    prop_assert!(sum.is_zero(), "Jacobi sum {}", sum);
    Ok(())
}

/// Lie derivative against the coordinate formulas
/// `L_X f = X(f)` and `(L_X α)_i = X(α_i) + α_j ∂_i X^j`.
pub fn cartan((x, f, a): (VectorField3, RationalFunction, VectorField3)) -> Check {
    let KForm::Zero(lf) = lie_derivative(&x, &KForm::Zero(f.clone())) else { unreachable!() };
    prop_assert_eq!(lf, directional_derivative(&x, &f));
    let KForm::One(la) = lie_derivative(&x, &KForm::One(a.clone())) else { unreachable!() };
    let expected = VectorField3::new([0, 1, 2].map(|i| {
        let mut s = directional_derivative(&x, &a.components[i]);
        for j in 0..3 {
            s = &s + &(&a.components[j] * &x.components[j].derivative(i));
        }
        s
    }));
    prop_assert_eq!(la, expected);
    Ok(())
}

pub fn eval_multiplicative((f, g, p): (RationalFunction, RationalFunction, [i64; 3])) -> Check {
    let pt = p.map(|k| rat(k, 1));
    let (Ok(a), Ok(b)) = (f.eval_exact(&pt), g.eval_exact(&pt)) else { return Ok(()) };
    prop_assert_eq!((&f * &g).eval_exact(&pt).unwrap(), a * b);
    Ok(())
}

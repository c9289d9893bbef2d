use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd_unnormalized;
use super::poly::coefficient_normalizer;
use super::{AlgebraError, BigRational, Chart, Poly3, Result};

/// Quotient of two [`Poly3`] in canonical form: numerator and denominator are
/// coprime and the denominator's graded-lex leading coefficient is 1.
/// Structural equality therefore decides mathematical equality.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly3,
    den: Poly3,
}

impl RationalFunction {
    /// Builds the canonical form of `num / den`.
    pub fn new(num: Poly3, den: Poly3) -> Result<Self> {
        num.chart().ensure_same(den.chart())?;
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero(num.chart()));
        }
        if let Some(c) = den.constant_value() {
            let chart = num.chart().clone();
            return Ok(RationalFunction { num: num.scale(&c.recip()), den: Poly3::one(&chart) });
        }
        let g = gcd_unnormalized(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        Ok(Self::fix_leading(num, den))
    }

    /// Rescales so the denominator is monic; assumes coprimality.
    fn fix_leading(num: Poly3, den: Poly3) -> Self {
        let lc = den.leading_coefficient();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lc.recip();
            RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero(chart: &Chart) -> Self {
        RationalFunction { num: Poly3::zero(chart), den: Poly3::one(chart) }
    }

    pub fn one(chart: &Chart) -> Self {
        Self::from_poly(Poly3::one(chart))
    }

    pub fn constant(chart: &Chart, c: BigRational) -> Self {
        Self::from_poly(Poly3::constant(chart, c))
    }

    pub fn from_int(chart: &Chart, c: i64) -> Self {
        Self::from_poly(Poly3::from_int(chart, c))
    }

    pub fn var(chart: &Chart, index: usize) -> Self {
        Self::from_poly(Poly3::var(chart, index))
    }

    pub fn from_poly(p: Poly3) -> Self {
        let chart = p.chart().clone();
        RationalFunction { num: p, den: Poly3::one(&chart) }
    }

    pub fn numer(&self) -> &Poly3 {
        &self.num
    }

    pub fn denom(&self) -> &Poly3 {
        &self.den
    }

    pub fn chart(&self) -> &Chart {
        self.num.chart()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.chart().ensure_same(other.chart())?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.den == other.den {
            return Self::new(self.num.try_add(&other.num)?, self.den.clone());
        }
        let g = gcd_unnormalized(&self.den, &other.den);
        if g.is_constant() {
            let num = self.num.try_mul(&other.den)?.try_add(&other.num.try_mul(&self.den)?)?;
            return Ok(Self::fix_leading(num, self.den.try_mul(&other.den)?));
        }
        let b1 = self.den.exact_div(&g).expect("gcd divides");
        let d1 = other.den.exact_div(&g).expect("gcd divides");
        let t = self.num.try_mul(&d1)?.try_add(&other.num.try_mul(&b1)?)?;
        if t.is_zero() {
            return Ok(Self::zero(self.chart()));
        }
        let h = gcd_unnormalized(&t, &g);
        let (num, dh) = if h.is_constant() {
            (t, other.den.clone())
        } else {
            (t.exact_div(&h).expect("gcd divides"), other.den.exact_div(&h).expect("gcd divides"))
        };
        Ok(Self::fix_leading(num, b1.try_mul(&dh)?))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.chart().ensure_same(other.chart())?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.chart()));
        }
        let g1 = gcd_unnormalized(&self.num, &other.den);
        let g2 = gcd_unnormalized(&other.num, &self.den);
        let cancel = |p: &Poly3, g: &Poly3| if g.is_constant() { p.clone() } else { p.exact_div(g).expect("gcd divides") };
        let num = cancel(&self.num, &g1).try_mul(&cancel(&other.num, &g2))?;
        let den = cancel(&self.den, &g2).try_mul(&cancel(&other.den, &g1))?;
        Ok(Self::fix_leading(num, den))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::fix_leading(self.den.clone(), self.num.clone()))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn try_pow(&self, exponent: i64) -> Result<Self> {
        let base = if exponent < 0 { self.inv()? } else { self.clone() };
        let e = exponent.unsigned_abs() as i64;
        Ok(Self::fix_leading(base.num.try_pow(e)?, base.den.try_pow(e)?))
    }

    pub fn derivative(&self, var: usize) -> Self {
        let dn = self.num.derivative(var);
        if self.den.is_constant() {
            return Self::from_poly(dn).scale(&self.den.constant_value().unwrap().recip());
        }
        let dd = self.den.derivative(var);
        // (n' d - n d') / d^2, with the common factor gcd(d, d') removed early.
        let g = gcd_unnormalized(&self.den, &dd);
        let (d_red, dd_red) = if g.is_constant() {
            (self.den.clone(), dd)
        } else {
            (self.den.exact_div(&g).unwrap(), dd.exact_div(&g).unwrap())
        };
        let num = &dn * &d_red - &self.num * &dd_red;
        Self::new(num, &self.den * &d_red).expect("nonzero denominator")
    }

    /// Partial derivative by variable name.
    pub fn partial(&self, var: &str) -> Result<Self> {
        let i = self.chart().index_of(var).ok_or_else(|| AlgebraError::UnknownVariable(var.to_owned()))?;
        Ok(self.derivative(i))
    }

    pub fn eval_exact(&self, point: &[BigRational; 3]) -> Result<BigRational> {
        let d = self.den.eval_exact(point);
        if d.is_zero() {
            return Err(AlgebraError::SingularPoint {
                denominator: self.den.to_string(),
                point: point.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
            });
        }
        Ok(self.num.eval_exact(point) / d)
    }

    pub fn eval_f64(&self, point: &[f64; 3]) -> Result<f64> {
        let d = self.den.eval_f64(point);
        if d == 0.0 {
            return Err(AlgebraError::SingularPoint {
                denominator: self.den.to_string(),
                point: point.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
            });
        }
        Ok(self.num.eval_f64(point) / d)
    }

    /// Weight under a grading of the variables, when numerator and
    /// denominator are both quasi-homogeneous. Zero has no weight.
    pub fn quasi_homogeneous_weight(&self, weights: [i64; 3]) -> Option<i64> {
        Some(self.num.quasi_homogeneous_weight(weights)? - self.den.quasi_homogeneous_weight(weights)?)
    }

    /// Numerator and denominator rescaled to coprime integer coefficients with
    /// a positive leading denominator coefficient; used for printing.
    pub fn integer_parts(&self) -> (Poly3, Poly3) {
        let s = coefficient_normalizer(self.num.terms().chain(self.den.terms()).map(|(_, c)| c));
        (self.num.scale(&s), self.den.scale(&s))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.integer_parts();
        if den.is_one() {
            return write!(f, "{num}");
        }
        if num.num_terms() > 1 {
            write!(f, "({num})")?;
        } else {
            write!(f, "{num}")?;
        }
        let bare = den.is_constant()
            || (den.is_monomial()
                && den.leading_coefficient().is_one()
                && den.leading_term().unwrap().0 .0.iter().filter(|&&e| e > 0).count() == 1);
        if bare {
            write!(f, "/{den}")
        } else {
            write!(f, "/({den})")
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                self.$try(rhs).expect(concat!("RationalFunction::", stringify!($method)))
            }
        }
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$method(rhs)
            }
        }
        impl $tr<RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
// Panics on division by the zero function.
forward_binop!(Div, div, try_div);

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl From<Poly3> for RationalFunction {
    fn from(p: Poly3) -> Self {
        Self::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn vars() -> (RationalFunction, RationalFunction, RationalFunction) {
        let c = Chart::xyz();
        (RationalFunction::var(&c, 0), RationalFunction::var(&c, 1), RationalFunction::var(&c, 2))
    }

    fn k(n: i64) -> RationalFunction {
        RationalFunction::from_int(&Chart::xyz(), n)
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let c = Chart::xyz();
        let (x, y, z) = (Poly3::var(&c, 0), Poly3::var(&c, 1), Poly3::var(&c, 2));
        let two = Poly3::from_int(&c, 2);
        let f = RationalFunction::new(&y * (y.pow(4) - x.pow(2)), &two * &z * y.pow(3)).unwrap();
        assert_eq!(f.numer(), &(y.pow(4) - x.pow(2)).scale(&rat(1, 2)));
        assert_eq!(f.denom(), &(&z * y.pow(2)));
        assert_eq!(f.to_string(), "(y^4 - x^2)/(2*y^2*z)");

        let g = RationalFunction::new(x.pow(2), x.clone()).unwrap();
        assert_eq!(g, RationalFunction::from_poly(x.clone()));
        assert!(RationalFunction::new(Poly3::zero(&c), &two * &z * y.pow(3)).unwrap().is_zero());
        assert_eq!(RationalFunction::new(x.clone(), Poly3::zero(&c)), Err(AlgebraError::ZeroDenominator));
    }

    #[test]
    fn partial_derivatives() {
        let (x, y, z) = vars();
        let m = (k(2) * &z * y.try_pow(3).unwrap()).inv().unwrap();
        assert_eq!(m.partial("y").unwrap(), k(-3) / (k(2) * &z * y.try_pow(4).unwrap()));
        let h1 = x.try_pow(2).unwrap() / y.try_pow(2).unwrap() - y.try_pow(2).unwrap();
        assert_eq!(h1.partial("x").unwrap(), k(2) * &x / y.try_pow(2).unwrap());
        assert!(x.partial("z").unwrap().is_zero());
        assert_eq!(x.partial("w"), Err(AlgebraError::UnknownVariable("w".into())));
    }

    #[test]
    fn display_forms() {
        let (x, y, z) = vars();
        let m = (k(2) * &z * y.try_pow(3).unwrap()).inv().unwrap();
        assert_eq!(m.to_string(), "1/(2*y^3*z)");
        assert_eq!(k(0).to_string(), "0");
        assert_eq!((x.try_pow(2).unwrap() - y.try_pow(2).unwrap()).to_string(), "x^2 - y^2");
        assert_eq!((&y / k(2)).to_string(), "y/2");
        assert_eq!((k(2) * &x * &z - y.try_pow(2).unwrap() / k(2)).to_string(), "(4*x*z - y^2)/2");
        assert_eq!((-&x / &y).to_string(), "-x/y");
    }

    #[test]
    fn henrici_sum_matches_naive() {
        let (x, y, z) = vars();
        let a = &x / (&y * (&x + &z));
        let b = &z / (&y * (&x - &z));
        let naive = RationalFunction::new(
            a.numer() * b.denom() + b.numer() * a.denom(),
            a.denom() * b.denom(),
        )
        .unwrap();
        assert_eq!(&a + &b, naive);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation() {
        let (_, y, z) = vars();
        let m = (k(2) * &z * y.try_pow(3).unwrap()).inv().unwrap();
        let one = rat(1, 1);
        assert_eq!(m.eval_exact(&[one.clone(), one.clone(), one.clone()]).unwrap(), rat(1, 2));
        let inv_y = y.inv().unwrap();
        let err = inv_y.eval_exact(&[one.clone(), rat(0, 1), one]).unwrap_err();
        assert!(matches!(err, AlgebraError::SingularPoint { ref denominator, .. } if denominator == "y"));
    }

    #[test]
    fn negative_power_inverts() {
        let (x, _, _) = vars();
        assert_eq!(x.try_pow(-2).unwrap(), (&x * &x).inv().unwrap());
        assert_eq!(k(0).try_pow(-1), Err(AlgebraError::DivisionByZero));
    }
}

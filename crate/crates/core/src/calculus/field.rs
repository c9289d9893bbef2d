use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::algebra::{BigRational, Chart, RationalFunction};

/// Vector field `X = Σ Xⁱ ∂/∂xⁱ`. Also used for covectors and for the
/// coefficient vectors of two-forms.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField3 {
    pub components: [RationalFunction; 3],
}

impl VectorField3 {
    pub fn new(components: [RationalFunction; 3]) -> Self {
        VectorField3 { components }
    }

    pub fn zero(chart: &Chart) -> Self {
        let z = RationalFunction::zero(chart);
        VectorField3 { components: [z.clone(), z.clone(), z] }
    }

    /// The coordinate field `∂/∂xⁱ`.
    pub fn coordinate(chart: &Chart, index: usize) -> Self {
        let mut f = Self::zero(chart);
        f.components[index] = RationalFunction::one(chart);
        f
    }

    pub fn chart(&self) -> &Chart {
        self.components[0].chart()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(RationalFunction::is_zero)
    }

    pub fn scale(&self, f: &RationalFunction) -> Self {
        self.map(|c| c * f)
    }

    pub fn scale_const(&self, c: &BigRational) -> Self {
        self.map(|k| k.scale(c))
    }

    pub fn map(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> Self {
        let [a, b, c] = &self.components;
        VectorField3 { components: [f(a), f(b), f(c)] }
    }

    /// `X(f) = Σ Xⁱ ∂f/∂xⁱ`.
    pub fn apply(&self, f: &RationalFunction) -> RationalFunction {
        directional_derivative(self, f)
    }
}

impl fmt::Display for VectorField3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.components;
        write!(f, "({a}, {b}, {c})")
    }
}

impl fmt::Debug for VectorField3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField3{self}")
    }
}

impl Add for &VectorField3 {
    type Output = VectorField3;
    fn add(self, rhs: &VectorField3) -> VectorField3 {
        let (a, b) = (&self.components, &rhs.components);
        VectorField3 { components: [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]] }
    }
}

impl Sub for &VectorField3 {
    type Output = VectorField3;
    fn sub(self, rhs: &VectorField3) -> VectorField3 {
        let (a, b) = (&self.components, &rhs.components);
        VectorField3 { components: [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]] }
    }
}

impl Neg for &VectorField3 {
    type Output = VectorField3;
    fn neg(self) -> VectorField3 {
        self.map(|c| -c)
    }
}

pub fn directional_derivative(x: &VectorField3, f: &RationalFunction) -> RationalFunction {
    (0..3)
        .filter(|&i| !x.components[i].is_zero())
        .map(|i| &x.components[i] * &f.derivative(i))
        .fold(RationalFunction::zero(f.chart()), |acc, t| acc + t)
}

/// Jacobi–Lie bracket `[X, Y]ⁱ = X(Yⁱ) − Y(Xⁱ)`.
pub fn lie_bracket(x: &VectorField3, y: &VectorField3) -> VectorField3 {
    let comp = |i: usize| directional_derivative(x, &y.components[i]) - directional_derivative(y, &x.components[i]);
    VectorField3 { components: [comp(0), comp(1), comp(2)] }
}

pub fn grad(f: &RationalFunction) -> VectorField3 {
    VectorField3 { components: [f.derivative(0), f.derivative(1), f.derivative(2)] }
}

pub fn curl(a: &VectorField3) -> VectorField3 {
    let [a1, a2, a3] = &a.components;
    VectorField3 {
        components: [
            a3.derivative(1) - a2.derivative(2),
            a1.derivative(2) - a3.derivative(0),
            a2.derivative(0) - a1.derivative(1),
        ],
    }
}

pub fn div(a: &VectorField3) -> RationalFunction {
    let [a1, a2, a3] = &a.components;
    a1.derivative(0) + a2.derivative(1) + a3.derivative(2)
}

pub fn cross(a: &VectorField3, b: &VectorField3) -> VectorField3 {
    let [a1, a2, a3] = &a.components;
    let [b1, b2, b3] = &b.components;
    VectorField3 { components: [a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1] }
}

pub fn dot(a: &VectorField3, b: &VectorField3) -> RationalFunction {
    let [a1, a2, a3] = &a.components;
    let [b1, b2, b3] = &b.components;
    a1 * b1 + a2 * b2 + a3 * b3
}

/// Scalar triple product `(a × b)·c`.
pub fn triple(a: &VectorField3, b: &VectorField3, c: &VectorField3) -> RationalFunction {
    dot(&cross(a, b), c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> [RationalFunction; 3] {
        let c = Chart::xyz();
        [0, 1, 2].map(|i| RationalFunction::var(&c, i))
    }

    fn k(n: i64) -> RationalFunction {
        RationalFunction::from_int(&Chart::xyz(), n)
    }

    #[test]
    fn curl_of_gradient_vanishes() {
        let [x, y, z] = vars();
        let f = &x * &x * &y + &z;
        assert!(curl(&grad(&f)).is_zero());
        assert!(div(&curl(&VectorField3::new([&x * &y, &z / &x, &y * &y * &z]))).is_zero());
    }

    #[test]
    fn bracket_of_field_with_itself() {
        let [x, y, z] = vars();
        let v = VectorField3::new([&x * &x + &y * &y * &y * &y, &x * &y, k(2) * &y * &y * &z - &x * &z]);
        assert!(lie_bracket(&v, &v).is_zero());
    }

    #[test]
    fn darboux_halphen_triple_product() {
        let [x, y, z] = vars();
        let v = VectorField3::new([&y / k(2), k(3) * &z, k(2) * &x * &z - &y * &y / k(2)]);
        let u = VectorField3::new([k(2) * &x, k(4) * &y, k(6) * &z]);
        let w = VectorField3::new([k(-6), k(-4) * &x, k(-2) * &y]);
        let expected = k(72) * &x * &y * &z - k(16) * &y * &y * &y + k(4) * &x * &x * &y * &y
            - k(16) * &x * &x * &x * &z
            - k(108) * &z * &z;
        assert_eq!(triple(&v, &u, &w), expected);
    }
}

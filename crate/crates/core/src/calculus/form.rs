use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::field::{cross, curl, div, dot, grad, VectorField3};
use super::{CalculusError, Result};
use crate::algebra::{BigRational, Chart, RationalFunction};

/// Differential form on the chart. One-forms are stored over `(dx, dy, dz)`,
/// two-forms over `(dy∧dz, dz∧dx, dx∧dy)`, three-forms over `dx∧dy∧dz`.
#[derive(Clone, PartialEq, Eq)]
pub enum KForm {
    Zero(RationalFunction),
    One(VectorField3),
    Two(VectorField3),
    Three(RationalFunction),
}

impl KForm {
    pub fn grade(&self) -> u8 {
        match self {
            KForm::Zero(_) => 0,
            KForm::One(_) => 1,
            KForm::Two(_) => 2,
            KForm::Three(_) => 3,
        }
    }

    pub fn zero(chart: &Chart, grade: u8) -> Self {
        match grade {
            0 => KForm::Zero(RationalFunction::zero(chart)),
            1 => KForm::One(VectorField3::zero(chart)),
            2 => KForm::Two(VectorField3::zero(chart)),
            _ => KForm::Three(RationalFunction::zero(chart)),
        }
    }

    /// The coordinate one-form `dxⁱ`.
    pub fn dx(chart: &Chart, index: usize) -> Self {
        KForm::One(VectorField3::coordinate(chart, index))
    }

    pub fn volume(chart: &Chart) -> Self {
        KForm::Three(RationalFunction::one(chart))
    }

    pub fn one_form(a: RationalFunction, b: RationalFunction, c: RationalFunction) -> Self {
        KForm::One(VectorField3::new([a, b, c]))
    }

    /// Coefficients in the fixed basis order.
    pub fn coefficients(&self) -> Vec<&RationalFunction> {
        match self {
            KForm::Zero(f) | KForm::Three(f) => vec![f],
            KForm::One(a) | KForm::Two(a) => a.components.iter().collect(),
        }
    }

    pub fn chart(&self) -> &Chart {
        self.coefficients()[0].chart()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients().into_iter().all(RationalFunction::is_zero)
    }

    /// Covector of a one-form or coefficient vector of a two-form.
    pub fn as_vector(&self) -> Option<&VectorField3> {
        match self {
            KForm::One(a) | KForm::Two(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_scalar(&self) -> Option<&RationalFunction> {
        match self {
            KForm::Zero(f) | KForm::Three(f) => Some(f),
            _ => None,
        }
    }

    pub fn map(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> Self {
        match self {
            KForm::Zero(a) => KForm::Zero(f(a)),
            KForm::One(a) => KForm::One(a.map(f)),
            KForm::Two(a) => KForm::Two(a.map(f)),
            KForm::Three(a) => KForm::Three(f(a)),
        }
    }

    pub fn scale(&self, g: &RationalFunction) -> Self {
        self.map(|c| c * g)
    }

    pub fn scale_const(&self, c: &BigRational) -> Self {
        self.map(|k| k.scale(c))
    }

    fn zip(&self, other: &KForm, f: impl Fn(&RationalFunction, &RationalFunction) -> RationalFunction) -> KForm {
        let pair = |a: &VectorField3, b: &VectorField3| {
            VectorField3::new([0, 1, 2].map(|i| f(&a.components[i], &b.components[i])))
        };
        match (self, other) {
            (KForm::Zero(a), KForm::Zero(b)) => KForm::Zero(f(a, b)),
            (KForm::One(a), KForm::One(b)) => KForm::One(pair(a, b)),
            (KForm::Two(a), KForm::Two(b)) => KForm::Two(pair(a, b)),
            (KForm::Three(a), KForm::Three(b)) => KForm::Three(f(a, b)),
            _ => panic!("adding forms of grades {} and {}", self.grade(), other.grade()),
        }
    }
}

// Sums of forms of different grade are programming errors and panic.
impl Add for &KForm {
    type Output = KForm;
    fn add(self, rhs: &KForm) -> KForm {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &KForm {
    type Output = KForm;
    fn sub(self, rhs: &KForm) -> KForm {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Neg for &KForm {
    type Output = KForm;
    fn neg(self) -> KForm {
        self.map(|c| -c)
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.chart().names();
        let basis: Vec<String> = match self {
            KForm::Zero(_) => vec![String::new()],
            KForm::One(_) => (0..3).map(|i| format!("d{}", names[i])).collect(),
            KForm::Two(_) => (0..3).map(|i| format!("d{}^d{}", names[(i + 1) % 3], names[(i + 2) % 3])).collect(),
            KForm::Three(_) => vec![format!("d{}^d{}^d{}", names[0], names[1], names[2])],
        };
        let mut first = true;
        for (c, b) in self.coefficients().into_iter().zip(basis) {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if b.is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c}) {b}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KForm[{}]({self})", self.grade())
    }
}

/// Graded-anticommutative exterior product.
pub fn wedge(a: &KForm, b: &KForm) -> Result<KForm> {
    use KForm::*;
    Ok(match (a, b) {
        (Zero(f), other) | (other, Zero(f)) => other.scale(f),
        (One(p), One(q)) => Two(cross(p, q)),
        // dx∧(dy∧dz) = (dy∧dz)∧dx = volume, so both orders agree.
        (One(p), Two(q)) | (Two(q), One(p)) => Three(dot(p, q)),
        _ => return Err(CalculusError::GradeOverflow(a.grade(), b.grade())),
    })
}

pub fn exterior_derivative(omega: &KForm) -> Result<KForm> {
    Ok(match omega {
        KForm::Zero(f) => KForm::One(grad(f)),
        KForm::One(a) => KForm::Two(curl(a)),
        KForm::Two(b) => KForm::Three(div(b)),
        KForm::Three(_) => return Err(CalculusError::TopGrade),
    })
}

/// Contraction `ι_X ω` in the first slot.
pub fn interior_product(x: &VectorField3, omega: &KForm) -> Result<KForm> {
    Ok(match omega {
        KForm::Zero(_) => return Err(CalculusError::ContractScalar),
        KForm::One(a) => KForm::Zero(dot(x, a)),
        KForm::Two(b) => KForm::One(cross(b, x)),
        KForm::Three(f) => KForm::Two(x.scale(f)),
    })
}

/// `L_X ω = d(ι_X ω) + ι_X(dω)`.
pub fn lie_derivative(x: &VectorField3, omega: &KForm) -> KForm {
    let chart = omega.chart().clone();
    let first = match omega {
        KForm::Zero(_) => KForm::zero(&chart, 0),
        _ => exterior_derivative(&interior_product(x, omega).expect("grade >= 1")).expect("grade <= 2"),
    };
    let second = match omega {
        KForm::Three(_) => KForm::zero(&chart, 3),
        _ => interior_product(x, &exterior_derivative(omega).expect("grade <= 2")).expect("grade >= 1"),
    };
    &first + &second
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

    fn dx(i: usize) -> KForm {
        KForm::dx(&Chart::xyz(), i)
    }

    #[test]
    fn wedge_antisymmetry() {
        let c = Chart::xyz();
        assert!(wedge(&dx(0), &dx(0)).unwrap().is_zero());
        let xy = wedge(&dx(0), &dx(1)).unwrap();
        assert_eq!(xy, KForm::Two(VectorField3::coordinate(&c, 2)));
        assert_eq!(wedge(&dx(1), &dx(0)).unwrap(), -&xy);
        assert_eq!(wedge(&xy, &dx(2)).unwrap(), KForm::volume(&c));
        assert_eq!(wedge(&xy, &xy), Err(CalculusError::GradeOverflow(2, 2)));
    }

    #[test]
    fn exterior_derivative_examples() {
        let [x, y, _] = vars();
        let c = Chart::xyz();
        let d = exterior_derivative(&KForm::Zero(&x * &x * &y)).unwrap();
        assert_eq!(d, KForm::one_form(k(2) * &x * &y, &x * &x, k(0)));
        // d(dy - x dz) = dz∧dx
        let w2 = KForm::one_form(k(0), k(1), -&x);
        assert_eq!(exterior_derivative(&w2).unwrap(), wedge(&dx(2), &dx(0)).unwrap());
        assert_eq!(exterior_derivative(&KForm::volume(&c)), Err(CalculusError::TopGrade));
    }

    #[test]
    fn interior_product_examples() {
        let c = Chart::xyz();
        let ex = VectorField3::coordinate(&c, 0);
        assert_eq!(interior_product(&ex, &dx(0)).unwrap(), KForm::Zero(k(1)));
        assert!(interior_product(&ex, &dx(1)).unwrap().is_zero());
        assert_eq!(interior_product(&ex, &KForm::Zero(k(1))), Err(CalculusError::ContractScalar));
        // ι_{∂x}(dx∧dy) = dy
        let xy = wedge(&dx(0), &dx(1)).unwrap();
        assert_eq!(interior_product(&ex, &xy).unwrap(), dx(1));
    }

    #[test]
    fn guillot_volume_contraction_and_lie_derivative() {
        let [x, y, z] = vars();
        let c = Chart::xyz();
        let v = VectorField3::new([&x * &x + &y * &y * &y * &y, &x * &y, k(2) * &y * &y * &z - &x * &z]);
        let iv = interior_product(&v, &KForm::volume(&c)).unwrap();
        assert_eq!(iv, KForm::Two(v.clone()));
        let lv = lie_derivative(&v, &KForm::volume(&c));
        assert_eq!(lv, KForm::Three(k(2) * &x + k(2) * &y * &y));
        let m = (k(2) * &z * &y * &y * &y).inv().unwrap();
        assert!(lie_derivative(&v, &KForm::Three(m)).is_zero());
        let f = &x * &z;
        assert_eq!(lie_derivative(&v, &KForm::Zero(f.clone())), KForm::Zero(v.apply(&f)));
    }
}

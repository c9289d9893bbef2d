use serde::Serialize;

use super::{CompiledRational, NumericError, Result};
use crate::calculus::{exterior_derivative, KForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FdKind {
    Grad,
    Curl,
    Div,
    /// Exterior derivative of whatever grade is given.
    D,
}

const MIN_DEN: f64 = 1e-12;

fn eval_all(fs: &[CompiledRational], x: &[f64; 3]) -> Result<Vec<f64>> {
    fs.iter()
        .map(|f| f.eval(x, MIN_DEN).ok_or(NumericError::SingularStencil(x[0], x[1], x[2])))
        .collect()
}

/// Central-difference `d omega` at `p`, in the basis order of the result.
fn fd_exterior(omega: &KForm, p: &[f64; 3], h: f64) -> Result<Vec<f64>> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(NumericError::InvalidStep(h));
    }
    let fs: Vec<CompiledRational> = omega.coefficients().into_iter().map(CompiledRational::new).collect();
    // partial[i][j] = ∂_i of coefficient j
    let mut partial = Vec::with_capacity(3);
    for i in 0..3 {
        let (mut plus, mut minus) = (*p, *p);
        plus[i] += h;
        minus[i] -= h;
        let (a, b) = (eval_all(&fs, &plus)?, eval_all(&fs, &minus)?);
        partial.push(a.iter().zip(&b).map(|(a, b)| (a - b) / (2.0 * h)).collect::<Vec<_>>());
    }
    Ok(match omega.grade() {
        0 => vec![partial[0][0], partial[1][0], partial[2][0]],
        1 => vec![
            partial[1][2] - partial[2][1],
            partial[2][0] - partial[0][2],
            partial[0][1] - partial[1][0],
        ],
        2 => vec![partial[0][0] + partial[1][1] + partial[2][2]],
        g => return Err(NumericError::WrongGrade { kind: FdKind::D, grade: g }),
    })
}

fn eval_form(omega: &KForm, p: &[f64; 3]) -> Result<Vec<f64>> {
    let fs: Vec<CompiledRational> = omega.coefficients().into_iter().map(CompiledRational::new).collect();
    eval_all(&fs, p)
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

/// Largest componentwise gap between the symbolic operator and its central
/// difference at `p`.
pub fn finite_difference_check(kind: FdKind, object: &KForm, p: &[f64; 3], h: f64) -> Result<f64> {
    let grade = object.grade();
    let ok = match kind {
        FdKind::Grad => grade == 0,
        FdKind::Curl => grade == 1,
        FdKind::Div => grade == 2,
        FdKind::D => grade < 3,
    };
    if !ok {
        return Err(NumericError::WrongGrade { kind, grade });
    }
    let symbolic = exterior_derivative(object).expect("grade < 3");
    Ok(max_diff(&eval_form(&symbolic, p)?, &fd_exterior(object, p, h)?))
}

/// `max |FD(d lhs)(p) − rhs(p)|`: checks an identity `d lhs = rhs` without
/// using the symbolic exterior derivative.
pub fn fd_identity(lhs: &KForm, rhs: &KForm, p: &[f64; 3], h: f64) -> Result<f64> {
    Ok(max_diff(&fd_exterior(lhs, p, h)?, &eval_form(rhs, p)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Chart, RationalFunction};
    use crate::calculus::VectorField3;

    fn vars() -> [RationalFunction; 3] {
        let c = Chart::xyz();
        [0, 1, 2].map(|i| RationalFunction::var(&c, i))
    }

    #[test]
    fn constant_gradient_is_exact() {
        let c = Chart::xyz();
        let k = KForm::Zero(RationalFunction::from_int(&c, 5));
        assert_eq!(finite_difference_check(FdKind::Grad, &k, &[0.3, -1.0, 2.0], 1e-3).unwrap(), 0.0);
    }

    #[test]
    fn second_order_convergence() {
        let [x, y, z] = vars();
        let a = KForm::One(VectorField3::new([&x * &y / &z, &y * &y * &z, &x / &y]));
        let p = [1.1, 0.7, 1.3];
        let e1 = finite_difference_check(FdKind::Curl, &a, &p, 1e-3).unwrap();
        let e2 = finite_difference_check(FdKind::Curl, &a, &p, 5e-4).unwrap();
        let ratio = e1 / e2;
        assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn grade_mismatch_and_singular_stencil() {
        let [x, y, _] = vars();
        let f = KForm::Zero(&x / &y);
        assert!(matches!(finite_difference_check(FdKind::Div, &f, &[1.0, 1.0, 1.0], 1e-3), Err(NumericError::WrongGrade { .. })));
        assert!(matches!(
            finite_difference_check(FdKind::Grad, &f, &[1.0, 0.0, 1.0], 1e-3),
            Err(NumericError::SingularStencil(..))
        ));
    }
}

use super::{Check, VerificationReport};
use crate::algebra::RationalFunction;
use crate::calculus::{cross, dot, exterior_derivative, interior_product, lie_bracket, wedge, KForm, VectorField3};

/// Co-frame `(ω¹, ω², ω³)` with `dω¹ = dω³ = 0`, `dω² = ω³∧ω¹`, and fields
/// `(u, v, w)` with `[v,w] = [v,u] = 0`, `[w,u] = v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergFrame {
    pub omega1: KForm,
    pub omega2: KForm,
    pub omega3: KForm,
    pub u: VectorField3,
    pub v: VectorField3,
    pub w: VectorField3,
}

impl HeisenbergFrame {
    /// `(ω¹ × ω²)·ω³`.
    pub fn multiplier(&self) -> RationalFunction {
        let c = |w: &KForm| w.as_vector().expect("one-form").clone();
        dot(&cross(&c(&self.omega1), &c(&self.omega2)), &c(&self.omega3))
    }
}

pub fn heisenberg_verify(hf: &HeisenbergFrame) -> VerificationReport {
    let d = |w: &KForm| exterior_derivative(w).expect("one-form");
    let mut r = VerificationReport::default();
    r.push(Check::zero("heisenberg.domega1", "d omega1 = 0", d(&hf.omega1)));
    r.push(Check::zero("heisenberg.domega3", "d omega3 = 0", d(&hf.omega3)));
    let w31 = wedge(&hf.omega3, &hf.omega1).expect("one-forms");
    r.push(Check::zero("heisenberg.domega2", "d omega2 = omega3^omega1", &d(&hf.omega2) - &w31));
    r.push(Check::zero("heisenberg.vw", "[v,w] = 0", lie_bracket(&hf.v, &hf.w)));
    r.push(Check::zero("heisenberg.vu", "[v,u] = 0", lie_bracket(&hf.v, &hf.u)));
    r.push(Check::zero("heisenberg.wu", "[w,u] = v", &lie_bracket(&hf.w, &hf.u) - &hf.v));
    let one = RationalFunction::one(hf.v.chart());
    let fields = [("w", &hf.w), ("v", &hf.v), ("u", &hf.u)];
    let forms = [("omega1", &hf.omega1), ("omega2", &hf.omega2), ("omega3", &hf.omega3)];
    for (i, (fname, x)) in fields.iter().enumerate() {
        for (j, (wname, theta)) in forms.iter().enumerate() {
            let KForm::Zero(p) = interior_product(x, theta).expect("one-form") else { unreachable!() };
            let (residual, anchor) = if i == j {
                (&p - &one, format!("i_{fname} {wname} = 1"))
            } else {
                (p, format!("i_{fname} {wname} = 0"))
            };
            r.push(Check::zero(&format!("heisenberg.pairing.{fname}.{wname}"), &anchor, residual));
        }
    }
    let m = hf.multiplier();
    r.push(Check::nonzero("heisenberg.multiplier", "M = (omega1 x omega2).omega3 != 0", m.clone()));
    r.notes.push(format!("heisenberg multiplier M = {m}"));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Chart;

    fn example() -> HeisenbergFrame {
        let c = Chart::xyz();
        let x = RationalFunction::var(&c, 0);
        let k = |n| RationalFunction::from_int(&c, n);
        HeisenbergFrame {
            omega1: KForm::dx(&c, 0),
            omega2: KForm::one_form(k(0), k(1), -&x),
            omega3: KForm::dx(&c, 2),
            u: VectorField3::new([k(0), x.clone(), k(1)]),
            v: VectorField3::coordinate(&c, 1),
            w: VectorField3::coordinate(&c, 0),
        }
    }

    #[test]
    fn realization_holds() {
        let hf = example();
        let r = heisenberg_verify(&hf);
        assert!(r.all_hold(), "{r}");
        assert!(hf.multiplier().is_one());
    }

    #[test]
    fn plain_dy_breaks_structure_equation() {
        let mut hf = example();
        let c = Chart::xyz();
        hf.omega2 = KForm::dx(&c, 1);
        let r = heisenberg_verify(&hf);
        let check = r.get("heisenberg.domega2").unwrap();
        assert!(!check.holds());
        let dzdx = wedge(&KForm::dx(&c, 2), &KForm::dx(&c, 0)).unwrap();
        assert_eq!(check.residual, (-&dzdx).into());
    }
}

//! Built-in systems, printed-form concordance, quasi-homogeneous grading and
//! the Darboux–Halphen change of variables.

mod concordance;
mod grading;
mod reduction;

pub use concordance::{concordance, ComponentConcordance, PrintedForm};
pub use grading::{grading_check, GradingError};
pub use reduction::{dh_reduction_check, dh_substitution};

use thiserror::Error;

use crate::algebra::{Chart, RationalFunction};
use crate::calculus::{KForm, VectorField3};
use crate::mcframe::HeisenbergFrame;
use crate::parser::{parse_system, SystemSpec};

pub const GUILLOT_SYS: &str = include_str!("../../systems/guillot.sys");
pub const DH_SYMMETRIC_SYS: &str = include_str!("../../systems/dh_symmetric.sys");
pub const DH_CLASSIC_SYS: &str = include_str!("../../systems/dh_classic.sys");
pub const HEISENBERG_SYS: &str = include_str!("../../systems/heisenberg_example.sys");

pub const BUILTIN_NAMES: [&str; 4] = ["guillot", "dh_classic", "dh_symmetric", "heisenberg_example"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemsError {
    #[error("unknown builtin system `{0}`; known: guillot, dh_classic, dh_symmetric, heisenberg_example")]
    UnknownSystem(String),
}

/// Which structure a builtin is checked against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrameKind {
    /// `(v, u, w)` form an sl(2) frame.
    Sl2,
    /// Carries a Heisenberg co-frame instead.
    Heisenberg(Box<HeisenbergFrame>),
    /// Only the vector field is known.
    FieldOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltinSystem {
    pub spec: SystemSpec,
    pub frame: FrameKind,
    /// Published closed forms, compared against the computed ones.
    pub printed: Vec<PrintedForm>,
}

pub fn builtin(name: &str) -> Result<BuiltinSystem, SystemsError> {
    let (source, frame, printed) = match name {
        "guillot" => (GUILLOT_SYS, FrameKind::Sl2, guillot_printed()),
        "dh_symmetric" => (DH_SYMMETRIC_SYS, FrameKind::Sl2, dh_printed()),
        "dh_classic" => (DH_CLASSIC_SYS, FrameKind::FieldOnly, Vec::new()),
        "heisenberg_example" => (HEISENBERG_SYS, FrameKind::Heisenberg(Box::new(heisenberg_frame())), Vec::new()),
        _ => return Err(SystemsError::UnknownSystem(name.to_owned())),
    };
    let spec = parse_system(source).expect("shipped system files parse");
    Ok(BuiltinSystem { spec, frame, printed })
}

/// `ω¹ = dx`, `ω² = dy − x dz`, `ω³ = dz` with `u = x∂y + ∂z`, `v = ∂y`, `w = ∂x`.
pub fn heisenberg_frame() -> HeisenbergFrame {
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

fn guillot_printed() -> Vec<PrintedForm> {
    let gamma = ["-1", "(x^2 - y^4 - 4*x*y^2)/(2*y^3)", "(y^4 - x^2*y)/(2*z*y^2)"];
    vec![
        PrintedForm::new("alpha", "1", ["0", "(2*y^2 - x)/(2*y^3)", "-x/(2*z*y^2)"]),
        PrintedForm::new("beta", "1", ["0", "1/(2*y^3)", "1/(2*z*y^2)"]),
        PrintedForm::new("gamma", "1", gamma),
        PrintedForm::new("A", "1", gamma),
    ]
}

fn dh_printed() -> Vec<PrintedForm> {
    vec![
        PrintedForm::new("alpha", "M", ["2*x*y^2 + 6*y*z - 8*x^2*z", "12*x*z - 4*y^2", "2*x*y - 18*z"]),
        PrintedForm::new("beta", "4*M", ["6*x*z - 2*y^2", "x*y - 9*z", "6*y - 2*x^2"]),
        PrintedForm::new("gamma", "M", ["18*z^2 - 8*x*y + 2*y^3", "4*x^2*z - x*y^2 - 3*y*z", "2*y^2 - 6*x*z"]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::format_system;

    #[test]
    fn builtins_parse_and_round_trip() {
        for name in BUILTIN_NAMES {
            let b = builtin(name).unwrap();
            assert_eq!(b.spec.name, name);
            assert_eq!(parse_system(&format_system(&b.spec)).unwrap(), b.spec);
        }
        assert!(builtin("lorenz").is_err());
    }

    #[test]
    fn catalog_contents() {
        let g = builtin("guillot").unwrap();
        let [x, y, z] = [0, 1, 2].map(|i| RationalFunction::var(&g.spec.chart, i));
        let two = RationalFunction::from_int(&g.spec.chart, 2);
        assert_eq!(g.spec.v_field(), VectorField3::new([&x * &x + &y * &y * &y * &y, &x * &y, &two * &y * &y * &z - &x * &z]));
        assert_eq!(g.spec.integrals.len(), 3);
        let dh = builtin("dh_symmetric").unwrap();
        assert!(dh.spec.integrals.is_empty());
        assert_eq!(dh.spec.v_field().components[0].to_string(), "y/2");
        let classic = builtin("dh_classic").unwrap();
        assert_eq!(classic.spec.chart.names()[2], "t3");
        assert!(classic.spec.u.is_none());
    }

    fn sl2(name: &str) -> (BuiltinSystem, crate::mcframe::Sl2Frame) {
        let b = builtin(name).unwrap();
        let spec = &b.spec;
        let f = crate::mcframe::Sl2Frame::new(spec.v_field(), spec.u_field().unwrap(), spec.w_field().unwrap()).unwrap();
        (b, f)
    }

    fn lookup<'a>(f: &'a crate::mcframe::Sl2Frame) -> impl Fn(&str) -> Option<&'a VectorField3> {
        move |name| match name {
            "alpha" => f.alpha.as_vector(),
            "beta" => f.beta.as_vector(),
            "gamma" | "A" => f.gamma.as_vector(),
            _ => None,
        }
    }

    #[test]
    fn guillot_concordance() {
        let (b, f) = sl2("guillot");
        let rows = concordance(&b.printed, lookup(&f), &f.m);
        assert_eq!(rows.len(), 12);
        let status: Vec<_> = rows.iter().map(|r| (r.form.as_str(), r.component.as_str(), r.matches())).collect();
        assert!(rows[..6].iter().all(ComponentConcordance::matches), "{status:?}");
        let dx = &rows[6];
        assert!(dx.matches());
        let dy = &rows[7];
        assert_eq!(dy.ratio.as_deref(), Some("-1"));
        let dz = &rows[8];
        assert!(dz.ratio.is_none());
        assert_eq!(dz.printed_only, vec!["-x^2*y"]);
        assert_eq!(dz.computed_only, vec!["-x^2"]);
        assert_eq!(dz.monomial_factor.as_deref(), Some("y"));
        assert_eq!(dz.denominator.as_deref(), Some("2*y^2*z"));
        assert_eq!(rows[9..], rows[6..9].iter().map(|r| ComponentConcordance { form: "A".into(), ..r.clone() }).collect::<Vec<_>>()[..]);
    }

    #[test]
    fn dh_concordance_flags_gamma_x() {
        let (b, f) = sl2("dh_symmetric");
        let rows = concordance(&b.printed, lookup(&f), &f.m);
        let mismatches: Vec<_> = rows.iter().filter(|r| !r.matches()).collect();
        assert_eq!(mismatches.len(), 1);
        let m = mismatches[0];
        assert_eq!((m.form.as_str(), m.component.as_str()), ("gamma", "dx"));
        assert_eq!(m.printed_only, vec!["-8*x*y"]);
        assert_eq!(m.computed_only, vec!["-8*x*y*z"]);
        assert_eq!(m.monomial_factor.as_deref(), Some("1/z"));
    }

    #[test]
    fn grading() {
        let (_, f) = sl2("dh_symmetric");
        let r = grading_check(&f, [1, 2, 3]).unwrap();
        assert_eq!(r.checks.len(), 4);
        assert!(r.all_hold(), "{r}");
        assert_eq!(f.m.quasi_homogeneous_weight([1, 2, 3]), Some(-6));
        let (_, g) = sl2("guillot");
        let r = grading_check(&g, [1, 2, 3]).unwrap();
        assert!(r.checks.is_empty());
        assert!(r.notes[0].contains("not applicable"));
        assert_eq!(grading_check(&g, [0, 0, 0]), Err(GradingError::UnsupportedWeights([0, 0, 0])));
    }

    #[test]
    fn heisenberg_builtin_verifies() {
        let b = builtin("heisenberg_example").unwrap();
        let FrameKind::Heisenberg(hf) = &b.frame else { panic!() };
        assert!(crate::mcframe::heisenberg_verify(hf).all_hold());
        assert_eq!(hf.v, b.spec.v_field());
    }
}

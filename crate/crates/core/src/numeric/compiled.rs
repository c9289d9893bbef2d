use num_traits::ToPrimitive;

use crate::algebra::{Poly3, RationalFunction};
use crate::calculus::VectorField3;

/// Polynomial flattened to `(exponents, f64 coefficient)` pairs.
#[derive(Clone, Debug)]
struct CompiledPoly {
    terms: Vec<([u32; 3], f64)>,
}

impl CompiledPoly {
    fn new(p: &Poly3) -> Self {
        let terms = p.terms().map(|(m, c)| (m.0, c.to_f64().unwrap_or(f64::NAN))).collect();
        CompiledPoly { terms }
    }

    fn eval(&self, x: &[f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c * x[0].powi(e[0] as i32) * x[1].powi(e[1] as i32) * x[2].powi(e[2] as i32))
            .sum()
    }
}

/// `f64` evaluator for a rational function.
#[derive(Clone, Debug)]
pub struct CompiledRational {
    num: CompiledPoly,
    den: CompiledPoly,
}

impl CompiledRational {
    pub fn new(f: &RationalFunction) -> Self {
        CompiledRational { num: CompiledPoly::new(f.numer()), den: CompiledPoly::new(f.denom()) }
    }

    pub fn denominator(&self, x: &[f64; 3]) -> f64 {
        self.den.eval(x)
    }

    /// `None` when `|denominator| < min_den`.
    pub fn eval(&self, x: &[f64; 3], min_den: f64) -> Option<f64> {
        let d = self.den.eval(x);
        (d.abs() >= min_den && d.is_finite()).then(|| self.num.eval(x) / d)
    }
}

#[derive(Clone, Debug)]
pub struct CompiledField {
    components: [CompiledRational; 3],
}

impl CompiledField {
    pub fn new(v: &VectorField3) -> Self {
        CompiledField { components: v.components.each_ref().map(CompiledRational::new) }
    }

    pub fn eval(&self, x: &[f64; 3], min_den: f64) -> Option<[f64; 3]> {
        Some([
            self.components[0].eval(x, min_den)?,
            self.components[1].eval(x, min_den)?,
            self.components[2].eval(x, min_den)?,
        ])
    }
}

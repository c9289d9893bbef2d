use num_traits::ToPrimitive;

use super::{BigRational, RationalFunction, Result};

/// Evaluation point, either exact or in double precision.
#[derive(Clone, Debug, PartialEq)]
pub enum Point3 {
    Exact([BigRational; 3]),
    Numeric([f64; 3]),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(BigRational),
    Numeric(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Value::Numeric(v) => *v,
        }
    }
}

/// Evaluates `f` at `p`: exactly for exact points, in floating point otherwise.
pub fn evaluate(f: &RationalFunction, p: &Point3) -> Result<Value> {
    match p {
        Point3::Exact(q) => f.eval_exact(q).map(Value::Exact),
        Point3::Numeric(r) => f.eval_f64(r).map(Value::Numeric),
    }
}

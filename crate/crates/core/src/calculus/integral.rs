use num_traits::{Signed, ToPrimitive, Zero};

use super::form::KForm;
use super::{CalculusError, Result};
use crate::algebra::{AlgebraError, BigRational, Chart, RationalFunction};

/// First integral of the form `r + Σ cᵢ·log(fᵢ)` with rational `cᵢ` and
/// rational-function `r`, `fᵢ`. Its differential is always rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogIntegral {
    pub rational_part: RationalFunction,
    pub log_terms: Vec<(BigRational, RationalFunction)>,
}

impl LogIntegral {
    pub fn rational(r: RationalFunction) -> Self {
        LogIntegral { rational_part: r, log_terms: Vec::new() }
    }

    pub fn new(rational_part: RationalFunction, log_terms: Vec<(BigRational, RationalFunction)>) -> Result<Self> {
        for (_, f) in &log_terms {
            f.chart().ensure_same(rational_part.chart())?;
            if f.is_zero() {
                return Err(CalculusError::ZeroLogArgument);
            }
        }
        Ok(LogIntegral { rational_part, log_terms })
    }

    pub fn chart(&self) -> &Chart {
        self.rational_part.chart()
    }

    /// Real value, with `log|f|` for each log term (its differential is the
    /// same as that of `log f` on either sign branch).
    pub fn eval_f64(&self, point: &[f64; 3]) -> std::result::Result<f64, AlgebraError> {
        let mut acc = self.rational_part.eval_f64(point)?;
        for (c, f) in &self.log_terms {
            let val = f.eval_f64(point)?;
            if val == 0.0 {
                return Err(AlgebraError::SingularPoint {
                    denominator: format!("log argument {f}"),
                    point: point.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
                });
            }
            acc += c.to_f64().unwrap_or(f64::NAN) * val.abs().ln();
        }
        Ok(acc)
    }
}

impl std::fmt::Display for LogIntegral {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        if !self.rational_part.is_zero() || self.log_terms.is_empty() {
            write!(f, "{}", self.rational_part)?;
            first = false;
        }
        for (c, arg) in &self.log_terms {
            let sign = if c.is_negative() { "-" } else { "+" };
            let abs = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                _ => write!(f, " {sign} ")?,
            }
            first = false;
            if abs == BigRational::from_integer(1.into()) {
                write!(f, "log({arg})")?;
            } else {
                write!(f, "{abs}*log({arg})")?;
            }
        }
        Ok(())
    }
}

/// `dH = d r + Σ cᵢ dfᵢ / fᵢ`.
pub fn integral_differential(h: &LogIntegral) -> Result<KForm> {
    let mut acc = super::exterior_derivative(&KForm::Zero(h.rational_part.clone()))?;
    for (c, f) in &h.log_terms {
        if f.is_zero() {
            return Err(CalculusError::ZeroLogArgument);
        }
        if c.is_zero() {
            continue;
        }
        let df = super::exterior_derivative(&KForm::Zero(f.clone()))?;
        let factor = f.inv()?.scale(c);
        acc = &acc + &df.scale(&factor);
    }
    Ok(acc)
}

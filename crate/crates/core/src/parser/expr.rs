use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{BigRational, Chart, RationalFunction};
use crate::calculus::LogIntegral;

/// Expression syntax tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Log(Box<Expr>),
}

/// Failure converting a well-formed tree into a value.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("log(...) is only allowed in first integrals")]
    LogNotAllowed,
    #[error("log term must be a constant multiple of log(f)")]
    MisplacedLog,
    #[error("log argument is identically zero")]
    ZeroLogArgument,
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0}")]
    Algebra(#[from] crate::algebra::AlgebraError),
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Int(n.into())
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_owned())
    }

    pub fn contains_log(&self) -> bool {
        match self {
            Expr::Int(_) | Expr::Var(_) => false,
            Expr::Log(_) => true,
            Expr::Neg(a) | Expr::Pow(a, _) => a.contains_log(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.contains_log() || b.contains_log(),
        }
    }

    /// Value of a log-free expression.
    pub fn to_rational(&self, chart: &Chart) -> Result<RationalFunction, ExprError> {
        Ok(match self {
            Expr::Int(n) => RationalFunction::constant(chart, BigRational::from_integer(n.clone())),
            Expr::Var(name) => {
                let i = chart.index_of(name).ok_or_else(|| ExprError::UnknownIdentifier(name.clone()))?;
                RationalFunction::var(chart, i)
            }
            Expr::Neg(a) => -a.to_rational(chart)?,
            Expr::Add(a, b) => a.to_rational(chart)?.try_add(&b.to_rational(chart)?)?,
            Expr::Sub(a, b) => a.to_rational(chart)?.try_sub(&b.to_rational(chart)?)?,
            Expr::Mul(a, b) => a.to_rational(chart)?.try_mul(&b.to_rational(chart)?)?,
            Expr::Div(a, b) => {
                let d = b.to_rational(chart)?;
                if d.is_zero() {
                    return Err(ExprError::DivisionByZero);
                }
                a.to_rational(chart)?.try_div(&d)?
            }
            Expr::Pow(a, e) => {
                let base = a.to_rational(chart)?;
                if base.is_zero() && *e < 0 {
                    return Err(ExprError::DivisionByZero);
                }
                base.try_pow(*e)?
            }
            Expr::Log(_) => return Err(ExprError::LogNotAllowed),
        })
    }

    /// Splits a sum into rational terms and constant multiples of `log(f)`.
    pub fn to_log_integral(&self, chart: &Chart) -> Result<LogIntegral, ExprError> {
        let mut rational = RationalFunction::zero(chart);
        let mut logs: Vec<(BigRational, RationalFunction)> = Vec::new();
        let mut terms = Vec::new();
        collect_summands(self, true, &mut terms);
        for (positive, term) in terms {
            if term.contains_log() {
                let (c, arg) = log_term(term, chart)?;
                logs.push((if positive { c } else { -c }, arg));
            } else {
                let r = term.to_rational(chart)?;
                rational = if positive { rational.try_add(&r)? } else { rational.try_sub(&r)? };
            }
        }
        LogIntegral::new(rational, logs).map_err(|_| ExprError::ZeroLogArgument)
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(n) if n.is_negative() => 3,
            Expr::Int(_) | Expr::Var(_) | Expr::Log(_) => 5,
        }
    }

    fn write_operand(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

fn collect_summands<'a>(e: &'a Expr, positive: bool, out: &mut Vec<(bool, &'a Expr)>) {
    match e {
        Expr::Add(a, b) => {
            collect_summands(a, positive, out);
            collect_summands(b, positive, out);
        }
        Expr::Sub(a, b) => {
            collect_summands(a, positive, out);
            collect_summands(b, !positive, out);
        }
        Expr::Neg(a) => collect_summands(a, !positive, out),
        _ => out.push((positive, e)),
    }
}

fn constant_of(e: &Expr, chart: &Chart) -> Result<BigRational, ExprError> {
    if e.contains_log() {
        return Err(ExprError::MisplacedLog);
    }
    e.to_rational(chart)?.as_constant().ok_or(ExprError::MisplacedLog)
}

fn log_term(e: &Expr, chart: &Chart) -> Result<(BigRational, RationalFunction), ExprError> {
    match e {
        Expr::Log(arg) => {
            if arg.contains_log() {
                return Err(ExprError::MisplacedLog);
            }
            let f = arg.to_rational(chart)?;
            if f.is_zero() {
                return Err(ExprError::ZeroLogArgument);
            }
            Ok((BigRational::one(), f))
        }
        Expr::Neg(a) => log_term(a, chart).map(|(c, f)| (-c, f)),
        Expr::Mul(a, b) if a.contains_log() && !b.contains_log() => {
            let (c, f) = log_term(a, chart)?;
            Ok((c * constant_of(b, chart)?, f))
        }
        Expr::Mul(a, b) if b.contains_log() && !a.contains_log() => {
            let (c, f) = log_term(b, chart)?;
            Ok((constant_of(a, chart)? * c, f))
        }
        Expr::Div(a, b) if a.contains_log() => {
            let (c, f) = log_term(a, chart)?;
            let k = constant_of(b, chart)?;
            if k.is_zero() {
                return Err(ExprError::DivisionByZero);
            }
            Ok((c / k, f))
        }
        _ => Err(ExprError::MisplacedLog),
    }
}

/// Deterministic text with the minimal parentheses needed to reparse to the
/// same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(name) => f.write_str(name),
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.write_operand(f, 4)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_operand(f, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.write_operand(f, 2)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.write_operand(f, 2)?;
                f.write_str(if matches!(self, Expr::Mul(..)) { "*" } else { "/" })?;
                b.write_operand(f, 3)
            }
            Expr::Pow(a, e) => {
                a.write_operand(f, 5)?;
                write!(f, "^{e}")
            }
            Expr::Log(a) => write!(f, "log({a})"),
        }
    }
}

pub fn format_expr(e: &Expr) -> String {
    e.to_string()
}

/// Builds a tree whose value is `f`, printed in canonical form.
pub fn expr_of(f: &RationalFunction) -> Expr {
    // Reparsing the canonical text is the simplest faithful conversion.
    super::parse_expr(&f.to_string(), f.chart()).expect("canonical text reparses")
}

pub(super) fn const_integer(e: &Expr) -> Option<i64> {
    match e {
        Expr::Int(n) => n.to_i64(),
        Expr::Neg(a) => const_integer(a)?.checked_neg(),
        Expr::Add(a, b) => const_integer(a)?.checked_add(const_integer(b)?),
        Expr::Sub(a, b) => const_integer(a)?.checked_sub(const_integer(b)?),
        Expr::Mul(a, b) => const_integer(a)?.checked_mul(const_integer(b)?),
        Expr::Div(a, b) => {
            let (p, q) = (const_integer(a)?, const_integer(b)?);
            (q != 0 && p % q == 0).then(|| p / q)
        }
        Expr::Pow(a, e) => {
            let base = const_integer(a)?;
            let e = u32::try_from(*e).ok()?;
            base.checked_pow(e)
        }
        Expr::Var(_) | Expr::Log(_) => None,
    }
}

use std::fmt;

use serde::Serialize;

use crate::algebra::RationalFunction;
use crate::calculus::{KForm, VectorField3};

/// Exact residual of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Residual {
    Scalar(RationalFunction),
    Vector(VectorField3),
    Form(KForm),
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        match self {
            Residual::Scalar(f) => f.is_zero(),
            Residual::Vector(v) => v.is_zero(),
            Residual::Form(w) => w.is_zero(),
        }
    }

    /// Coefficient functions, in basis order.
    pub fn components(&self) -> Vec<&RationalFunction> {
        match self {
            Residual::Scalar(f) => vec![f],
            Residual::Vector(v) => v.components.iter().collect(),
            Residual::Form(w) => w.coefficients(),
        }
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Scalar(r) => write!(f, "{r}"),
            Residual::Vector(v) => write!(f, "{v}"),
            Residual::Form(w) => write!(f, "{w}"),
        }
    }
}

impl From<RationalFunction> for Residual {
    fn from(f: RationalFunction) -> Self {
        Residual::Scalar(f)
    }
}

impl From<VectorField3> for Residual {
    fn from(v: VectorField3) -> Self {
        Residual::Vector(v)
    }
}

impl From<KForm> for Residual {
    fn from(w: KForm) -> Self {
        Residual::Form(w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    /// The residual must vanish identically.
    Zero,
    /// The residual must not vanish identically.
    Nonzero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub expect: Expect,
    pub residual: Residual,
}

impl Check {
    pub fn zero(name: &str, anchor: &str, residual: impl Into<Residual>) -> Self {
        Check { name: name.into(), anchor: anchor.into(), expect: Expect::Zero, residual: residual.into() }
    }

    pub fn nonzero(name: &str, anchor: &str, value: impl Into<Residual>) -> Self {
        Check { name: name.into(), anchor: anchor.into(), expect: Expect::Nonzero, residual: value.into() }
    }

    pub fn holds(&self) -> bool {
        match self.expect {
            Expect::Zero => self.residual.is_zero(),
            Expect::Nonzero => !self.residual.is_zero(),
        }
    }

    pub fn status(&self) -> &'static str {
        if self.holds() {
            "holds"
        } else {
            "fails"
        }
    }

    /// Formatted residual, present only when the check fails.
    pub fn failure_residual(&self) -> Option<String> {
        (!self.holds()).then(|| self.residual.to_string())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub system: String,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(system: &str) -> Self {
        VerificationReport { system: system.into(), ..Default::default() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(Check::holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.holds())
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "[{}] {} ({})", c.status(), c.name, c.anchor)?;
            if let Some(r) = c.failure_residual() {
                write!(f, ": residual {r}")?;
            }
            writeln!(f)?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

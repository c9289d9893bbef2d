use std::fmt;
use std::sync::{Arc, OnceLock};

use super::{AlgebraError, Result};

/// Ordered triple of coordinate names shared by every polynomial built on it.
#[derive(Clone)]
pub struct Chart(Arc<[String; 3]>);

impl Chart {
    pub fn new(a: &str, b: &str, c: &str) -> Result<Self> {
        let names = [a, b, c];
        for name in names {
            if !is_identifier(name) {
                return Err(AlgebraError::InvalidChart(format!("`{name}` is not an identifier")));
            }
            if name == "log" {
                return Err(AlgebraError::InvalidChart("`log` is reserved".into()));
            }
        }
        if a == b || b == c || a == c {
            return Err(AlgebraError::InvalidChart(format!("repeated variable in ({a}, {b}, {c})")));
        }
        Ok(Chart(Arc::new([a.to_owned(), b.to_owned(), c.to_owned()])))
    }

    /// The standard `x, y, z` chart.
    pub fn xyz() -> Self {
        static XYZ: OnceLock<Chart> = OnceLock::new();
        XYZ.get_or_init(|| Chart::new("x", "y", "z").unwrap()).clone()
    }

    /// The `t1, t2, t3` chart of the classical Darboux–Halphen variables.
    pub fn t123() -> Self {
        static T: OnceLock<Chart> = OnceLock::new();
        T.get_or_init(|| Chart::new("t1", "t2", "t3").unwrap()).clone()
    }

    pub fn names(&self) -> &[String; 3] {
        &self.0
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn ensure_same(&self, other: &Chart) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(AlgebraError::ChartMismatch { left: self.to_string(), right: other.to_string() })
        }
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Chart {}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}, {}", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chart({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_charts() {
        assert!(Chart::new("x", "x", "z").is_err());
        assert!(Chart::new("x", "2y", "z").is_err());
        assert!(Chart::new("log", "y", "z").is_err());
        assert_eq!(Chart::new("x", "y", "z").unwrap(), Chart::xyz());
        assert_ne!(Chart::xyz(), Chart::t123());
    }
}

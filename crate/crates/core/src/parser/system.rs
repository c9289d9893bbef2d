use std::fmt::Write as _;

use super::{parse_at, Expr, ParseError, ParseErrorKind};
use crate::algebra::{Chart, RationalFunction};
use crate::calculus::{LogIntegral, VectorField3};

/// Parsed system-specification file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemSpec {
    pub name: String,
    pub chart: Chart,
    pub v: [Expr; 3],
    pub u: Option<[Expr; 3]>,
    pub w: Option<[Expr; 3]>,
    pub integrals: Vec<(String, Expr)>,
    pub multiplier: Option<Expr>,
}

impl SystemSpec {
    fn field(&self, e: &[Expr; 3]) -> VectorField3 {
        VectorField3::new(e.clone().map(|c| c.to_rational(&self.chart).expect("validated when parsed")))
    }

    pub fn v_field(&self) -> VectorField3 {
        self.field(&self.v)
    }

    pub fn u_field(&self) -> Option<VectorField3> {
        self.u.as_ref().map(|e| self.field(e))
    }

    pub fn w_field(&self) -> Option<VectorField3> {
        self.w.as_ref().map(|e| self.field(e))
    }

    pub fn multiplier_hint(&self) -> Option<RationalFunction> {
        self.multiplier.as_ref().map(|e| e.to_rational(&self.chart).expect("validated when parsed"))
    }

    pub fn log_integrals(&self) -> Vec<(String, LogIntegral)> {
        self.integrals
            .iter()
            .map(|(n, e)| (n.clone(), e.to_log_integral(&self.chart).expect("validated when parsed")))
            .collect()
    }
}

struct Line<'a> {
    number: usize,
    key: &'a str,
    key_column: usize,
    value: &'a str,
    value_column: usize,
}

fn char_column(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

fn split_lines(source: &str) -> Result<Vec<Line<'_>>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in source.lines().enumerate() {
        let number = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let key_start = content.len() - content.trim_start().len();
        let Some(colon) = content.find(':') else {
            return Err(ParseError {
                kind: ParseErrorKind::Invalid("expected `key: value`".into()),
                line: number,
                column: char_column(raw, key_start),
            });
        };
        let value_part = &content[colon + 1..];
        let value_start = colon + 1 + (value_part.len() - value_part.trim_start().len());
        out.push(Line {
            number,
            key: content[key_start..colon].trim_end(),
            key_column: char_column(raw, key_start),
            value: content[value_start..].trim_end(),
            value_column: char_column(raw, value_start),
        });
    }
    Ok(out)
}

fn at(line: &Line<'_>, kind: ParseErrorKind) -> ParseError {
    ParseError { kind, line: line.number, column: line.key_column }
}

fn parse_value(line: &Line<'_>, chart: &Chart, allow_log: bool) -> Result<Expr, ParseError> {
    parse_value_at(line.value, line.number, line.value_column, chart, allow_log)
}

fn parse_value_at(text: &str, line: usize, column: usize, chart: &Chart, allow_log: bool) -> Result<Expr, ParseError> {
    let e = parse_at(text, chart, allow_log, line, column)?;
    let checked = if allow_log {
        e.to_log_integral(chart).map(|_| ())
    } else {
        e.to_rational(chart).map(|_| ())
    };
    checked.map_err(|err| ParseError { kind: ParseErrorKind::Invalid(err.to_string()), line, column })?;
    Ok(e)
}

fn parse_triple(line: &Line<'_>, chart: &Chart) -> Result<[Expr; 3], ParseError> {
    let mut parts = Vec::new();
    let mut offset = 0;
    for piece in line.value.split(';') {
        let lead = piece.len() - piece.trim_start().len();
        let column = line.value_column + line.value[..offset + lead].chars().count();
        parts.push(parse_value_at(piece.trim(), line.number, column, chart, false)?);
        offset += piece.len() + 1;
    }
    <[Expr; 3]>::try_from(parts).map_err(|p| {
        at(line, ParseErrorKind::Invalid(format!("`{}` needs 3 components separated by `;`, found {}", line.key, p.len())))
    })
}

/// Parses a system file:
///
/// ```text
/// name: guillot
/// variables: x, y, z
/// v: x^2 + y^4; x*y; 2*y^2*z - x*z
/// u: 2*x; y; -z
/// w: -1; 0; 0
/// integral H1: x^2/y^2 - y^2
/// multiplier: 1/(2*z*y^3)
/// ```
pub fn parse_system(source: &str) -> Result<SystemSpec, ParseError> {
    let lines = split_lines(source)?;
    let mut seen: Vec<&str> = Vec::new();
    for line in &lines {
        if seen.contains(&line.key) {
            return Err(at(line, ParseErrorKind::DuplicateKey(line.key.to_owned())));
        }
        seen.push(line.key);
    }

    let chart = match lines.iter().find(|l| l.key == "variables") {
        None => Chart::xyz(),
        Some(line) => {
            let names: Vec<&str> = line.value.split(',').map(str::trim).collect();
            let bad = || {
                ParseError {
                    kind: ParseErrorKind::Invalid("`variables` needs three distinct identifiers other than `log`".into()),
                    line: line.number,
                    column: line.value_column,
                }
            };
            match names.as_slice() {
                [a, b, c] => Chart::new(a, b, c).map_err(|_| bad())?,
                _ => return Err(bad()),
            }
        }
    };

    let mut name = None;
    let mut v = None;
    let mut u = None;
    let mut w = None;
    let mut integrals = Vec::new();
    let mut multiplier = None;
    for line in &lines {
        match line.key {
            "name" => name = Some(line.value.to_owned()),
            "variables" => {}
            "v" => v = Some(parse_triple(line, &chart)?),
            "u" => u = Some(parse_triple(line, &chart)?),
            "w" => w = Some(parse_triple(line, &chart)?),
            "multiplier" => multiplier = Some(parse_value(line, &chart, false)?),
            key => match key.strip_prefix("integral") {
                Some(rest) if rest.starts_with(char::is_whitespace) && crate::algebra::is_identifier(rest.trim()) => {
                    integrals.push((rest.trim().to_owned(), parse_value(line, &chart, true)?));
                }
                _ => return Err(at(line, ParseErrorKind::UnknownKey(key.to_owned()))),
            },
        }
    }

    let end = ParseError { kind: ParseErrorKind::MissingKey("v".into()), line: source.lines().count().max(1), column: 1 };
    let v = v.ok_or(end)?;
    if u.is_some() != w.is_some() {
        let missing = if u.is_some() { "w" } else { "u" };
        let line = lines.iter().find(|l| l.key == if u.is_some() { "u" } else { "w" }).expect("present");
        return Err(at(line, ParseErrorKind::MissingKey(missing.into())));
    }
    Ok(SystemSpec { name: name.unwrap_or_else(|| "unnamed".into()), chart, v, u, w, integrals, multiplier })
}

/// Serializes a system in the file grammar accepted by [`parse_system`].
pub fn format_system(spec: &SystemSpec) -> String {
    let triple = |e: &[Expr; 3]| e.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
    let names = spec.chart.names();
    let mut out = String::new();
    let _ = writeln!(out, "name: {}", spec.name);
    let _ = writeln!(out, "variables: {}, {}, {}", names[0], names[1], names[2]);
    let _ = writeln!(out, "v: {}", triple(&spec.v));
    if let Some(u) = &spec.u {
        let _ = writeln!(out, "u: {}", triple(u));
    }
    if let Some(w) = &spec.w {
        let _ = writeln!(out, "w: {}", triple(w));
    }
    for (n, e) in &spec.integrals {
        let _ = writeln!(out, "integral {n}: {e}");
    }
    if let Some(m) = &spec.multiplier {
        let _ = writeln!(out, "multiplier: {m}");
    }
    out
}

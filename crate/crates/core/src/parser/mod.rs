//! Expression and system-file parsing.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' ['-'] power)?      exponent must be a constant integer
//! atom  := INT | IDENT | 'log' '(' expr ')' | '(' expr ')'
//! ```
//!
//! so `-x^2` is `-(x^2)` and `x^2^3` is `x^(2^3)`. Products must be written
//! with an explicit `*`.

mod expr;
mod system;

pub use expr::{expr_of, format_expr, Expr, ExprError};
pub use system::{format_system, parse_system, SystemSpec};

use std::fmt;

use num_bigint::BigInt;

use crate::algebra::{Chart, RationalFunction};
use crate::calculus::LogIntegral;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical(char),
    UnknownIdentifier(String),
    NonIntegerExponent,
    LogArity,
    LogNotAllowed,
    ImplicitMultiplication,
    UnexpectedToken(String),
    UnexpectedEnd,
    Empty,
    Invalid(String),
    MissingKey(String),
    DuplicateKey(String),
    UnknownKey(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Lexical(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::UnknownIdentifier(s) => write!(f, "unknown identifier `{s}`"),
            ParseErrorKind::NonIntegerExponent => f.write_str("exponent must be a constant integer"),
            ParseErrorKind::LogArity => f.write_str("log takes exactly one argument"),
            ParseErrorKind::LogNotAllowed => f.write_str("log(...) is only allowed in first integrals"),
            ParseErrorKind::ImplicitMultiplication => f.write_str("implicit multiplication; write `*` explicitly"),
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected `{t}`"),
            ParseErrorKind::UnexpectedEnd => f.write_str("unexpected end of input"),
            ParseErrorKind::Empty => f.write_str("empty expression"),
            ParseErrorKind::Invalid(msg) => f.write_str(msg),
            ParseErrorKind::MissingKey(k) => write!(f, "missing required key `{k}`"),
            ParseErrorKind::DuplicateKey(k) => write!(f, "duplicate key `{k}`"),
            ParseErrorKind::UnknownKey(k) => write!(f, "unknown key `{k}`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Op(char),
    End,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Int(n) => write!(f, "{n}"),
            Token::Ident(s) => f.write_str(s),
            Token::Op(c) => write!(f, "{c}"),
            Token::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str, line: usize, col0: usize) -> Result<Vec<(Token, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Token::Int(digits.parse().expect("digits")), column));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Token::Ident(chars[start..i].iter().collect()), column));
        } else if "+-*/^(),".contains(c) {
            out.push((Token::Op(c), column));
            i += 1;
        } else {
            return Err(ParseError { kind: ParseErrorKind::Lexical(c), line, column });
        }
    }
    out.push((Token::End, col0 + chars.len()));
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    line: usize,
    chart: &'a Chart,
    allow_log: bool,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn column(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { kind, line: self.line, column: self.column() }
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Token::End => self.error(ParseErrorKind::UnexpectedEnd),
            t => self.error(ParseErrorKind::UnexpectedToken(t.to_string())),
        }
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == &Token::Op(op) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<(), ParseError> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if matches!(self.peek(), Token::Int(_) | Token::Ident(_) | Token::Op('(')) {
                return Err(self.error(ParseErrorKind::ImplicitMultiplication));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let column = self.column();
        let exponent = if self.eat('-') { Expr::Neg(Box::new(self.power()?)) } else { self.power()? };
        match expr::const_integer(&exponent) {
            Some(e) => Ok(Expr::Pow(Box::new(base), e)),
            None => Err(ParseError { kind: ParseErrorKind::NonIntegerExponent, line: self.line, column }),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let column = self.column();
        match self.peek().clone() {
            Token::Int(n) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Token::Ident(name) if name == "log" => {
                if !self.allow_log {
                    return Err(self.error(ParseErrorKind::LogNotAllowed));
                }
                self.pos += 1;
                self.expect('(')?;
                if self.peek() == &Token::Op(')') {
                    return Err(ParseError { kind: ParseErrorKind::LogArity, line: self.line, column });
                }
                let arg = self.expr()?;
                if self.peek() == &Token::Op(',') {
                    return Err(ParseError { kind: ParseErrorKind::LogArity, line: self.line, column });
                }
                self.expect(')')?;
                Ok(Expr::Log(Box::new(arg)))
            }
            Token::Ident(name) => {
                if self.chart.index_of(&name).is_none() {
                    return Err(self.error(ParseErrorKind::UnknownIdentifier(name)));
                }
                self.pos += 1;
                Ok(Expr::Var(name))
            }
            Token::Op('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(self.unexpected()),
        }
    }
}

pub(crate) fn parse_at(
    text: &str,
    chart: &Chart,
    allow_log: bool,
    line: usize,
    col0: usize,
) -> Result<Expr, ParseError> {
    let tokens = tokenize(text, line, col0)?;
    if tokens.len() == 1 {
        return Err(ParseError { kind: ParseErrorKind::Empty, line, column: col0 });
    }
    let mut p = Parser { tokens, pos: 0, line, chart, allow_log };
    let e = p.expr()?;
    if p.peek() != &Token::End {
        return Err(p.unexpected());
    }
    Ok(e)
}

/// Parses a single expression over the chart's variables. `log(...)` is
/// accepted syntactically; converting to a rational function rejects it.
pub fn parse_expr(text: &str, chart: &Chart) -> Result<Expr, ParseError> {
    parse_at(text, chart, true, 1, 1)
}

/// Parses and evaluates a log-free expression.
pub fn parse_rational(text: &str, chart: &Chart) -> Result<RationalFunction, ParseError> {
    let e = parse_at(text, chart, false, 1, 1)?;
    e.to_rational(chart).map_err(|err| ParseError { kind: ParseErrorKind::Invalid(err.to_string()), line: 1, column: 1 })
}

/// Parses a first integral `r + Σ c·log(f)`.
pub fn parse_integral(text: &str, chart: &Chart) -> Result<LogIntegral, ParseError> {
    let e = parse_expr(text, chart)?;
    e.to_log_integral(chart)
        .map_err(|err| ParseError { kind: ParseErrorKind::Invalid(err.to_string()), line: 1, column: 1 })
}

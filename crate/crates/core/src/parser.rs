//! Text grammar for polynomials, vector fields and variety files.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' exponent)?
//! exponent:= INT ('^' exponent)?          right associative
//! atom    := INT ('/' INT)? | IDENT | '(' sum ')'
//! ```
//!
//! Multiplication must be written explicitly. Every error carries a byte span
//! into the original input.

use std::fmt::Write as _;
use std::ops::Range;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::poly::{Polynomial, Rational};

/// Byte range `start..end` into the parsed text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }

    pub fn range(&self) -> Range<usize> {
        self.start..self.end
    }

    fn shift(self, by: usize) -> Self {
        SourceSpan { start: self.start + by, end: self.end + by }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedToken,
    UnknownVariable,
    BadExponent,
    EmptyInput,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at {}..{}", span.start, span.end)]
pub struct ParseError {
    pub span: SourceSpan,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl ParseError {
    fn new(kind: ParseErrorKind, span: SourceSpan, message: impl Into<String>) -> Self {
        ParseError { span, kind, message: message.into() }
    }

    /// Renders the error with a caret line under the offending input.
    pub fn render(&self, input: &str) -> String {
        let start = self.span.start.min(input.len());
        let width = self.span.end.saturating_sub(self.span.start).max(1);
        let pad = input[..start].chars().count();
        format!("{}\n{}\n{}{}", self.message, input, " ".repeat(pad), "^".repeat(width))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    span: SourceSpan,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = |tok: Tok| Token { tok, span: SourceSpan::new(start, start + 1) };
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'+' => out.push(single(Tok::Plus)),
            b'-' => out.push(single(Tok::Minus)),
            b'*' => out.push(single(Tok::Star)),
            b'^' => out.push(single(Tok::Caret)),
            b'/' => out.push(single(Tok::Slash)),
            b'(' => out.push(single(Tok::LParen)),
            b')' => out.push(single(Tok::RParen)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push(Token { tok: Tok::Int(n), span: SourceSpan::new(start, i) });
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(text[start..i].to_string()), span: SourceSpan::new(start, i) });
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().expect("non-empty");
                let end = start + ch.len_utf8();
                return Err(ParseError::new(
                    ParseErrorKind::UnexpectedToken,
                    SourceSpan::new(start, end),
                    format!("unexpected character '{ch}'"),
                ));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    vars: &'a [String],
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn eof_span(&self) -> SourceSpan {
        SourceSpan::new(self.len, self.len)
    }

    fn span(&self) -> SourceSpan {
        self.toks.get(self.pos).map(|t| t.span).unwrap_or_else(|| self.eof_span())
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn unexpected(&self, what: &str) -> ParseError {
        let found = match self.toks.get(self.pos) {
            None => "end of input".to_string(),
            Some(t) => format!("'{}'", tok_text(&t.tok)),
        };
        ParseError::new(ParseErrorKind::UnexpectedToken, self.span(), format!("expected {what}, found {found}"))
    }

    fn sum(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.product()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let e = self.exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let span = self.span();
        let n = match self.bump() {
            Some(Token { tok: Tok::Int(n), .. }) => n,
            Some(Token { tok: Tok::Minus, span }) => {
                return Err(ParseError::new(ParseErrorKind::BadExponent, span, "exponents must be non-negative integers"))
            }
            Some(Token { tok, span }) => {
                return Err(ParseError::new(
                    ParseErrorKind::BadExponent,
                    span,
                    format!("exponent must be an integer literal, found '{}'", tok_text(&tok)),
                ))
            }
            None => return Err(ParseError::new(ParseErrorKind::BadExponent, span, "missing exponent")),
        };
        let base = n.to_u32().ok_or_else(|| ParseError::new(ParseErrorKind::BadExponent, span, "exponent too large"))?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let rest = self.exponent()?;
            return base
                .checked_pow(rest)
                .ok_or_else(|| ParseError::new(ParseErrorKind::BadExponent, span, "exponent too large"));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let n = self.vars.len();
        match self.peek().cloned() {
            Some(Tok::Int(num)) => {
                self.bump();
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    let span = self.span();
                    match self.bump() {
                        Some(Token { tok: Tok::Int(den), .. }) if !den.is_zero() => {
                            Ok(Polynomial::constant(n, Rational::new(num, den)))
                        }
                        Some(Token { tok: Tok::Int(_), span }) => {
                            Err(ParseError::new(ParseErrorKind::UnexpectedToken, span, "zero denominator"))
                        }
                        _ => Err(ParseError::new(ParseErrorKind::UnexpectedToken, span, "expected denominator after '/'")),
                    }
                } else {
                    Ok(Polynomial::constant(n, Rational::from_integer(num)))
                }
            }
            Some(Tok::Ident(name)) => {
                let span = self.span();
                self.bump();
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(Polynomial::var(n, i)),
                    None => Err(ParseError::new(
                        ParseErrorKind::UnknownVariable,
                        span,
                        format!("unknown variable '{name}'"),
                    )),
                }
            }
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.sum()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.bump();
                        Ok(inner)
                    }
                    _ => Err(self.unexpected("')'")),
                }
            }
            _ => Err(self.unexpected("a number, variable or '('")),
        }
    }
}

fn tok_text(t: &Tok) -> String {
    match t {
        Tok::Int(n) => n.to_string(),
        Tok::Ident(s) => s.clone(),
        Tok::Plus => "+".into(),
        Tok::Minus => "-".into(),
        Tok::Star => "*".into(),
        Tok::Caret => "^".into(),
        Tok::Slash => "/".into(),
        Tok::LParen => "(".into(),
        Tok::RParen => ")".into(),
    }
}

/// Checks that variable names are well formed, distinct and non-empty.
pub fn validate_variables(vars: &[String]) -> Result<(), String> {
    if vars.is_empty() {
        return Err("variable list is empty".into());
    }
    for (i, v) in vars.iter().enumerate() {
        let mut chars = v.chars();
        let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(format!("invalid variable name '{v}'"));
        }
        if vars[..i].contains(v) {
            return Err(format!("duplicate variable '{v}'"));
        }
    }
    Ok(())
}

pub fn parse_polynomial(text: &str, vars: &[String]) -> Result<Polynomial, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ParseError::new(ParseErrorKind::EmptyInput, SourceSpan::new(0, text.len()), "empty input"));
    }
    let mut p = Parser { toks, pos: 0, vars, len: text.len() };
    let poly = p.sum()?;
    if p.pos < p.toks.len() {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(poly)
}

/// Parses `g1, g2, ..., gn`, one component per declared variable.
pub fn parse_vector_field(text: &str, vars: &[String]) -> Result<Vec<Polynomial>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        let poly = parse_polynomial(piece, vars).map_err(|mut e| {
            e.span = e.span.shift(offset);
            e
        })?;
        out.push(poly);
        offset += piece.len() + 1;
    }
    if out.len() != vars.len() {
        return Err(ParseError::new(
            ParseErrorKind::UnexpectedToken,
            SourceSpan::new(0, text.len()),
            format!("vector field has {} components, expected {}", out.len(), vars.len()),
        ));
    }
    Ok(out)
}

fn write_rational(out: &mut String, c: &Rational) {
    if c.is_integer() {
        let _ = write!(out, "{}", c.numer());
    } else {
        let _ = write!(out, "{}/{}", c.numer(), c.denom());
    }
}

/// Canonical text: descending grevlex, explicit `*` and `^`.
pub fn format_polynomial(p: &Polynomial, vars: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let a = c.abs();
        let mut factors = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(vars[i].clone()),
                _ => factors.push(format!("{}^{}", vars[i], e)),
            }
        }
        if factors.is_empty() {
            write_rational(&mut out, &a);
        } else {
            if !a.is_one() {
                write_rational(&mut out, &a);
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

pub fn format_vector_field(components: &[Polynomial], vars: &[String]) -> String {
    components.iter().map(|p| format_polynomial(p, vars)).collect::<Vec<_>>().join(", ")
}

/// Parsed variety file: `vars: x1 x2 ...` followed by generator lines.
#[derive(Debug, Clone)]
pub struct VarietyFile {
    pub vars: Vec<String>,
    pub generators: Vec<Polynomial>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FileError {
    #[error("line {line}: {source}")]
    Parse { line: usize, source: ParseError },
    #[error("line {line}: {message}")]
    Header { line: usize, message: String },
}

/// Splits a golden/variety file into `(line number, content)` pairs, dropping
/// blank lines and `#` comment lines.
pub fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_variety_file(text: &str) -> Result<VarietyFile, FileError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(FileError::Header { line: 1, message: "missing 'vars:' line".into() })?;
    let rest = header
        .strip_prefix("vars:")
        .ok_or_else(|| FileError::Header { line, message: "first line must start with 'vars:'".into() })?;
    let vars: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
    validate_variables(&vars).map_err(|message| FileError::Header { line, message })?;
    let generators = lines
        .map(|(line, l)| parse_polynomial(l, &vars).map_err(|source| FileError::Parse { line, source }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VarietyFile { vars, generators })
}

pub fn format_variety_file(vars: &[String], generators: &[Polynomial]) -> String {
    let mut s = format!("vars: {}\n", vars.join(" "));
    for g in generators {
        s.push_str(&format_polynomial(g, vars));
        s.push('\n');
    }
    s
}

/// Convenience for building name lists: `names("x y")`.
pub fn names(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_string).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, Polynomial};

    #[test]
    fn circle_polynomial() {
        let v = names("x1 x2");
        let p = parse_polynomial("x1^2 + x2^2 - 1", &v).unwrap();
        let expected = &(&Polynomial::var(2, 0).pow(2) + &Polynomial::var(2, 1).pow(2)) - &Polynomial::one(2);
        assert_eq!(p, expected);
        assert!(parse_polynomial("0", &v).unwrap().is_zero());
    }

    #[test]
    fn hyperelliptic_equation() {
        let v = names("x y");
        let p = parse_polynomial("y^2 - 2*(x^3 + 1)", &v).unwrap();
        assert_eq!(format_polynomial(&p, &v), "-2*x^3 + y^2 - 2");
    }

    #[test]
    fn precedence() {
        let v = names("x");
        let x = Polynomial::var(1, 0);
        assert_eq!(parse_polynomial("-x^2", &v).unwrap(), -x.pow(2));
        assert_eq!(parse_polynomial("x^2^3", &v).unwrap(), x.pow(8));
        assert_eq!(parse_polynomial("2*x + 3*x", &v).unwrap(), x.scale(&rat(5)));
        assert_eq!(parse_polynomial("1 - x - x", &v).unwrap(), &Polynomial::one(1) - &x.scale(&rat(2)));
        assert_eq!(parse_polynomial("3/4*x", &v).unwrap(), x.scale(&crate::poly::ratio(3, 4)));
        assert_eq!(parse_polynomial("--x", &v).unwrap(), x);
    }

    #[test]
    fn formatting() {
        let v = names("x1 x2");
        let p = parse_polynomial("2*x1*x2 - x2", &v).unwrap();
        assert_eq!(format_polynomial(&p, &v), "2*x1*x2 - x2");
        let q = parse_polynomial("x1^2 - 1", &v).unwrap();
        assert_eq!(format_polynomial(&q, &v), "x1^2 - 1");
        assert_eq!(format_polynomial(&Polynomial::zero(2), &v), "0");
        let r = parse_polynomial("-1/2*x2 + 1/3", &v).unwrap();
        assert_eq!(format_polynomial(&r, &v), "-1/2*x2 + 1/3");
    }

    #[test]
    fn errors_carry_spans() {
        let v = names("x y");
        let e = parse_polynomial("x + z", &v).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownVariable);
        assert_eq!(e.span, SourceSpan::new(4, 5));
        let e = parse_polynomial("x^-1", &v).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::BadExponent);
        let e = parse_polynomial("x^y", &v).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::BadExponent);
        let e = parse_polynomial("   ", &v).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::EmptyInput);
        let e = parse_polynomial("2 x", &v).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedToken);
        assert_eq!(e.span, SourceSpan::new(2, 3));
        let e = parse_polynomial("(x + y", &v).unwrap_err();
        assert_eq!(e.span, SourceSpan::new(6, 6));
        let e = parse_polynomial("x $ y", &v).unwrap_err();
        assert_eq!(e.span, SourceSpan::new(2, 3));
        assert!(e.render("x $ y").ends_with("  ^"));
    }

    #[test]
    fn vector_fields() {
        let v = names("x1 x2");
        let f = parse_vector_field("x2, -x1", &v).unwrap();
        assert_eq!(f, vec![Polynomial::var(2, 1), -Polynomial::var(2, 0)]);
        let z = parse_vector_field("0, 0", &v).unwrap();
        assert!(z.iter().all(Polynomial::is_zero));
        let v = names("x y");
        let tau = parse_vector_field("y, 3*x^2", &v).unwrap();
        assert_eq!(format_vector_field(&tau, &v), "y, 3*x^2");
        let e = parse_vector_field("x, y, x", &v).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedToken);
        let e = parse_vector_field("x, q", &v).unwrap_err();
        assert_eq!(e.span, SourceSpan::new(3, 4));
    }

    #[test]
    fn variety_files() {
        let text = "# circle\nvars: x1 x2\n\nx1^2 + x2^2 - 1\n";
        let f = parse_variety_file(text).unwrap();
        assert_eq!(f.vars, names("x1 x2"));
        assert_eq!(f.generators.len(), 1);
        assert_eq!(format_variety_file(&f.vars, &f.generators), "vars: x1 x2\nx1^2 + x2^2 - 1\n");
        assert!(matches!(parse_variety_file("x1 + 1\n"), Err(FileError::Header { .. })));
        assert!(matches!(parse_variety_file("vars: x\nx + t\n"), Err(FileError::Parse { line: 2, .. })));
        assert!(validate_variables(&names("x x")).is_err());
        assert!(validate_variables(&names("1x")).is_err());
    }
}

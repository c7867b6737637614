//! The function file format.
//!
//! Text form (UTF-8, LF line endings, `#` comments and blank lines ignored):
//!
//! ```text
//! 4 even          <- header: modulus, then `periodic` or `even`
//! 1 1             <- even: one `divisor value` pair per line
//! 2 2
//! 4 4
//! ```
//!
//! A periodic file lists `f(1), ..., f(r)`, one value per line. Values are
//! exact rationals (`-3`, `5/12`) or floating numbers (`0.25`, `1e-3`,
//! `2-0.5i`, `3i`). A file is read as exact when every value is rational.
//!
//! The JSON mirror is
//! `{"modulus": 4, "representation": "even", "values": [{"divisor": 1, "value": "1"}, ...]}`
//! with `"values": ["1", "5", ...]` for periodic files.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{json, Value};

use rft_core::{EvenFunction, Rational, ResidueFunction, Scalar};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    Periodic,
    Even,
}

impl Representation {
    pub fn name(self) -> &'static str {
        match self {
            Representation::Periodic => "periodic",
            Representation::Even => "even",
        }
    }
}

/// A function of one scalar kind, in either representation.
#[derive(Debug, Clone, PartialEq)]
pub enum Function<S> {
    Periodic(ResidueFunction<S>),
    Even(EvenFunction<S>),
}

impl<S: Scalar> Function<S> {
    pub fn modulus(&self) -> u64 {
        match self {
            Function::Periodic(f) => f.modulus(),
            Function::Even(f) => f.modulus(),
        }
    }

    pub fn representation(&self) -> Representation {
        match self {
            Function::Periodic(_) => Representation::Periodic,
            Function::Even(_) => Representation::Even,
        }
    }

    pub fn to_complex(&self) -> Function<Complex64> {
        match self {
            Function::Periodic(f) => Function::Periodic(f.to_complex()),
            Function::Even(f) => Function::Even(f.to_complex()),
        }
    }

    /// The residue-indexed form, expanding even functions.
    pub fn to_periodic(&self) -> ResidueFunction<S> {
        match self {
            Function::Periodic(f) => f.clone(),
            Function::Even(f) => rft_core::to_periodic(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FunctionFile {
    Rational(Function<Rational>),
    Complex(Function<Complex64>),
}

impl FunctionFile {
    pub fn modulus(&self) -> u64 {
        match self {
            FunctionFile::Rational(f) => f.modulus(),
            FunctionFile::Complex(f) => f.modulus(),
        }
    }

    pub fn representation(&self) -> Representation {
        match self {
            FunctionFile::Rational(f) => f.representation(),
            FunctionFile::Complex(f) => f.representation(),
        }
    }

    pub fn to_complex(&self) -> Function<Complex64> {
        match self {
            FunctionFile::Rational(f) => f.to_complex(),
            FunctionFile::Complex(f) => f.clone(),
        }
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let is_json = path
            .extension()
            .is_some_and(|ext| ext.eq_ignore_ascii_case("json"));
        if is_json {
            parse_json(&text)
        } else {
            parse_text(&text)
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            FunctionFile::Rational(f) => render_text(f, &f.rendered_values(format_rational)),
            FunctionFile::Complex(f) => {
                let formatter = ComplexFormatter::for_values(f.scalars());
                render_text(f, &f.rendered_values(|z| formatter.format(*z)))
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            FunctionFile::Rational(f) => render_json(f, &f.rendered_values(format_rational)),
            FunctionFile::Complex(f) => {
                let formatter = ComplexFormatter::for_values(f.scalars());
                render_json(f, &f.rendered_values(|z| formatter.format(*z)))
            }
        }
    }
}

impl<S: Scalar> Function<S> {
    fn scalars(&self) -> &[S] {
        match self {
            Function::Periodic(f) => f.values(),
            Function::Even(f) => f.values(),
        }
    }

    /// `(divisor, rendered value)` for even functions, `(n, rendered value)`
    /// for periodic ones.
    fn rendered_values(&self, render: impl Fn(&S) -> String) -> Vec<(u64, String)> {
        match self {
            Function::Periodic(f) => (1..).zip(f.values().iter().map(&render)).collect(),
            Function::Even(f) => f.iter().map(|(d, v)| (d, render(v))).collect(),
        }
    }
}

fn render_text<S: Scalar>(f: &Function<S>, values: &[(u64, String)]) -> String {
    let mut out = format!("{} {}\n", f.modulus(), f.representation().name());
    for (index, value) in values {
        match f {
            Function::Periodic(_) => writeln!(out, "{value}"),
            Function::Even(_) => writeln!(out, "{index} {value}"),
        }
        .expect("writing to a String");
    }
    out
}

fn render_json<S: Scalar>(f: &Function<S>, values: &[(u64, String)]) -> Value {
    let values: Vec<Value> = match f {
        Function::Periodic(_) => values.iter().map(|(_, v)| json!(v)).collect(),
        Function::Even(_) => values
            .iter()
            .map(|(d, v)| json!({ "divisor": d, "value": v }))
            .collect(),
    };
    json!({
        "modulus": f.modulus(),
        "representation": f.representation().name(),
        "values": values,
    })
}

/// A scalar as written in a file, before the file's kind is decided.
#[derive(Debug, Clone, PartialEq)]
pub enum Token {
    Exact(Rational),
    Float(Complex64),
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

fn parse_real(s: &str) -> Option<f64> {
    // reject inf/nan spellings that f64::from_str accepts
    if !s.bytes().any(|b| b.is_ascii_digit()) {
        return None;
    }
    f64::from_str(s).ok().filter(|x| x.is_finite())
}

fn parse_imaginary_part(s: &str) -> Option<f64> {
    match s {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        _ => parse_real(s),
    }
}

/// Parses `p`, `p/q`, a decimal, or a complex `a±bi` / `bi`.
pub fn parse_token(token: &str) -> Option<Token> {
    let unsigned = token.strip_prefix(['+', '-']).unwrap_or(token);
    let exact = match unsigned.split_once('/') {
        Some((p, q)) => is_digits(p) && is_digits(q),
        None => is_digits(unsigned),
    };
    if exact {
        let value = BigRational::from_str(token.trim_start_matches('+')).ok()?;
        return Some(Token::Exact(value));
    }
    if let Some(body) = token.strip_suffix('i') {
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
        let z = match split {
            Some(i) => Complex64::new(parse_real(&body[..i])?, parse_imaginary_part(&body[i..])?),
            None => Complex64::new(0.0, parse_imaginary_part(body)?),
        };
        return Some(Token::Float(z));
    }
    parse_real(token).map(|x| Token::Float(Complex64::new(x, 0.0)))
}

fn parse_error(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_modulus(s: &str, line: usize) -> Result<u64, CliError> {
    match s.parse::<u64>() {
        Ok(r) if r >= 1 => Ok(r),
        _ => Err(parse_error(
            line,
            format!("modulus must be a positive integer, got '{s}'"),
        )),
    }
}

fn parse_representation(s: &str, line: usize) -> Result<Representation, CliError> {
    match s {
        "periodic" => Ok(Representation::Periodic),
        "even" => Ok(Representation::Even),
        other => Err(parse_error(
            line,
            format!("representation must be 'periodic' or 'even', got '{other}'"),
        )),
    }
}

/// Values of a file with their source line, for error reporting.
struct RawFile {
    modulus: u64,
    representation: Representation,
    // (line, divisor or 0 for periodic, token)
    entries: Vec<(usize, u64, Token)>,
}

impl RawFile {
    fn build(self) -> Result<FunctionFile, CliError> {
        let exact = self
            .entries
            .iter()
            .all(|(_, _, t)| matches!(t, Token::Exact(_)));
        if exact {
            let entries = self.entries.iter().map(|(line, d, t)| match t {
                Token::Exact(v) => (*line, *d, v.clone()),
                Token::Float(_) => unreachable!(),
            });
            Ok(FunctionFile::Rational(assemble(
                self.modulus,
                self.representation,
                entries,
            )?))
        } else {
            let entries = self.entries.iter().map(|(line, d, t)| {
                let z = match t {
                    Token::Exact(v) => v.to_complex(),
                    Token::Float(z) => *z,
                };
                (*line, *d, z)
            });
            Ok(FunctionFile::Complex(assemble(
                self.modulus,
                self.representation,
                entries,
            )?))
        }
    }
}

fn assemble<S: Scalar>(
    r: u64,
    representation: Representation,
    entries: impl Iterator<Item = (usize, u64, S)>,
) -> Result<Function<S>, CliError> {
    match representation {
        Representation::Periodic => {
            let values: Vec<S> = entries.map(|(_, _, v)| v).collect();
            if values.len() as u64 != r {
                return Err(parse_error(
                    0,
                    format!("periodic file with modulus {r} has {} values", values.len()),
                ));
            }
            Ok(Function::Periodic(ResidueFunction::new(values)?))
        }
        Representation::Even => {
            let divisors = rft_core::divisors(r)?;
            let mut pairs = Vec::with_capacity(divisors.len());
            let mut seen = vec![false; divisors.len()];
            for (line, d, v) in entries {
                let idx = divisors.index_of(d).ok_or_else(|| {
                    parse_error(line, format!("{d} does not divide the modulus {r}"))
                })?;
                if std::mem::replace(&mut seen[idx], true) {
                    return Err(parse_error(line, format!("divisor {d} listed twice")));
                }
                pairs.push((d, v));
            }
            if let Some(missing) = seen.iter().position(|s| !s) {
                return Err(parse_error(
                    0,
                    format!(
                        "divisor {} of {r} has no value",
                        divisors.as_slice()[missing]
                    ),
                ));
            }
            Ok(Function::Even(EvenFunction::from_pairs(r, pairs)?))
        }
    }
}

pub fn parse_text(text: &str) -> Result<FunctionFile, CliError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (header_line, header) = lines.next().ok_or_else(|| {
        parse_error(
            1,
            "empty file: expected a '<modulus> <periodic|even>' header",
        )
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [modulus, representation] = fields[..] else {
        return Err(parse_error(
            header_line,
            "header must be '<modulus> <periodic|even>'",
        ));
    };
    let modulus = parse_modulus(modulus, header_line)?;
    let representation = parse_representation(representation, header_line)?;

    let mut entries = Vec::new();
    for (line, content) in lines {
        let fields: Vec<&str> = content.split_whitespace().collect();
        let (divisor, value) = match (representation, &fields[..]) {
            (Representation::Periodic, [value]) => (0, *value),
            (Representation::Even, [d, value]) => {
                let d = d
                    .parse::<u64>()
                    .map_err(|_| parse_error(line, format!("invalid divisor '{d}'")))?;
                (d, *value)
            }
            (Representation::Periodic, _) => {
                return Err(parse_error(line, "periodic files have one value per line"))
            }
            (Representation::Even, _) => {
                return Err(parse_error(
                    line,
                    "even files have one 'divisor value' pair per line",
                ))
            }
        };
        let token = parse_token(value)
            .ok_or_else(|| parse_error(line, format!("invalid value '{value}'")))?;
        entries.push((line, divisor, token));
    }
    RawFile {
        modulus,
        representation,
        entries,
    }
    .build()
}

fn json_token(value: &Value, what: &str) -> Result<Token, CliError> {
    let text = match value {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => {
            return Err(parse_error(
                0,
                format!("{what}: expected a string or number"),
            ))
        }
    };
    parse_token(&text).ok_or_else(|| parse_error(0, format!("{what}: invalid value '{text}'")))
}

pub fn parse_json(text: &str) -> Result<FunctionFile, CliError> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.to_string()))?;
    let modulus = doc
        .get("modulus")
        .and_then(Value::as_u64)
        .filter(|&r| r >= 1)
        .ok_or_else(|| parse_error(0, "field 'modulus' must be a positive integer"))?;
    let representation = doc
        .get("representation")
        .and_then(Value::as_str)
        .ok_or_else(|| parse_error(0, "field 'representation' must be a string"))
        .and_then(|s| parse_representation(s, 0))?;
    let values = doc
        .get("values")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_error(0, "field 'values' must be an array"))?;
    let mut entries = Vec::with_capacity(values.len());
    for (i, item) in values.iter().enumerate() {
        let what = format!("values[{i}]");
        match representation {
            Representation::Periodic => entries.push((0, 0, json_token(item, &what)?)),
            Representation::Even => {
                let d = item.get("divisor").and_then(Value::as_u64).ok_or_else(|| {
                    parse_error(0, format!("{what}.divisor must be a positive integer"))
                })?;
                let v = item
                    .get("value")
                    .ok_or_else(|| parse_error(0, format!("{what}.value is missing")))?;
                entries.push((0, d, json_token(v, &format!("{what}.value"))?));
            }
        }
    }
    RawFile {
        modulus,
        representation,
        entries,
    }
    .build()
}

/// Prints complex values with 12 significant digits relative to the
/// largest component of the vector being printed; smaller components
/// round to 0.
pub struct ComplexFormatter {
    floor: f64,
}

impl ComplexFormatter {
    pub fn for_values(values: &[Complex64]) -> Self {
        let scale = values
            .iter()
            .map(|z| z.re.abs().max(z.im.abs()))
            .fold(0.0, f64::max);
        ComplexFormatter {
            floor: scale * 1e-12,
        }
    }

    pub fn format(&self, z: Complex64) -> String {
        let snap = |x: f64| if x.abs() <= self.floor { 0.0 } else { x };
        let (re, im) = (snap(z.re), snap(z.im));
        if im == 0.0 {
            format_real(re)
        } else if re == 0.0 {
            format!("{}i", format_real(im))
        } else if im < 0.0 {
            format!("{}-{}i", format_real(re), format_real(-im))
        } else {
            format!("{}+{}i", format_real(re), format_real(im))
        }
    }
}

/// A double with 12 significant digits, trailing zeros removed: fixed
/// notation for exponents in `-5..12`, scientific otherwise.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exponent) = sci.split_once('e').expect("exponent present");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    let trim = |s: &str| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if (-5..12).contains(&exponent) {
        let decimals = (11 - exponent).max(0) as usize;
        trim(&format!("{x:.decimals$}"))
    } else {
        format!("{}e{exponent}", trim(mantissa))
    }
}

/// Canonical text of a rational: reduced, positive denominator, no `/1`.
pub fn format_rational(v: &Rational) -> String {
    debug_assert!(v.denom().is_positive());
    v.to_string()
}

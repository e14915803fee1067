//! Report rows and their CSV serialization.
//!
//! The CSV schema is fixed:
//! `experiment,case_id,observed,expected,abs_error,pass`. Reals are written
//! with 17 significant digits (round-trip safe for f64), complex values as
//! `a+bi` with the same precision per component. Case ids ending in `-rel`
//! carry a relative error in the `abs_error` column; the pass rule is always
//! `abs_error <= tolerance`.

use num_complex::Complex64 as C64;
use std::fmt::Write as _;
use std::path::Path;

/// Observed or expected value of one verification case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Real(f64),
    Complex(C64),
    Bool(bool),
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Real(x) => format_real(*x),
            Value::Complex(z) => format_complex(*z),
            Value::Bool(b) => b.to_string(),
        }
    }

    /// Absolute distance between two values of the same kind; booleans
    /// differ by 0 or 1.
    pub fn distance(&self, other: &Value) -> f64 {
        match (self, other) {
            (Value::Real(a), Value::Real(b)) => (a - b).abs(),
            (Value::Complex(a), Value::Complex(b)) => (a - b).norm(),
            (Value::Bool(a), Value::Bool(b)) => {
                if a == b {
                    0.0
                } else {
                    1.0
                }
            }
            _ => f64::INFINITY,
        }
    }
}

pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn format_complex(z: C64) -> String {
    format!("{:.16e}{:+.16e}i", z.re, z.im)
}

/// Inverse of [`format_complex`]: splits `a+bi` at the sign that separates
/// the two components (the one not directly preceded by an exponent marker).
pub fn parse_complex(s: &str) -> Option<C64> {
    let body = s.strip_suffix('i')?;
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).find(|&i| {
        (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'e' && bytes[i - 1] != b'E'
    })?;
    let re = body[..split].parse::<f64>().ok()?;
    let im = body[split..].parse::<f64>().ok()?;
    Some(C64::new(re, im))
}

/// One verified case.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub experiment: String,
    pub case_id: String,
    pub observed: Value,
    pub expected: Value,
    pub abs_error: f64,
    pub pass: bool,
}

impl ReportRow {
    /// Builds a row whose error is the absolute distance between observed
    /// and expected.
    pub fn check(
        experiment: &str,
        case_id: impl Into<String>,
        observed: Value,
        expected: Value,
        tolerance: f64,
    ) -> Self {
        let error = observed.distance(&expected);
        Self {
            experiment: experiment.to_string(),
            case_id: case_id.into(),
            observed,
            expected,
            abs_error: error,
            pass: error <= tolerance,
        }
    }

    /// Builds a row judged on relative error; the case id gets a `-rel`
    /// suffix to mark the convention in the output.
    pub fn check_relative(
        experiment: &str,
        case_id: &str,
        observed: f64,
        expected: f64,
        tolerance: f64,
    ) -> Self {
        let error = (observed - expected).abs() / expected.abs().max(f64::MIN_POSITIVE);
        Self {
            experiment: experiment.to_string(),
            case_id: format!("{case_id}-rel"),
            observed: Value::Real(observed),
            expected: Value::Real(expected),
            abs_error: error,
            pass: error <= tolerance,
        }
    }
}

pub fn to_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from("experiment,case_id,observed,expected,abs_error,pass\n");
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            row.experiment,
            row.case_id,
            row.observed.render(),
            row.expected.render(),
            format_real(row.abs_error),
            row.pass
        )
        .expect("writing to a string cannot fail");
    }
    out
}

pub fn write_csv(path: &Path, rows: &[ReportRow]) -> std::io::Result<()> {
    std::fs::write(path, to_csv(rows))
}

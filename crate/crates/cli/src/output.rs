//! Serialization helpers shared by the subcommands.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

/// Version of every JSON and CSV layout emitted by the binary.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// What a subcommand produced.
pub struct Output {
    pub json: Value,
    pub text: String,
    /// Rows for `--csv`; commands without tabular output fall back to JSON.
    pub csv: Option<String>,
    /// A check performed by the command failed.
    pub failed: bool,
}

impl Output {
    pub fn new(mut json: Value, text: String) -> Self {
        if let Value::Object(map) = &mut json {
            map.insert("schema_version".into(), json!(SCHEMA_VERSION));
        }
        Output { json, text, csv: None, failed: false }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn failed(mut self, failed: bool) -> Self {
        self.failed = failed;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Csv if self.csv.is_some() => self.csv.clone().unwrap(),
            _ => format!("{}\n", serde_json::to_string(&self.json).expect("serializable")),
        }
    }
}

/// `{num, den}`, with integers kept as JSON numbers when they fit in `i64`.
pub fn rational(q: &BigRational) -> Value {
    let part = |n: &num_bigint::BigInt| match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    };
    json!({ "num": part(q.numer()), "den": part(q.denom()) })
}

/// Floats serialize in shortest round-trip form; non-finite values become null.
pub fn float(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

pub fn complex(z: Complex64) -> Value {
    json!({ "re": float(z.re), "im": float(z.im) })
}

pub fn opt_float(x: Option<f64>) -> Value {
    x.map_or(Value::Null, float)
}

/// Rational in `a/b` form, or the integer when `b = 1`.
pub fn rational_text(q: &BigRational) -> String {
    if q.denom() == &num_bigint::BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// 17 significant digits for text output.
pub fn float_text(x: f64) -> String {
    format!("{}", FloatText(x))
}

struct FloatText(f64);

impl std::fmt::Display for FloatText {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let x = self.0;
        if x == 0.0 || !x.is_finite() {
            return write!(f, "{x}");
        }
        let exp = x.abs().log10().floor() as i32;
        if (-5..17).contains(&exp) {
            let decimals = (16 - exp).max(0) as usize;
            let s = format!("{x:.decimals$}");
            let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
            write!(f, "{s}")
        } else {
            write!(f, "{x:.16e}")
        }
    }
}

pub fn error_json(kind: &str, message: &str) -> Value {
    json!({ "schema_version": SCHEMA_VERSION, "error": { "kind": kind, "message": message } })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_text_has_seventeen_digits() {
        assert_eq!(float_text(4.0 / 3.0), "1.3333333333333333");
        assert_eq!(float_text(2.0), "2");
        assert_eq!(float_text(1e20), "1.0000000000000000e20");
    }

    #[test]
    fn rationals() {
        let q = BigRational::new(16.into(), 5.into());
        assert_eq!(rational(&q), json!({"num": 16, "den": 5}));
        assert_eq!(rational_text(&q), "16/5");
    }
}

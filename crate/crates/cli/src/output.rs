//! Deterministic artifact writing.
//!
//! Floats are printed in scientific notation with
//! `floor(prec·log10 2 / 2)` significant digits (at most 17 for values
//! held in double precision), rounded to nearest from the exact binary
//! value. Rationals are printed as `p/q`.

use std::fs;
use std::path::{Path, PathBuf};

use padelab_core::{Float, Rational};
use rug::float::Round;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// Enough digits to round-trip any `f64`.
const F64_DIGITS: usize = 17;

#[derive(Debug, Clone, Copy)]
pub struct NumberFormat {
    pub digits: usize,
}

impl NumberFormat {
    pub fn new(prec: u32) -> Self {
        let digits = ((prec as f64 * std::f64::consts::LOG10_2) / 2.0).floor().max(1.0) as usize;
        NumberFormat { digits }
    }

    pub fn float(&self, x: &Float) -> String {
        self.with_digits(x, self.digits)
    }

    pub fn f64(&self, x: f64) -> String {
        self.with_digits(&Float::with_val(53, x), self.digits.min(F64_DIGITS))
    }

    fn with_digits(&self, x: &Float, digits: usize) -> String {
        if x.is_nan() {
            return "nan".into();
        }
        if x.is_infinite() {
            return if x.is_sign_negative() { "-inf".into() } else { "inf".into() };
        }
        if x.is_zero() {
            return if digits > 1 { format!("0.{}e0", "0".repeat(digits - 1)) } else { "0e0".into() };
        }
        let s = x.to_string_radix_round(10, Some(digits), Round::Nearest);
        normalize_exponent(&s)
    }

    pub fn opt(&self, x: Option<f64>) -> String {
        x.map_or_else(String::new, |v| self.f64(v))
    }

    pub fn describe(&self) -> String {
        format!(
            "{} significant digits ({} for double-precision values), round-to-nearest from the binary value",
            self.digits,
            self.digits.min(F64_DIGITS)
        )
    }

    /// Replace every non-integer JSON number with its formatted string.
    pub fn json(&self, v: Value) -> Value {
        match v {
            Value::Number(n) if n.is_f64() => Value::String(self.f64(n.as_f64().expect("f64"))),
            Value::Array(a) => Value::Array(a.into_iter().map(|x| self.json(x)).collect()),
            Value::Object(o) => Value::Object(o.into_iter().map(|(k, x)| (k, self.json(x))).collect()),
            other => other,
        }
    }
}

/// rug writes `1.50e-3` and `1.50` (no exponent) depending on magnitude;
/// always emit a mantissa in `[1, 10)` with an explicit exponent.
fn normalize_exponent(s: &str) -> String {
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (mant, exp) = match body.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().expect("exponent")),
        None => (body, 0),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    let digits: String = format!("{int}{frac}");
    let lead = digits.find(|c: char| c != '0').unwrap_or(0);
    let sig = &digits[lead..];
    let exp = exp + int.len() as i64 - 1 - lead as i64;
    let out = if sig.len() > 1 { format!("{}.{}e{exp}", &sig[..1], &sig[1..]) } else { format!("{sig}e{exp}") };
    if neg {
        format!("-{out}")
    } else {
        out
    }
}

pub fn rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[derive(Debug, Clone, Serialize)]
pub struct ArtifactRecord {
    pub file: String,
    pub sha256: String,
    pub bytes: usize,
}

/// Ordered, single-threaded writer for one run's output directory.
pub struct Artifacts {
    dir: PathBuf,
    pub records: Vec<ArtifactRecord>,
}

impl Artifacts {
    pub fn create(dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir)?;
        Ok(Artifacts { dir: dir.to_path_buf(), records: Vec::new() })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn write(&mut self, name: &str, content: &str) -> Result<(), CliError> {
        fs::write(self.dir.join(name), content)?;
        log::info!("wrote {}", self.dir.join(name).display());
        self.records.push(ArtifactRecord {
            file: name.to_string(),
            sha256: hex::encode(Sha256::digest(content.as_bytes())),
            bytes: content.len(),
        });
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, fmt: &NumberFormat, value: &T) -> Result<(), CliError> {
        let mut v = fmt.json(serde_json::to_value(value)?);
        if let Value::Object(o) = &mut v {
            o.insert("schema_version".into(), SCHEMA_VERSION.into());
        }
        let mut s = serde_json::to_string_pretty(&v)?;
        s.push('\n');
        self.write(name, &s)
    }
}

/// CSV text with `#` metadata lines, a header row and data rows.
pub struct Csv {
    text: String,
    width: usize,
}

impl Csv {
    pub fn new(meta: &[String], header: &[&str]) -> Self {
        let mut text = String::new();
        for m in meta {
            text.push_str("# ");
            text.push_str(m);
            text.push('\n');
        }
        text.push_str(&header.join(","));
        text.push('\n');
        Csv { text, width: header.len() }
    }

    pub fn row(&mut self, cells: &[String]) {
        assert_eq!(cells.len(), self.width, "row width");
        let quoted: Vec<String> = cells
            .iter()
            .map(|c| if c.contains([',', '"', '\n']) { format!("\"{}\"", c.replace('"', "\"\"")) } else { c.clone() })
            .collect();
        self.text.push_str(&quoted.join(","));
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}

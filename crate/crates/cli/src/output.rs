//! Fixed 12-significant-digit rendering and output sinks.

use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use genhuff::{BoundKind, BoundReport};
use serde::{Serialize, Serializer};

use crate::error::Result;

pub const SIG_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

/// `x` rounded to 12 significant digits, ties to even.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().expect("formatted float parses")
}

/// Shortest decimal text of `round12(x)`.
pub fn sig12(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round12(x);
    if r == 0.0 {
        return "0".into();
    }
    let exp = r.abs().log10().floor() as i32;
    if (-5..SIG_DIGITS as i32).contains(&exp) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

/// Serializes as a JSON number rounded to 12 significant digits; non-finite as `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(round12(self.0))
        } else {
            s.serialize_none()
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsDoc {
    pub lower: Num,
    pub upper: Num,
    pub lower_kind: BoundKind,
    pub upper_kind: BoundKind,
    pub exact: Option<Num>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub unit_fallback: bool,
}

impl From<&BoundReport> for BoundsDoc {
    fn from(b: &BoundReport) -> Self {
        Self {
            lower: Num(b.lower),
            upper: Num(b.upper),
            lower_kind: b.lower_kind,
            upper_kind: b.upper_kind,
            exact: b.exact.map(Num),
            unit_fallback: b.unit_fallback,
        }
    }
}

pub fn kind_name(kind: BoundKind) -> &'static str {
    match kind {
        BoundKind::Achievable => "achievable",
        BoundKind::Approachable => "approachable",
        BoundKind::Exact => "exact",
    }
}

/// `[a, b)` style: `[`/`]` closed, `(`/`)` open, `= v` when exact.
pub fn interval(b: &BoundReport) -> String {
    if let Some(v) = b.exact {
        return format!("= {}", sig12(v));
    }
    let open = if b.lower_kind.is_open() { '(' } else { '[' };
    let close = if b.upper_kind.is_open() { ')' } else { ']' };
    format!("{open}{}, {}{close}", sig12(b.lower), sig12(b.upper))
}

pub fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

pub fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

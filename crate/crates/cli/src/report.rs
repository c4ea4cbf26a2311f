//! JSON reports. Floats are written with 17 significant digits so that a
//! report round-trips every `f64` exactly.

use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;

#[derive(Serialize, Debug, Clone, Default)]
pub struct WitnessOut {
    pub x: Value,
    pub xstar: Value,
    pub lambda_or_alpha: Value,
    pub attained: Value,
}

#[derive(Serialize, Debug, Clone, Default)]
pub struct ResultEntry {
    pub id: String,
    pub verdict: Option<bool>,
    pub value: Option<f64>,
    pub gap: Option<f64>,
    pub witness: Option<WitnessOut>,
    pub tol: f64,
    pub margin: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub required: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<WitnessOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Sweep>,
}

#[derive(Serialize, Debug, Clone)]
pub struct Sweep {
    /// `lambda` or `alpha`
    pub parameter: &'static str,
    pub points: Value,
    pub values: Vec<f64>,
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub results: Vec<ResultEntry>,
    pub seed: u64,
    pub version: &'static str,
    pub timestamp: u64,
}

/// Pretty printer that writes floats in `{:.16e}` form.
struct Precise(PrettyFormatter<'static>);

macro_rules! delegate {
    ($($name:ident($($arg:ident: $ty:ty),*)),* $(,)?) => {
        $(
            fn $name<W: ?Sized + Write>(&mut self, w: &mut W $(, $arg: $ty)*) -> io::Result<()> {
                self.0.$name(w $(, $arg)*)
            }
        )*
    };
}

impl Formatter for Precise {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        write!(w, "{v:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        write!(w, "{:.16e}", v as f64)
    }

    delegate!(
        begin_array(),
        end_array(),
        begin_array_value(first: bool),
        end_array_value(),
        begin_object(),
        end_object(),
        begin_object_key(first: bool),
        begin_object_value(),
        end_object_value(),
    );
}

pub fn to_string<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Precise(PrettyFormatter::with_indent(b"  ")));
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf)?)
}

pub fn write(path: &Path, report: &Report) -> Result<()> {
    std::fs::write(path, to_string(report)?).with_context(|| format!("writing report {}", path.display()))
}

pub fn timestamp() -> u64 {
    std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

/// Serializes to a JSON value; complex scalars come out as `[re, im]`.
pub fn json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_17_significant_digits() {
        let s = to_string(&serde_json::json!({"v": 0.1, "n": 3, "c": [1.5, -2.0]})).unwrap();
        assert!(s.contains("1.0000000000000001e-1"), "{s}");
        assert!(s.contains("\"n\": 3"));
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["v"].as_f64(), Some(0.1));
    }

    #[test]
    fn non_finite_is_null() {
        let s = to_string(&f64::NAN).unwrap();
        assert_eq!(s.trim(), "null");
    }
}

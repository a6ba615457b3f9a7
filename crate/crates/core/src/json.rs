//! Canonical JSON: object keys sorted, no insignificant whitespace, floats
//! with 17 significant digits, one trailing LF.
//!
//! Seventeen digits are enough to round-trip any `f64`, so canonical output
//! re-parses to the same value and re-serializes to the same bytes.

use std::fmt::Write as _;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

/// Canonical text of `value`, including the trailing newline.
pub fn to_canonical_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    let mut out = String::new();
    write_value(&v, &mut out);
    out.push('\n');
    Ok(out)
}

fn write_value(v: &Value, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                write!(out, "{i}").unwrap();
            } else if let Some(u) = n.as_u64() {
                write!(out, "{u}").unwrap();
            } else {
                write_float(n.as_f64().unwrap_or(f64::NAN), out);
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("string encodes")),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(k).expect("string encodes"));
                out.push(':');
                write_value(&map[k], out);
            }
            out.push('}');
        }
    }
}

fn write_float(x: f64, out: &mut String) {
    if x.is_finite() {
        // Normalize negative zero so equal values print identically.
        let x = if x == 0.0 { 0.0 } else { x };
        write!(out, "{x:.16e}").unwrap();
    } else {
        out.push_str("null");
    }
}

/// Plain pretty-printed JSON for human consumption.
pub fn to_pretty_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn from_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_file<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

pub fn write_file<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, to_canonical_string(value)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::Channel;

    #[test]
    fn keys_sorted_and_floats_fixed_width() {
        let v = serde_json::json!({"b": 0.1, "a": [1, -2, 0.5], "c": {"z": null, "y": true}});
        let s = to_canonical_string(&v).unwrap();
        assert_eq!(
            s,
            "{\"a\":[1,-2,5.0000000000000000e-1],\"b\":1.0000000000000001e-1,\"c\":{\"y\":true,\"z\":null}}\n"
        );
    }

    #[test]
    fn canonical_round_trip_is_byte_stable() {
        let w = Channel::validate(vec![vec![1.0 / 3.0, 2.0 / 3.0], vec![0.1, 0.9]]).unwrap();
        let s = to_canonical_string(&w).unwrap();
        let back: Channel = from_str(&s).unwrap();
        assert_eq!(back, w);
        assert_eq!(to_canonical_string(&back).unwrap(), s);
    }

    #[test]
    fn negative_zero_prints_as_zero() {
        let s = to_canonical_string(&vec![-0.0f64]).unwrap();
        assert_eq!(s, "[0.0000000000000000e0]\n");
    }
}

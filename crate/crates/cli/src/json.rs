//! JSON output with 17 significant digits and parsing of command-line inputs.

use std::fmt::Write as _;

use eja_core::{Algebra, AlgebraDescriptor, Element, ElementDescriptor, FactorSpec, MapDescriptor, PositiveMap};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

/// Bad input on the command line; maps to exit code 2.
#[derive(Debug, Clone, PartialEq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// `x` as a JSON number with 17 significant digits, or `null` if not finite.
pub fn format_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

/// Pretty-printed JSON in which every float carries 17 significant digits.
/// Object keys come out sorted, so equal values print identically.
pub fn to_string<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report types serialize");
    let mut out = String::new();
    write_value(&mut out, &v, 0);
    out.push('\n');
    out
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                out.push_str(&format_f64(n.as_f64().expect("f64 number")));
            } else {
                let _ = write!(out, "{n}");
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("strings serialize")),
        Value::Array(items) => {
            // numeric rows stay on one line
            if items.iter().all(|x| x.is_number() || x.is_null()) {
                out.push('[');
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_value(out, x, indent);
                }
                out.push(']');
                return;
            }
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                pad(out, indent + 1);
                write_value(out, x, indent + 1);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            pad(out, indent);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                pad(out, indent + 1);
                out.push_str(&serde_json::to_string(k).expect("keys serialize"));
                out.push_str(": ");
                write_value(out, x, indent + 1);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            pad(out, indent);
            out.push('}');
        }
    }
}

fn pad(out: &mut String, indent: usize) {
    for _ in 0..indent {
        out.push_str("  ");
    }
}

/// Inline JSON, or the contents of a file when the argument starts with `@`.
pub fn read_arg(arg: &str) -> Result<String, UsageError> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn parse_json<T: DeserializeOwned>(what: &str, arg: &str) -> Result<T, UsageError> {
    let text = read_arg(arg)?;
    serde_json::from_str(&text).map_err(|e| UsageError(format!("malformed {what} JSON: {e}")))
}

/// An algebra from a JSON descriptor or a shorthand such as
/// `RealSym(2)+Spin(3)` or `Albert`.
pub fn parse_algebra(arg: &str) -> Result<Algebra, UsageError> {
    let text = read_arg(arg)?;
    let desc = if text.trim_start().starts_with('{') {
        parse_json::<AlgebraDescriptor>("algebra", &text)?
    } else {
        AlgebraDescriptor::Factors { factors: parse_shorthand(&text)? }
    };
    Algebra::from_descriptor(&desc).map_err(|e| UsageError(format!("invalid algebra: {e}")))
}

fn parse_shorthand(text: &str) -> Result<Vec<FactorSpec>, UsageError> {
    let bad = || UsageError(format!("unknown algebra {text:?}"));
    text.split(['+', '⊕'])
        .map(|part| {
            let part = part.trim();
            let (name, arg) = match part.split_once('(') {
                Some((name, rest)) => {
                    let n = rest.strip_suffix(')').ok_or_else(bad)?.trim().parse::<usize>().map_err(|_| bad())?;
                    (name.trim(), Some(n))
                }
                None => (part, None),
            };
            match (name.to_ascii_lowercase().replace('_', "").as_str(), arg) {
                ("realsym", Some(n)) => Ok(FactorSpec::RealSym { n }),
                ("complexherm", Some(n)) => Ok(FactorSpec::ComplexHerm { n }),
                ("quatherm", Some(n)) => Ok(FactorSpec::QuatHerm { n }),
                ("spin", Some(d)) => Ok(FactorSpec::Spin { d }),
                ("albert", None) => Ok(FactorSpec::Albert),
                _ => Err(bad()),
            }
        })
        .collect()
}

/// An element `{"algebra": ..., "coords": [...]}`. With `fallback` set, a
/// bare coordinate array is read in that algebra.
pub fn parse_element(arg: &str, fallback: Option<&Algebra>) -> Result<Element, UsageError> {
    let text = read_arg(arg)?;
    if let (Some(alg), true) = (fallback, text.trim_start().starts_with('[')) {
        let coords: Vec<f64> = parse_json("coordinate", &text)?;
        return alg.element(coords).map_err(|e| UsageError(format!("invalid element: {e}")));
    }
    let desc: ElementDescriptor = parse_json("element", &text)?;
    Element::from_descriptor(&desc).map_err(|e| UsageError(format!("invalid element: {e}")))
}

/// A positive map from its JSON descriptor. Positivity is re-checked by
/// sampling; a matrix that fails is a domain error, not a usage error.
pub fn parse_map(arg: &str) -> Result<Result<PositiveMap, eja_core::EjaError>, UsageError> {
    let desc: MapDescriptor = parse_json("map", arg)?;
    Ok(PositiveMap::from_descriptor(&desc))
}

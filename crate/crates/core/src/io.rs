//! Reading Schmidt vectors from JSON or inline lists.
//!
//! Accepted forms: `{"schmidt": [...]}`, a bare JSON array, or a comma
//! separated list such as `1/2,1/3,1/6`. Entries are numbers or strings;
//! any `"p/q"` entry puts the whole vector in exact mode.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::{parse_float, parse_rational, Rational};
use crate::schmidt::SchmidtVector;

#[derive(Debug, Clone, PartialEq)]
pub enum AnySchmidt {
    Exact(SchmidtVector<Rational>),
    Float(SchmidtVector<f64>),
}

impl AnySchmidt {
    pub fn is_exact(&self) -> bool {
        matches!(self, AnySchmidt::Exact(_))
    }

    pub fn to_f64(&self) -> SchmidtVector<f64> {
        match self {
            AnySchmidt::Exact(v) => v.to_f64(),
            AnySchmidt::Float(v) => v.clone(),
        }
    }
}

fn entries(text: &str) -> Result<Vec<String>> {
    let trimmed = text.trim();
    if !(trimmed.starts_with('{') || trimmed.starts_with('[')) {
        let items: Vec<String> = trimmed.split(',').map(|s| s.trim().to_string()).collect();
        if items.iter().any(String::is_empty) {
            return Err(Error::Parse(format!("empty entry in list {trimmed:?}")));
        }
        return Ok(items);
    }
    let json: Value = serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?;
    let array = match &json {
        Value::Array(a) => a,
        Value::Object(o) => match o.get("schmidt") {
            Some(Value::Array(a)) => a,
            _ => return Err(Error::Parse("expected a \"schmidt\" array".into())),
        },
        _ => return Err(Error::Parse("expected an object or array".into())),
    };
    array
        .iter()
        .map(|v| match v {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            other => Err(Error::Parse(format!("unsupported entry {other}"))),
        })
        .collect()
}

/// Parses a vector, choosing exact mode when any entry is a `p/q` string.
pub fn parse_schmidt(text: &str, normalize: bool) -> Result<AnySchmidt> {
    let items = entries(text)?;
    if items.iter().any(|s| s.contains('/')) {
        let raw = items.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?;
        Ok(AnySchmidt::Exact(SchmidtVector::new(raw, normalize)?))
    } else {
        let raw = items.iter().map(|s| parse_float(s)).collect::<Result<_>>()?;
        Ok(AnySchmidt::Float(SchmidtVector::new(raw, normalize)?))
    }
}

/// Parses a vector in exact mode, reading decimals as their exact decimal value.
pub fn parse_schmidt_exact(text: &str, normalize: bool) -> Result<SchmidtVector<Rational>> {
    let raw = entries(text)?.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?;
    SchmidtVector::new(raw, normalize)
}

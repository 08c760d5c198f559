//! Numeric scalars: exact arbitrary-precision rationals or `f64`.
//!
//! Every algorithm in this crate is written once against [`Scalar`] and runs
//! in either mode. Exact mode is the reference; float mode compares with an
//! absolute tolerance.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Default absolute tolerance for float-mode comparisons.
pub const FLOAT_TOLERANCE: f64 = 1e-12;

pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + PartialOrd + Num + Signed + Send + Sync + 'static
{
    /// True for exact rational arithmetic.
    const EXACT: bool;

    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_bigint(n: &BigInt) -> Self;
    fn from_usize(n: usize) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }
    /// Tolerance used for comparisons: zero in exact mode.
    fn default_tolerance() -> Self;
    fn to_f64(&self) -> f64;
    /// The exact value, when this scalar is exact.
    fn to_rational(&self) -> Option<Rational>;
    /// Natural logarithm of a positive value, evaluated in floating point.
    fn ln(&self) -> f64;
    fn from_rational(r: &Rational) -> Self;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_bigint(n: &BigInt) -> Self {
        Rational::from_integer(n.clone())
    }

    fn default_tolerance() -> Self {
        Rational::zero()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn ln(&self) -> f64 {
        let direct = Scalar::to_f64(self);
        if direct.is_normal() {
            return direct.ln();
        }
        ln_bigint(self.numer()) - ln_bigint(self.denom())
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::INFINITY)
    }

    fn from_usize(n: usize) -> Self {
        n as f64
    }

    fn default_tolerance() -> Self {
        FLOAT_TOLERANCE
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Option<Rational> {
        None
    }

    fn ln(&self) -> f64 {
        f64::ln(*self)
    }

    fn from_rational(r: &Rational) -> Self {
        Scalar::to_f64(r)
    }
}

fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.to_f64().map_or(f64::NAN, f64::ln);
    }
    let shift = bits - 960;
    let head: BigInt = n >> shift;
    head.to_f64().map_or(f64::NAN, f64::ln) + shift as f64 * std::f64::consts::LN_2
}

/// Compares `a` and `b`, treating differences within `tol` as equal.
pub fn cmp_tol<S: Scalar>(a: &S, b: &S, tol: &S) -> Ordering {
    let diff = a.clone() - b.clone();
    if diff > *tol {
        Ordering::Greater
    } else if diff < -tol.clone() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn pow<S: Scalar>(base: &S, exp: usize) -> S {
    let mut acc = S::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b.clone();
        }
        e >>= 1;
        if e > 0 {
            b = b.clone() * b;
        }
    }
    acc
}

/// Parses `"p/q"`, an integer, or a decimal such as `"0.125"` or `"1e-3"` exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse(text.to_string()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(text.into()))?;
        let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(text.into()))?;
        if d.is_zero() {
            return Err(Error::Parse(text.into()));
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = s[pos + 1..].parse().map_err(|_| Error::Parse(text.into()))?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit())
    {
        return Err(Error::Parse(text.into()));
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(
        BigInt::from_str_radix(if all.is_empty() { "0" } else { &all }, 10)
            .map_err(|_| Error::Parse(text.into()))?,
    );
    let scale = exponent - frac_part.len() as i64;
    let ten = Rational::from_integer(BigInt::from(10));
    let factor = pow(&ten, scale.unsigned_abs() as usize);
    if scale >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    Ok(if negative { -value } else { value })
}

/// Parses a decimal string as a float (float mode input).
pub fn parse_float(text: &str) -> Result<f64> {
    text.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(text.to_string()))
}

/// JSON rendering of a scalar: always a decimal, plus `"p/q"` when exact.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalarRepr {
    pub decimal: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
}

impl ScalarRepr {
    pub fn of<S: Scalar>(value: &S) -> Self {
        ScalarRepr {
            decimal: value.to_f64(),
            exact: value.to_rational().map(|r| r.to_string()),
        }
    }
}

/// `serialize_with` helpers for scalar-valued report fields.
pub mod serde_scalar {
    use super::*;

    pub fn serialize<S: Scalar, Ser: Serializer>(v: &S, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        ScalarRepr::of(v).serialize(s)
    }

    pub fn option<S: Scalar, Ser: Serializer>(
        v: &Option<S>,
        s: Ser,
    ) -> Result<Ser::Ok, Ser::Error> {
        v.as_ref().map(ScalarRepr::of).serialize(s)
    }

    pub fn vec<S: Scalar, Ser: Serializer>(v: &[S], s: Ser) -> Result<Ser::Ok, Ser::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&ScalarRepr::of(x))?;
        }
        seq.end()
    }
}

/// Exact conversion of an `f64` (its binary value).
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_f64(x)
}

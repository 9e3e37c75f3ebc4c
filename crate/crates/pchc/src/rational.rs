//! Exact rational coordinates.
//!
//! All combinatorial predicates in this crate are order and coincidence
//! checks, so coordinates are kept as arbitrary-precision rationals from
//! construction through serialization. Values serialize as `"p/q"` strings;
//! plain decimal strings (`"0.25"`, `"-3"`) are accepted on input and
//! converted exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

pub type Rat = BigRational;

/// Shorthand for a rational from an integer pair, mostly used in tests.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Reduce a rational into the fundamental domain `[0, 1)`.
pub fn mod1(x: &Rat) -> Rat {
    let f = x.floor();
    x - f
}

/// Error produced when a string does not denote an exact rational.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {input:?}: {reason}")]
pub struct ParseRatError {
    pub input: String,
    pub reason: String,
}

/// Parse `"p/q"`, an integer, or a finite decimal into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rat, ParseRatError> {
    let err = |reason: &str| ParseRatError {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let t = s.trim();
    if t.is_empty() {
        return Err(err("empty string"));
    }
    if let Some((num, den)) = t.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| err("bad numerator"))?;
        let den = BigInt::from_str(den.trim()).map_err(|_| err("bad denominator"))?;
        if den.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rat::new(num, den));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let int_part = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int_part).map_err(|_| err("bad integer part"))?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("bad fractional part"));
        }
        let digits = BigInt::from_str(frac_part).map_err(|_| err("bad fractional part"))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac = Rat::new(digits, scale);
        let int = Rat::from_integer(int_part);
        return Ok(if negative { int - frac } else { int + frac });
    }
    let n = BigInt::from_str(t).map_err(|_| err("not an integer, decimal, or p/q"))?;
    Ok(Rat::from_integer(n))
}

/// Render a rational as the canonical `"p/q"` string (or `"p"` when integral).
pub fn format_rational(x: &Rat) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Convert to `f64` for numeric (non-combinatorial) consumers.
pub fn to_f64(x: &Rat) -> f64 {
    let num = x.numer();
    let den = x.denom();
    // Good enough for the magnitudes used here; coordinates stay in [-1, 1].
    let nf = num.to_string().parse::<f64>().unwrap_or(if num.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    });
    let df = den.to_string().parse::<f64>().unwrap_or(f64::INFINITY);
    nf / df
}

/// Serde adapter: rationals as `"p/q"` strings.
pub mod serde_rat {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rat, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(de)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// A rational wrapper with string (de)serialization, for use inside
/// containers where a field attribute is not enough.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatStr(pub Rat);

impl Serialize for RatStr {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        serde_rat::serialize(&self.0, ser)
    }
}

impl<'de> Deserialize<'de> for RatStr {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        serde_rat::deserialize(de).map(RatStr)
    }
}

impl fmt::Display for RatStr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

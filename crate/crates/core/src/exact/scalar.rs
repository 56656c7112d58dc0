//! Rational scalars and their string encoding.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::KernelError;

/// Arbitrary-precision rational. `BigRational` keeps itself in lowest terms
/// with a positive denominator after every operation.
pub type ExactScalar = BigRational;

pub fn int(value: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(value))
}

/// `numer / denom`, reduced. Panics on a zero denominator.
pub fn ratio(numer: i64, denom: i64) -> ExactScalar {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn zero() -> ExactScalar {
    BigRational::zero()
}

pub fn one() -> ExactScalar {
    BigRational::one()
}

/// Parses `"p/q"` or `"p"`. The sign may only appear on the numerator and the
/// denominator must be a positive integer.
pub fn parse_scalar(text: &str) -> Result<ExactScalar, KernelError> {
    let bad = || KernelError::ParseScalar(text.to_string());
    let text_trim = text.trim();
    let (num_part, den_part) = match text_trim.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text_trim, None),
    };
    let digits = num_part.strip_prefix('-').unwrap_or(num_part);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let numer: BigInt = num_part.parse().map_err(|_| bad())?;
    let denom = match den_part {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let d: BigUint = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            BigInt::from_biguint(Sign::Plus, d)
        }
    };
    Ok(BigRational::new(numer, denom))
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_scalar(value: &ExactScalar) -> String {
    value.to_string()
}

/// Decimal rendering rounded half away from zero to `places` digits.
/// Annotation only, never parsed back.
pub fn to_decimal(value: &ExactScalar, places: usize) -> String {
    let scale = BigInt::from(10u32).pow(places as u32);
    let scaled = value.abs() * BigRational::from_integer(scale.clone());
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let rounded = if r * BigInt::from(2) >= *scaled.denom() {
        q + BigInt::one()
    } else {
        q
    };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if value.is_negative() && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    if places == 0 {
        return format!("{sign}{int_part}");
    }
    format!(
        "{sign}{int_part}.{:0>width$}",
        frac_part.to_string(),
        width = places
    )
}

/// Serde adapter: one scalar as a string.
pub mod serde_scalar {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &ExactScalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ExactScalar, D::Error> {
        let text = String::deserialize(d)?;
        parse_scalar(&text).map_err(D::Error::custom)
    }
}

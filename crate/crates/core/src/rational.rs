//! Exact rationals backed by `num-rational`.
//!
//! `BigRational` already keeps values reduced with a positive denominator,
//! and its `Display` prints `p/q` (or `p` when `q = 1`), which is the
//! serialization format used throughout.

use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// `n / d`, reduced. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

pub fn ceil(r: &Rational) -> BigInt {
    -((-r.numer()).div_floor(r.denom()))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Best rational with denominator `10^digits` at or below `x`; used when
/// decimal input has to be turned into an exact coordinate.
pub fn from_f64_truncated(x: f64, digits: u32) -> Rational {
    let scale = 10i64.pow(digits);
    let n = libm::floor(x * scale as f64) as i64;
    rat(n, scale)
}

/// Parses `p/q`, an integer `p`, or a plain decimal such as `0.375`.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits: String = format!("{}{}", whole.trim_start_matches('-'), frac);
        let n: BigInt = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rational::new(n, d);
        return Ok(if negative { -r } else { r });
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer {s:?}")))?;
    Ok(Rational::from_integer(n))
}

/// Decimal rendering with `digits` digits after the point, rounded half away from zero.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = r * Rational::from_integer(scale.clone());
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let rounded = if scaled.is_negative() {
        -floor(&(-scaled + half))
    } else {
        floor(&(scaled + half))
    };
    let negative = rounded.is_negative();
    let (q, rem) = rounded.abs().div_rem(&scale);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{q}");
    }
    let rem = format!("{rem}");
    let pad = digits - rem.len();
    format!("{sign}{q}.{}{rem}", "0".repeat(pad))
}

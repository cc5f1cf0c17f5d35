//! Exact rational arithmetic helpers.
//!
//! Every exact quantity in the crate (vertex weights, moments, norms,
//! partition functions) is carried by [`Rational`], an arbitrary-precision
//! fraction kept in canonical form: reduced, with positive denominator.
//! `num_rational::BigRational` maintains exactly that invariant, so it is the
//! carrier; this module adds the small vocabulary the rest of the crate needs.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Canonical arbitrary-precision fraction: gcd(|num|, den) = 1, den > 0.
pub type Rational = num_rational::BigRational;

/// Shorthand for a small rational constant.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand for an integer as a rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Integer power with negative exponents allowed. `pow_i(0, e)` panics for e < 0.
pub fn pow_i(base: &Rational, exp: i64) -> Rational {
    if exp == 0 {
        return Rational::one();
    }
    let mag = exp.unsigned_abs() as u32;
    let powed = Rational::new(base.numer().pow(mag), base.denom().pow(mag));
    if exp < 0 {
        powed.recip()
    } else {
        powed
    }
}

/// n! as a big integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Parse "p/q" or "p" into a rational. Used at the CLI boundary so no float
/// ever enters the exact pipeline.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = |t: &str| Error::Domain(format!("cannot parse '{t}' as a rational (want 'p/q' or 'p')"));
    let mut parts = text.splitn(2, '/');
    let numer: BigInt = parts
        .next()
        .ok_or_else(|| bad(text))?
        .trim()
        .parse()
        .map_err(|_| bad(text))?;
    let denom: BigInt = match parts.next() {
        Some(d) => d.trim().parse().map_err(|_| bad(text))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::Domain(format!("zero denominator in '{text}'")));
    }
    Ok(Rational::new(numer, denom))
}

/// Render as "p/q", or plain "p" for integers. Inverse of [`parse_rational`].
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Exact dyadic rational equal to a finite f64. Used for numeric knobs
/// (steps, tolerances) that arrive in scientific notation; exact-mode
/// quantities never pass through here.
pub fn rational_from_f64(value: f64) -> Option<Rational> {
    if !value.is_finite() {
        return None;
    }
    if value == 0.0 {
        return Some(Rational::zero());
    }
    let bits = value.to_bits();
    let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
    let exponent = ((bits >> 52) & 0x7ff) as i64;
    let fraction = bits & ((1u64 << 52) - 1);
    let (mantissa, exp2) = if exponent == 0 {
        (fraction, -1074i64)
    } else {
        (fraction | (1u64 << 52), exponent - 1075)
    };
    let numer = BigInt::from(sign) * BigInt::from(mantissa);
    Some(if exp2 >= 0 {
        Rational::from_integer(numer << exp2 as u64)
    } else {
        Rational::new(numer, BigInt::one() << (-exp2) as u64)
    })
}

/// Crude magnitude estimate: floor(log2(|value|)), or None for zero.
/// Enough for picking truncation points and working precisions.
pub fn log2_magnitude(value: &Rational) -> Option<i64> {
    if value.is_zero() {
        return None;
    }
    let num_bits = value.numer().abs().bits() as i64;
    let den_bits = value.denom().bits() as i64;
    Some(num_bits - den_bits)
}

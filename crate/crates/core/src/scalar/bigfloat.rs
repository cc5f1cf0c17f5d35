//! Arbitrary-precision binary floating point: sign * mantissa * 2^exponent.
//!
//! Used wherever exact rationals blow up (large-n asymptotics, perturbed
//! weights, eigenvalues). Precision is per-value in bits; every rounding is
//! round-to-nearest, ties to even. Values with `prec == 0` are exact dyadics
//! (integers, halves, ...) and never rounded; mixed operations adopt the
//! larger precision of the operands.
//!
//! Conversion from a rational at precision P has relative error <= 2^(1-P),
//! which the tests pin down.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Default working precision in bits when no operand carries one.
pub const DEFAULT_PRECISION: u32 = 256;

#[derive(Clone, Debug)]
pub struct BigFloat {
    sign: i8,      // -1, 0, +1
    mant: BigUint, // canonical: zero iff sign == 0; no trailing zero bits
    exp: i64,
    prec: u32, // 0 = exact dyadic, never rounded
}

impl BigFloat {
    pub fn zero() -> Self {
        BigFloat { sign: 0, mant: BigUint::zero(), exp: 0, prec: 0 }
    }

    pub fn one() -> Self {
        BigFloat::from_i64(1)
    }

    pub fn from_i64(v: i64) -> Self {
        let sign = match v.cmp(&0) {
            Ordering::Less => -1,
            Ordering::Equal => return BigFloat::zero(),
            Ordering::Greater => 1,
        };
        let mut f = BigFloat { sign, mant: BigUint::from(v.unsigned_abs()), exp: 0, prec: 0 };
        f.canonicalize();
        f
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        let sign = match v.sign() {
            Sign::Minus => -1,
            Sign::NoSign => return BigFloat::zero(),
            Sign::Plus => 1,
        };
        let mut f = BigFloat { sign, mant: v.magnitude().clone(), exp: 0, prec };
        f.round_to(prec);
        f.canonicalize();
        f
    }

    /// Round a rational to `prec` bits, nearest-even.
    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        assert!(prec > 0, "rational conversion needs a target precision");
        if r.is_zero() {
            return BigFloat::zero();
        }
        let sign = if r.is_negative() { -1 } else { 1 };
        let num = r.numer().magnitude().clone();
        let den = r.denom().magnitude().clone();
        // Scale so the quotient carries at least prec + 2 bits.
        let want = prec as i64 + 2;
        let shift = (want + den.bits() as i64 - num.bits() as i64).max(0) as u64;
        let (q, rem) = (num << shift).div_rem(&den);
        let mut mant = q;
        if !rem.is_zero() {
            mant |= BigUint::one(); // sticky bit: never lands on an exact tie
        }
        let mut f = BigFloat { sign, mant, exp: -(shift as i64), prec };
        f.round_to(prec);
        f.canonicalize();
        f
    }

    /// Re-round to a (usually smaller) precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        let mut f = self.clone();
        f.prec = prec;
        if prec > 0 {
            f.round_to(prec);
            f.canonicalize();
        }
        f
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign < 0
    }

    pub fn neg(&self) -> Self {
        let mut f = self.clone();
        f.sign = -f.sign;
        f
    }

    /// Multiply by 2^k, exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        let mut f = self.clone();
        if !f.is_zero() {
            f.exp += k;
        }
        f
    }

    /// Exact value as a rational (every binary float is a dyadic rational).
    pub fn to_rational(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let mant = BigInt::from_biguint(int_sign(self.sign), self.mant.clone());
        if self.exp >= 0 {
            Rational::from_integer(mant << self.exp as u64)
        } else {
            Rational::new(mant, BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn abs(&self) -> Self {
        let mut f = self.clone();
        f.sign = f.sign.abs();
        f
    }

    fn canonicalize(&mut self) {
        if self.mant.is_zero() {
            self.sign = 0;
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
    }

    /// Round the mantissa to `prec` bits (nearest, ties to even).
    fn round_to(&mut self, prec: u32) {
        if prec == 0 || self.mant.is_zero() {
            return;
        }
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return;
        }
        let drop = bits - prec as u64;
        let low_mask = (BigUint::one() << drop) - BigUint::one();
        let low = &self.mant & &low_mask;
        let half = BigUint::one() << (drop - 1);
        self.mant >>= drop;
        self.exp += drop as i64;
        let round_up = match low.cmp(&half) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => self.mant.is_odd(),
        };
        if round_up {
            self.mant += BigUint::one();
            if self.mant.bits() > prec as u64 {
                // Carry rippled to a new bit; it must end in zero, shift it out.
                self.mant >>= 1u32;
                self.exp += 1;
            }
        }
    }

    fn effective_prec(&self, other: &Self) -> u32 {
        self.prec.max(other.prec)
    }

    /// Position of the most significant bit: |value| in [2^(pos-1), 2^pos).
    /// Meaningless for zero (returns the stored exponent).
    pub fn msb_pos(&self) -> i64 {
        self.exp + self.mant.bits() as i64
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone().adopting(self.prec);
        }
        if other.is_zero() {
            return self.clone().adopting(other.prec);
        }
        let prec = self.effective_prec(other);
        // When the magnitudes are wildly separated, the small operand only
        // matters as a sticky bit.
        if prec > 0 {
            let gap = self.msb_pos() - other.msb_pos();
            let cap = prec as i64 + 66;
            if gap > cap {
                return self.nudged_by_sign_of(other, prec);
            }
            if gap < -cap {
                return other.nudged_by_sign_of(self, prec);
            }
        }
        let common = self.exp.min(other.exp);
        let a = BigInt::from_biguint(int_sign(self.sign), &self.mant << (self.exp - common) as u64);
        let b = BigInt::from_biguint(int_sign(other.sign), &other.mant << (other.exp - common) as u64);
        let sum = a + b;
        let sign = match sum.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        };
        let mut f = BigFloat { sign, mant: sum.magnitude().clone(), exp: common, prec };
        f.round_to(prec);
        f.canonicalize();
        f
    }

    fn adopting(mut self, other_prec: u32) -> Self {
        let prec = self.prec.max(other_prec);
        self.prec = prec;
        self.round_to(prec);
        self.canonicalize();
        self
    }

    /// `self` plus an infinitesimally small `other`: round with a sticky bit.
    fn nudged_by_sign_of(&self, other: &Self, prec: u32) -> Self {
        let mut mant = &self.mant << 2u32;
        if self.sign == other.sign {
            mant += BigUint::one();
        } else {
            mant -= BigUint::one();
        }
        let mut f = BigFloat { sign: self.sign, mant, exp: self.exp - 2, prec };
        f.round_to(prec);
        f.canonicalize();
        f
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return BigFloat::zero();
        }
        let prec = self.effective_prec(other);
        let mut f = BigFloat {
            sign: self.sign * other.sign,
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
            prec,
        };
        f.round_to(prec);
        f.canonicalize();
        f
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "BigFloat division by zero");
        if self.is_zero() {
            return BigFloat::zero();
        }
        let prec = match self.effective_prec(other) {
            0 => DEFAULT_PRECISION,
            p => p,
        };
        let want = prec as i64 + 2;
        let shift = (want + other.mant.bits() as i64 - self.mant.bits() as i64).max(0) as u64;
        let (q, rem) = (&self.mant << shift).div_rem(&other.mant);
        let mut mant = q;
        if !rem.is_zero() {
            mant |= BigUint::one();
        }
        let mut f = BigFloat {
            sign: self.sign * other.sign,
            mant,
            exp: self.exp - shift as i64 - other.exp,
            prec,
        };
        f.round_to(prec);
        f.canonicalize();
        f
    }

    pub fn recip(&self) -> Self {
        let prec = if self.prec == 0 { DEFAULT_PRECISION } else { self.prec };
        BigFloat::one().with_prec(prec).div(self)
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, mut e: i64) -> Self {
        if e == 0 {
            return BigFloat::one().adopting(self.prec);
        }
        let invert = e < 0;
        e = e.abs();
        let mut base = self.clone();
        let mut acc = BigFloat::one().adopting(self.prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        if invert {
            acc.recip()
        } else {
            acc
        }
    }

    /// Square root, correctly rounded from an integer square root with sticky.
    pub fn sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::Domain("sqrt of a negative value".into()));
        }
        if self.is_zero() {
            return Ok(BigFloat::zero());
        }
        let prec = if self.prec == 0 { DEFAULT_PRECISION } else { self.prec };
        let want = 2 * (prec as i64 + 2);
        let mut shift = (want - self.mant.bits() as i64).max(0) as u64;
        if (self.exp - shift as i64) % 2 != 0 {
            shift += 1;
        }
        let scaled = &self.mant << shift;
        let root = scaled.sqrt();
        let rem = &scaled - &root * &root;
        let mut mant = root;
        if !rem.is_zero() {
            mant |= BigUint::one();
        }
        let mut f = BigFloat { sign: 1, mant, exp: (self.exp - shift as i64) / 2, prec };
        f.round_to(prec);
        f.canonicalize();
        Ok(f)
    }

    /// e^self via argument reduction by ln 2 and a Taylor tail.
    pub fn exp(&self) -> Self {
        let prec = if self.prec == 0 { DEFAULT_PRECISION } else { self.prec };
        if self.is_zero() {
            return BigFloat::one().adopting(prec);
        }
        let work = prec + 64;
        let x = self.with_prec(work);
        let ln2 = ln2_const(work + 64);
        let k = x.div(&ln2).to_i64_rounded();
        let r = x.sub(&BigFloat::from_i64(k).with_prec(work + 64).mul(&ln2)).with_prec(work);
        // |r| <= ln2/2; Taylor sum of r^n/n!.
        let mut term = BigFloat::one().adopting(work);
        let mut sum = BigFloat::one().adopting(work);
        let cutoff = -(work as i64 + 8);
        let mut n = 1i64;
        loop {
            term = term.mul(&r).div(&BigFloat::from_i64(n));
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term);
            if term.msb_pos() < cutoff {
                break;
            }
            n += 1;
        }
        let mut out = sum;
        out.exp += k;
        out.with_prec(prec)
    }

    /// Natural log via atanh series after scaling into [1, 2).
    pub fn ln(&self) -> Result<Self> {
        if self.sign <= 0 {
            return Err(Error::Domain("ln of a non-positive value".into()));
        }
        let prec = if self.prec == 0 { DEFAULT_PRECISION } else { self.prec };
        let work = prec + 64;
        // self = m * 2^e with m in [1, 2).
        let e = self.msb_pos() - 1;
        let mut m = self.clone();
        m.exp -= e;
        m.prec = work;
        let one = BigFloat::one().adopting(work);
        let u = m.sub(&one).div(&m.add(&one)); // in [0, 1/3]
        let u2 = u.mul(&u);
        let mut term = u.clone();
        let mut sum = u.clone();
        let cutoff = -(work as i64 + 8);
        let mut n = 1i64;
        loop {
            term = term.mul(&u2);
            if term.is_zero() {
                break;
            }
            let contrib = term.div(&BigFloat::from_i64(2 * n + 1));
            sum = sum.add(&contrib);
            if contrib.msb_pos() < cutoff {
                break;
            }
            n += 1;
        }
        let ln_m = sum.mul(&BigFloat::from_i64(2));
        let ln2 = ln2_const(work + 64);
        Ok(ln_m.add(&BigFloat::from_i64(e).mul(&ln2)).with_prec(prec))
    }

    pub fn to_i64_rounded(&self) -> i64 {
        if self.is_zero() {
            return 0;
        }
        let v = self.to_f64();
        v.round() as i64
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let (top, shift) = if bits > 53 {
            ((&self.mant >> (bits - 53)).to_u64().unwrap(), bits as i64 - 53)
        } else {
            (self.mant.to_u64().unwrap(), 0)
        };
        let mag = top as f64 * 2f64.powi((self.exp + shift) as i32);
        if self.sign < 0 {
            -mag
        } else {
            mag
        }
    }

    /// Decimal rendering with `digits` significant digits, exact up to the
    /// final rounding (no f64 in the path, so huge and tiny exponents work).
    pub fn to_decimal_string(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let digits = digits.max(1);
        // Estimate the decimal exponent from the binary one, then correct.
        let mut dec_exp = ((self.msb_pos() - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        loop {
            // target integer N = round(|value| * 10^(digits-1-dec_exp)), want 10^(digits-1) <= N < 10^digits
            let pow10 = digits as i64 - 1 - dec_exp;
            let mut num = self.mant.clone();
            let mut den = BigUint::one();
            if self.exp >= 0 {
                num <<= self.exp as u64;
            } else {
                den <<= (-self.exp) as u64;
            }
            if pow10 >= 0 {
                num *= BigUint::from(10u32).pow(pow10 as u32);
            } else {
                den *= BigUint::from(10u32).pow((-pow10) as u32);
            }
            let (q, rem) = num.div_rem(&den);
            let n = if &rem * 2u32 >= den { q + BigUint::one() } else { q };
            let s = n.to_string();
            if s.len() > digits {
                dec_exp += 1;
                continue;
            }
            if s.len() < digits {
                dec_exp -= 1;
                continue;
            }
            let sign = if self.sign < 0 { "-" } else { "" };
            let body = if digits == 1 {
                s
            } else {
                format!("{}.{}", &s[..1], &s[1..])
            };
            return format!("{sign}{body}e{dec_exp}");
        }
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => {}
            ord => return ord,
        }
        if self.sign == 0 {
            return Ordering::Equal;
        }
        let mag = {
            let pa = self.msb_pos();
            let pb = other.msb_pos();
            if pa != pb {
                pa.cmp(&pb)
            } else {
                let common = self.exp.min(other.exp);
                let a = &self.mant << (self.exp - common) as u64;
                let b = &other.mant << (other.exp - common) as u64;
                a.cmp(&b)
            }
        };
        if self.sign > 0 {
            mag
        } else {
            mag.reverse()
        }
    }
}

fn int_sign(s: i8) -> Sign {
    match s.cmp(&0) {
        Ordering::Less => Sign::Minus,
        Ordering::Equal => Sign::NoSign,
        Ordering::Greater => Sign::Plus,
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

/// ln 2 = 2 atanh(1/3), cached per working precision.
fn ln2_const(work: u32) -> BigFloat {
    static CACHE: OnceLock<Mutex<HashMap<u32, BigFloat>>> = OnceLock::new();
    let mut cache = CACHE.get_or_init(|| Mutex::new(HashMap::new())).lock().unwrap();
    if let Some(v) = cache.get(&work) {
        return v.clone();
    }
    let third = BigFloat::one().adopting(work + 16).div(&BigFloat::from_i64(3));
    let ninth = third.mul(&third);
    let mut term = third.clone();
    let mut sum = third;
    let cutoff = -(work as i64 + 16);
    let mut n = 1i64;
    loop {
        term = term.mul(&ninth);
        if term.is_zero() {
            break;
        }
        let contrib = term.div(&BigFloat::from_i64(2 * n + 1));
        sum = sum.add(&contrib);
        if contrib.msb_pos() < cutoff {
            break;
        }
        n += 1;
    }
    let ln2 = sum.mul(&BigFloat::from_i64(2)).with_prec(work);
    cache.insert(work, ln2.clone());
    ln2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::{pow_i, rat};

    fn assert_close(a: &BigFloat, b: &BigFloat, bits: i64) {
        let diff = a.sub(b).abs();
        if diff.is_zero() {
            return;
        }
        let scale = a.abs().msb_pos();
        assert!(
            diff.msb_pos() <= scale - bits,
            "values differ above 2^-{bits} relative: {} vs {}",
            a.to_decimal_string(30),
            b.to_decimal_string(30)
        );
    }

    /// Exact rational oracle for e: Taylor partial sum with factorial tail bound.
    fn e_rational_oracle(terms: usize) -> (Rational, Rational) {
        let mut sum = Rational::zero();
        let mut term = Rational::one();
        for n in 1..=terms {
            sum += &term;
            term /= Rational::from_integer(n.into());
        }
        // tail = sum_{n>=terms} 1/n! <= 2/terms!
        let tail = term * rat(2, 1);
        (sum, tail)
    }

    #[test]
    fn exp_one_matches_rational_taylor_oracle() {
        // The 60-term tail bound (~1e-82) is far below the 192-bit rounding
        // granularity, so the oracle pins exp(1) to a few ulps.
        let (e_sum, tail) = e_rational_oracle(60);
        assert!(tail < pow_i(&rat(1, 2), 250));
        let prec = 192u32;
        let e = BigFloat::one().with_prec(prec).exp();
        let oracle = BigFloat::from_rational(&e_sum, prec + 16);
        assert_close(&e, &oracle, prec as i64 - 6);
    }

    #[test]
    fn ln_and_exp_are_inverse() {
        for r in [rat(3, 2), rat(1, 7), rat(22, 7), rat(400, 3)] {
            let x = BigFloat::from_rational(&r, 256);
            let back = x.ln().unwrap().exp();
            assert_close(&back, &x, 240);
        }
    }

    #[test]
    fn sqrt_squares_back() {
        for r in [rat(2, 1), rat(3, 7), rat(1000, 17)] {
            let x = BigFloat::from_rational(&r, 256);
            let s = x.sqrt().unwrap();
            assert_close(&s.mul(&s), &x, 250);
        }
        assert!(BigFloat::from_i64(-1).sqrt().is_err());
        assert!(BigFloat::zero().sqrt().unwrap().is_zero());
    }

    #[test]
    fn from_rational_relative_error_bound() {
        // Contract: |round(r) - r| <= 2^(1-P) |r|.
        for p in [64u32, 128, 200] {
            for r in [rat(1, 3), rat(22, 7), rat(-123456789, 1000003), rat(1, 999983)] {
                let f = BigFloat::from_rational(&r, p);
                // Reconstruct the float exactly as a rational.
                let mant = BigInt::from_biguint(int_sign(f.sign), f.mant.clone());
                let as_rat = if f.exp >= 0 {
                    Rational::from_integer(mant << f.exp as u64)
                } else {
                    Rational::new(mant, BigInt::one() << (-f.exp) as u64)
                };
                let rel = ((as_rat - &r) / &r).abs();
                assert!(rel <= pow_i(&rat(1, 2), p as i64 - 1), "prec {p}, value {r}");
            }
        }
    }

    #[test]
    fn nearest_even_tie() {
        // 0b101 + tie exactly halfway at 2 bits: 0b10.1 -> rounds to 0b10 (even).
        let mut v = BigFloat { sign: 1, mant: BigUint::from(5u32), exp: 0, prec: 0 };
        v.round_to(2);
        v.canonicalize();
        // 5 = 101b; to 2 bits: 10.1b -> ties-to-even gives 10b << 1 = 4
        assert_eq!(v.to_f64(), 4.0);
        let mut w = BigFloat { sign: 1, mant: BigUint::from(7u32), exp: 0, prec: 0 };
        w.round_to(2);
        w.canonicalize();
        // 7 = 111b; to 2 bits: 11.1b -> up to 100b = 8
        assert_eq!(w.to_f64(), 8.0);
    }

    #[test]
    fn addition_with_huge_magnitude_gap() {
        // Nearest rounding absorbs a 2^-100000 perturbation entirely, in both
        // directions, without materializing a 100000-bit intermediate.
        let big = BigFloat::from_rational(&rat(1, 3), 128);
        let mut tiny = BigFloat::one();
        tiny.exp = -100_000;
        assert_eq!(big.add(&tiny), big);
        assert_eq!(big.sub(&tiny), big);
        assert!(big.add(&tiny).mant.bits() <= 128);
    }

    #[test]
    fn ordering_and_decimal_rendering() {
        let a = BigFloat::from_rational(&rat(1, 3), 128);
        let b = BigFloat::from_rational(&rat(1, 2), 128);
        assert!(a < b);
        assert!(b > a);
        assert_eq!(BigFloat::from_i64(1).to_decimal_string(5), "1.0000e0");
        let third = BigFloat::from_rational(&rat(1, 3), 128).to_decimal_string(6);
        assert_eq!(third, "3.33333e-1");
        let tiny = BigFloat::from_rational(&rat(1, 10), 400).powi(500);
        assert!(tiny.to_decimal_string(4).ends_with("e-500"));
    }

    #[test]
    fn powi_matches_exact_rational_power() {
        let x = rat(7, 5);
        let f = BigFloat::from_rational(&x, 256).powi(37);
        let exact = BigFloat::from_rational(&pow_i(&x, 37), 256);
        assert_close(&f, &exact, 240);
    }
}

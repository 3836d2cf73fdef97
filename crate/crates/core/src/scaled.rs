//! Floating-point values with an extended binary exponent.
//!
//! High-degree recurrences for Hermite and Laguerre functions multiply a
//! polynomial that can exceed `f64::MAX` by a Gaussian factor that underflows
//! long before that. [`ScaledValue`] keeps the mantissa in `[1, 2)` and moves
//! the scale into an `i64` exponent so neither side is lost.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub};

const EXP_MASK: u64 = 0x7ff << 52;

/// `sign * mantissa * 2^exponent` with `|mantissa|` in `[1, 2)`, or exactly zero.
#[derive(Clone, Copy, PartialEq)]
pub struct ScaledValue {
    mantissa: f64,
    exponent: i64,
}

/// Splits a finite nonzero `x` into a signed mantissa in `[1, 2)` and an exponent.
fn split(x: f64) -> (f64, i64) {
    let bits = x.to_bits();
    let biased = ((bits & EXP_MASK) >> 52) as i64;
    if biased == 0 {
        // subnormal
        let (m, e) = split(x * 2f64.powi(64));
        return (m, e - 64);
    }
    let m = f64::from_bits((bits & !EXP_MASK) | (1023u64 << 52));
    (m, biased - 1023)
}

impl ScaledValue {
    pub const ZERO: ScaledValue = ScaledValue { mantissa: 0.0, exponent: 0 };
    pub const ONE: ScaledValue = ScaledValue { mantissa: 1.0, exponent: 0 };

    /// Encodes an ordinary float. Non-finite inputs panic: every caller in the
    /// crate guards against them before encoding.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "ScaledValue::from_f64 called with {x}");
        if x == 0.0 {
            return Self::ZERO;
        }
        let (mantissa, exponent) = split(x);
        Self { mantissa, exponent }
    }

    /// `x * 2^exponent` for any finite `x`.
    pub fn from_parts(x: f64, exponent: i64) -> Self {
        let v = Self::from_f64(x);
        if v.is_zero() {
            return v;
        }
        Self { mantissa: v.mantissa, exponent: v.exponent + exponent }
    }

    /// `sign * exp(ln_abs)`; `ln_abs = -inf` gives zero.
    pub fn from_ln(ln_abs: f64, negative: bool) -> Self {
        if ln_abs == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        assert!(ln_abs.is_finite(), "ScaledValue::from_ln called with {ln_abs}");
        let log2 = ln_abs / std::f64::consts::LN_2;
        let e = log2.floor();
        let mut m = (log2 - e).exp2();
        let mut exponent = e as i64;
        if m >= 2.0 {
            m /= 2.0;
            exponent += 1;
        }
        Self { mantissa: if negative { -m } else { m }, exponent }
    }

    pub fn exp(x: f64) -> Self {
        Self::from_ln(x, false)
    }

    pub fn mantissa(&self) -> f64 {
        self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0.0
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa < 0.0
    }

    /// Decodes to `f64`, saturating to `±inf` or flushing to (signed) zero.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let e = self.exponent.clamp(i32::MIN as i64 / 2, i32::MAX as i64 / 2) as i32;
        libm::scalbn(self.mantissa, e)
    }

    pub fn abs(&self) -> Self {
        Self { mantissa: self.mantissa.abs(), exponent: self.exponent }
    }

    /// Natural log of the magnitude; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.mantissa.abs().ln() + self.exponent as f64 * std::f64::consts::LN_2
    }

    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.mantissa.abs().log2() + self.exponent as f64
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of negative ScaledValue");
        if self.is_zero() {
            return *self;
        }
        let (m, e) = if self.exponent.rem_euclid(2) == 0 {
            (self.mantissa, self.exponent)
        } else {
            (self.mantissa * 2.0, self.exponent - 1)
        };
        Self::from_parts(m.sqrt(), e / 2)
    }

    pub fn powi(&self, n: u64) -> Self {
        let mut result = Self::ONE;
        let mut base = *self;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result * base;
            }
            base = base * base;
            n >>= 1;
        }
        result
    }

    /// Multiplies by `2^k` exactly.
    pub fn ldexp(&self, k: i64) -> Self {
        if self.is_zero() {
            return *self;
        }
        Self { mantissa: self.mantissa, exponent: self.exponent + k }
    }

    pub fn mul_f64(&self, x: f64) -> Self {
        *self * Self::from_f64(x)
    }

    /// Magnitude comparison ignoring sign.
    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (false, false) => self
                .exponent
                .cmp(&other.exponent)
                .then(self.mantissa.abs().total_cmp(&other.mantissa.abs())),
        }
    }

    pub fn max_abs(self, other: Self) -> Self {
        if self.cmp_abs(&other) == Ordering::Less {
            other
        } else {
            self
        }
    }
}

impl Default for ScaledValue {
    fn default() -> Self {
        Self::ZERO
    }
}

impl fmt::Debug for ScaledValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mantissa, self.exponent)
    }
}

impl fmt::Display for ScaledValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.to_f64();
        if v.is_finite() && (v != 0.0 || self.is_zero()) {
            write!(f, "{v}")
        } else {
            write!(f, "{}*2^{}", self.mantissa, self.exponent)
        }
    }
}

impl From<f64> for ScaledValue {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl Mul for ScaledValue {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::ZERO;
        }
        Self::from_parts(self.mantissa * rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl MulAssign for ScaledValue {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl Div for ScaledValue {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division of ScaledValue by zero");
        if self.is_zero() {
            return Self::ZERO;
        }
        Self::from_parts(self.mantissa / rhs.mantissa, self.exponent - rhs.exponent)
    }
}

impl Neg for ScaledValue {
    type Output = Self;
    fn neg(self) -> Self {
        Self { mantissa: -self.mantissa, exponent: self.exponent }
    }
}

impl Add for ScaledValue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (big, small) = if self.exponent >= rhs.exponent { (self, rhs) } else { (rhs, self) };
        let shift = big.exponent - small.exponent;
        if shift > 60 {
            return big;
        }
        let sum = big.mantissa + libm::scalbn(small.mantissa, -(shift as i32));
        if sum == 0.0 {
            return Self::ZERO;
        }
        Self::from_parts(sum, big.exponent)
    }
}

impl AddAssign for ScaledValue {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for ScaledValue {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl PartialOrd for ScaledValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let ord = match (self.is_negative(), other.is_negative()) {
            (false, true) => {
                if self.is_zero() && other.is_zero() {
                    Ordering::Equal
                } else {
                    Ordering::Greater
                }
            }
            (true, false) => Ordering::Less,
            (false, false) => self.cmp_abs(other),
            (true, true) => other.cmp_abs(self),
        };
        Some(ord)
    }
}

/// Sums scaled values relative to their largest exponent using pairwise
/// summation, so the result does not depend on how large the terms are.
pub fn sum_scaled(values: &[ScaledValue]) -> ScaledValue {
    let max_exp = match values.iter().filter(|v| !v.is_zero()).map(|v| v.exponent).max() {
        Some(e) => e,
        None => return ScaledValue::ZERO,
    };
    let rel: Vec<f64> = values.iter().map(|v| v.ldexp(-max_exp).to_f64()).collect();
    let s = crate::summation::pairwise_sum(&rel);
    if s == 0.0 {
        ScaledValue::ZERO
    } else {
        ScaledValue::from_parts(s, max_exp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_mantissa() {
        let v = ScaledValue::from_f64(-12.0);
        assert_eq!(v.mantissa(), -1.5);
        assert_eq!(v.exponent(), 3);
        assert!(ScaledValue::from_f64(0.0).is_zero());
    }

    #[test]
    fn subnormal_round_trip() {
        let x = f64::MIN_POSITIVE / 1024.0;
        let v = ScaledValue::from_f64(x);
        assert!((1.0..2.0).contains(&v.mantissa()));
        assert_eq!(v.to_f64(), x);
    }

    #[test]
    fn survives_beyond_f64_range() {
        let big = ScaledValue::from_f64(1e300);
        let tiny = ScaledValue::from_f64(1e-300);
        let p = big * big * tiny * tiny;
        assert!((p.to_f64() - 1.0).abs() < 1e-14);
        assert!((big * big).to_f64().is_infinite());
        assert!(((big * big).ln_abs() - 600.0 * 10f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn from_ln_matches_exp() {
        for &x in &[-3.2, 0.0, 1e-3, 7.5, 500.0, -700.0] {
            let v = ScaledValue::exp(x);
            assert!((v.to_f64() / x.exp() - 1.0).abs() < 1e-13, "{x}");
        }
        let huge = ScaledValue::exp(5000.0);
        assert!((huge.ln_abs() - 5000.0).abs() < 1e-9);
    }

    #[test]
    fn addition_aligns_exponents() {
        let a = ScaledValue::from_f64(3.0);
        let b = ScaledValue::from_f64(-2.75);
        assert_eq!((a + b).to_f64(), 0.25);
        assert!((a - a).is_zero());
        let far = ScaledValue::from_f64(1.0).ldexp(200);
        assert_eq!((far + a), far);
    }

    #[test]
    fn powi_and_sqrt() {
        let v = ScaledValue::from_f64(3.0);
        assert_eq!(v.powi(4).to_f64(), 81.0);
        let r = ScaledValue::from_f64(2.0).ldexp(1001).sqrt();
        assert!((r.log2_abs() - 501.0).abs() < 1e-12);
        assert_eq!(ScaledValue::from_f64(9.0).sqrt().to_f64(), 3.0);
    }

    #[test]
    fn ordering_respects_sign() {
        let a = ScaledValue::from_f64(-5.0);
        let b = ScaledValue::from_f64(0.5);
        assert!(a < b);
        assert!(ScaledValue::from_f64(-0.5) > a);
        assert!(ScaledValue::ZERO < b);
        assert!(ScaledValue::ZERO > a);
    }

    #[test]
    fn scaled_sum_handles_wide_range() {
        let terms = vec![
            ScaledValue::from_f64(1.0).ldexp(3000),
            ScaledValue::from_f64(1.0).ldexp(2999),
            ScaledValue::from_f64(-1.0).ldexp(2998),
        ];
        let s = sum_scaled(&terms);
        assert_eq!(s, ScaledValue::from_f64(1.25).ldexp(3000));
    }
}

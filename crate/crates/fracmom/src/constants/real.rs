//! Fixed-point arbitrary-precision real numbers.
//!
//! A [`Real`] is a big-integer mantissa with an implicit binary scale:
//! `value = mant / 2^bits`. All series and quadrature in this crate work at a
//! fixed working scale, so absolute-error accounting is exact: one ulp is
//! `2^-bits`, and every operation rounds with at most one ulp of error.

use crate::error::{Error, Result};
use crate::exactmath::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Requested precision in decimal digits plus internal guard digits.
///
/// All public constant evaluators compute with `digits + guard` decimal
/// digits of working precision and guarantee absolute error at most
/// `10^-digits` on the returned value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    digits: u32,
    guard: u32,
}

impl Precision {
    pub const DEFAULT_GUARD: u32 = 10;

    /// Working precision of `digits` decimal digits (clamped to at least 10)
    /// with the default guard.
    pub fn new(digits: u32) -> Precision {
        Precision {
            digits: digits.max(10),
            guard: Self::DEFAULT_GUARD,
        }
    }

    pub fn with_guard(digits: u32, guard: u32) -> Precision {
        Precision {
            digits: digits.max(10),
            guard,
        }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    /// Binary scale corresponding to `digits + guard` decimal digits.
    pub fn working_bits(&self) -> u32 {
        bits_for_digits(self.digits + self.guard)
    }
}

/// Number of mantissa bits needed for `d` decimal digits (with slack).
pub fn bits_for_digits(d: u32) -> u32 {
    // log2(10) = 3.3219...; round up and add a few spare bits
    (d as u64 * 3322 / 1000) as u32 + 8
}

/// Fixed-point real: `mant / 2^bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Real {
    mant: BigInt,
    bits: u32,
}

fn shr_round(x: BigInt, s: u32) -> BigInt {
    if s == 0 {
        return x;
    }
    let half = BigInt::one() << (s - 1);
    (x + half) >> s
}

fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_rem(d);
    let r2: BigInt = r * 2;
    if r2.magnitude() >= d.magnitude() {
        let adj = if (n.is_negative()) == (d.is_negative()) {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        q + adj
    } else {
        q
    }
}

impl Real {
    pub fn zero(bits: u32) -> Real {
        Real {
            mant: BigInt::zero(),
            bits,
        }
    }

    pub fn one(bits: u32) -> Real {
        Real::from_i64(1, bits)
    }

    pub fn from_i64(v: i64, bits: u32) -> Real {
        Real {
            mant: BigInt::from(v) << bits,
            bits,
        }
    }

    pub fn from_bigint(v: &BigInt, bits: u32) -> Real {
        Real {
            mant: v << bits,
            bits,
        }
    }

    pub fn from_rational(q: &Rational, bits: u32) -> Real {
        Real {
            mant: div_round(&(q.numer() << bits), q.denom()),
            bits,
        }
    }

    pub fn from_f64(v: f64, bits: u32) -> Result<Real> {
        let q = Rational::from_float(v)
            .ok_or_else(|| Error::Domain(format!("non-finite float {v}")))?;
        Ok(Real::from_rational(&q, bits))
    }

    /// 10^-d at the given scale; handy as an absolute-error threshold.
    pub fn pow10_neg(d: u32, bits: u32) -> Real {
        let den = BigInt::from(10u32).pow(d);
        Real {
            mant: div_round(&(BigInt::one() << bits), &den),
            bits,
        }
    }

    /// n units in the last place: n·2^-bits.
    pub fn ulps(n: u64, bits: u32) -> Real {
        Real {
            mant: BigInt::from(n),
            bits,
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn rescale(&self, bits: u32) -> Real {
        if bits == self.bits {
            self.clone()
        } else if bits > self.bits {
            Real {
                mant: &self.mant << (bits - self.bits),
                bits,
            }
        } else {
            Real {
                mant: shr_round(self.mant.clone(), self.bits - bits),
                bits,
            }
        }
    }

    fn aligned(&self, other: &Real) -> (Real, Real, u32) {
        let bits = self.bits.min(other.bits);
        (self.rescale(bits), other.rescale(bits), bits)
    }

    pub fn add(&self, other: &Real) -> Real {
        let (a, b, bits) = self.aligned(other);
        Real {
            mant: a.mant + b.mant,
            bits,
        }
    }

    pub fn sub(&self, other: &Real) -> Real {
        let (a, b, bits) = self.aligned(other);
        Real {
            mant: a.mant - b.mant,
            bits,
        }
    }

    pub fn neg(&self) -> Real {
        Real {
            mant: -&self.mant,
            bits: self.bits,
        }
    }

    pub fn abs(&self) -> Real {
        Real {
            mant: self.mant.abs(),
            bits: self.bits,
        }
    }

    pub fn mul(&self, other: &Real) -> Real {
        let (a, b, bits) = self.aligned(other);
        Real {
            mant: shr_round(a.mant * b.mant, bits),
            bits,
        }
    }

    pub fn mul_i64(&self, k: i64) -> Real {
        Real {
            mant: &self.mant * k,
            bits: self.bits,
        }
    }

    pub fn mul_bigint(&self, k: &BigInt) -> Real {
        Real {
            mant: &self.mant * k,
            bits: self.bits,
        }
    }

    pub fn mul_rational(&self, q: &Rational) -> Real {
        Real {
            mant: div_round(&(&self.mant * q.numer()), q.denom()),
            bits: self.bits,
        }
    }

    pub fn div(&self, other: &Real) -> Real {
        let (a, b, bits) = self.aligned(other);
        assert!(!b.mant.is_zero(), "division by zero Real");
        Real {
            mant: div_round(&(a.mant << bits), &b.mant),
            bits,
        }
    }

    pub fn div_i64(&self, k: i64) -> Real {
        assert!(k != 0);
        Real {
            mant: div_round(&self.mant, &BigInt::from(k)),
            bits: self.bits,
        }
    }

    pub fn div_bigint(&self, k: &BigInt) -> Real {
        assert!(!k.is_zero());
        Real {
            mant: div_round(&self.mant, k),
            bits: self.bits,
        }
    }

    pub fn recip(&self) -> Real {
        Real::one(self.bits).div(self)
    }

    /// Integer power, binary exponentiation; negative exponents via one
    /// final reciprocal.
    pub fn powi(&self, e: i64) -> Real {
        if e == 0 {
            return Real::one(self.bits);
        }
        let mut base = self.clone();
        let mut exp = e.unsigned_abs();
        let mut acc = Real::one(self.bits);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        if e < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn cmp_value(&self, other: &Real) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.mant.cmp(&b.mant)
    }

    pub fn le(&self, other: &Real) -> bool {
        self.cmp_value(other) != Ordering::Greater
    }

    pub fn lt(&self, other: &Real) -> bool {
        self.cmp_value(other) == Ordering::Less
    }

    pub fn to_f64(&self) -> f64 {
        // split off the scale to stay inside f64 range for the mantissa head
        let nbits = self.mant.bits() as i64;
        if nbits <= 900 {
            self.mant.to_f64().unwrap_or(0.0) / 2f64.powi(self.bits as i32)
        } else {
            let shift = (nbits - 64) as u32;
            let head = (&self.mant >> shift).to_f64().unwrap_or(0.0);
            head * 2f64.powi(shift as i32 - self.bits as i32)
        }
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.mant.clone(), BigInt::one() << self.bits)
    }

    /// Decimal string with exactly `digits` fractional digits, round to
    /// nearest.
    pub fn to_decimal(&self, digits: u32) -> String {
        crate::exactmath::rational_to_decimal(&self.to_rational(), digits)
    }

    /// Parse a decimal literal, e.g. `-0.125`, `3`, `1e-12`, `2.5E3`.
    pub fn from_decimal_str(s: &str, bits: u32) -> Result<Real> {
        let q = parse_decimal(s)?;
        Ok(Real::from_rational(&q, bits))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.bits as u64 * 301 / 1000) as u32;
        write!(f, "{}", self.to_decimal(digits))
    }
}

/// Parse `[+-]?digits[.digits][eE[+-]?exp]` into an exact rational.
pub fn parse_decimal(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::UnsupportedArgument(format!("malformed decimal literal {s:?}"));
    let (mant_str, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (sign, rest) = match mant_str.strip_prefix('-') {
        Some(r) => (-1, r),
        None => (1, mant_str.strip_prefix('+').unwrap_or(mant_str)),
    };
    let (int_part, frac_part) = match rest.find('.') {
        Some(i) => (&rest[..i], &rest[i + 1..]),
        None => (rest, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let all: String = format!("{int_part}{frac_part}");
    if !all.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = all.parse().map_err(|_| bad())?;
    let scale = frac_part.len() as i32 - exp;
    let ten = BigInt::from(10u32);
    let q = if scale >= 0 {
        Rational::new(digits * sign, ten.pow(scale as u32))
    } else {
        Rational::from_integer(digits * sign * ten.pow((-scale) as u32))
    };
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    const B: u32 = 140;

    #[test]
    fn basic_arithmetic() {
        let a = Real::from_rational(&rat(1, 3), B);
        let b = Real::from_rational(&rat(1, 6), B);
        let s = a.add(&b);
        let half = Real::from_rational(&rat(1, 2), B);
        assert!(s.sub(&half).abs().le(&Real::ulps(4, B)));
        let p = a.mul(&b);
        let expect = Real::from_rational(&rat(1, 18), B);
        assert!(p.sub(&expect).abs().le(&Real::ulps(4, B)));
    }

    #[test]
    fn powers_and_reciprocals() {
        let x = Real::from_i64(3, B);
        assert_eq!(x.powi(5), Real::from_i64(243, B));
        let inv = x.powi(-2);
        let expect = Real::from_rational(&rat(1, 9), B);
        assert!(inv.sub(&expect).abs().le(&Real::ulps(4, B)));
    }

    #[test]
    fn min_precision_carries() {
        let a = Real::from_i64(1, 200);
        let b = Real::from_i64(1, 100);
        assert_eq!(a.add(&b).bits(), 100);
        assert_eq!(a.mul(&b).bits(), 100);
    }

    #[test]
    fn decimal_round_trip() {
        let x = Real::from_decimal_str("-0.577215664901532860606512090082", B).unwrap();
        assert_eq!(x.to_decimal(30), "-0.577215664901532860606512090082");
        let y = Real::from_decimal_str("1e-12", B).unwrap();
        assert_eq!(y.to_decimal(13), "0.0000000000010");
        let z = Real::from_decimal_str("2.5E3", B).unwrap();
        assert_eq!(z.to_decimal(1), "2500.0");
        assert!(Real::from_decimal_str("abc", B).is_err());
    }

    #[test]
    fn rounding_shift() {
        assert_eq!(shr_round(BigInt::from(5), 1), BigInt::from(3));
        assert_eq!(shr_round(BigInt::from(-5), 1), BigInt::from(-2));
        assert_eq!(div_round(&BigInt::from(7), &BigInt::from(2)), BigInt::from(4));
        assert_eq!(div_round(&BigInt::from(-7), &BigInt::from(2)), BigInt::from(-4));
    }
}

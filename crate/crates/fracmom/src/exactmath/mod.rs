//! Exact rational arithmetic and the combinatorial primitives every closed
//! form is built from: binomial coefficients (with the empty-sum convention
//! that out-of-range binomials vanish), falling factorials, harmonic numbers
//! and factorials.

mod poly;

pub use poly::Poly;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always reduced, denominator > 0.
pub type Rational = num_rational::BigRational;

/// Rational from an integer numerator/denominator pair.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Rational from an integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// n! as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Binomial coefficient C(n, k).
///
/// Out-of-range indices (`k < 0` or `k > n`) give 0, matching the convention
/// that an empty sum is zero; the index regimes of the moment formulas rely
/// on this. A negative upper index is outside everything we evaluate and is
/// rejected.
pub fn binom(n: i64, k: i64) -> Result<Rational> {
    if n < 0 {
        return Err(Error::UnsupportedArgument(format!(
            "binom: negative upper index {n}"
        )));
    }
    if k < 0 || k > n {
        return Ok(Rational::zero());
    }
    let k = k.min(n - k) as u64;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= n as u64 - i;
        den *= i + 1;
    }
    Ok(Rational::new(num, den))
}

/// Binomial coefficient as a big integer, for callers that know `n >= 0`.
pub fn binom_int(n: i64, k: i64) -> BigInt {
    binom(n, k)
        .expect("nonnegative upper index")
        .to_integer()
}

/// Falling factorial (a)_n = a(a-1)⋯(a-n+1), with (a)_0 = 1.
pub fn falling(a: &Rational, n: u64) -> Rational {
    let mut acc = Rational::one();
    let mut x = a.clone();
    for _ in 0..n {
        acc *= &x;
        x -= Rational::one();
    }
    acc
}

/// Harmonic number H_n = 1 + 1/2 + ⋯ + 1/n, with H_0 = 0.
pub fn harmonic(n: u64) -> Rational {
    let mut acc = Rational::zero();
    for i in 1..=n {
        acc += Rational::new(BigInt::one(), BigInt::from(i));
    }
    acc
}

/// Decimal rendering of a rational with the given number of fractional
/// digits, rounded to nearest (ties away from zero).
pub fn rational_to_decimal(q: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = q * Rational::from_integer(scale);
    let neg = scaled.numer().is_negative();
    let mag = scaled.numer().abs();
    let den = scaled.denom();
    let rounded = (mag + den / BigInt::from(2)) / den;
    if digits == 0 {
        return format!("{}{}", if neg && !rounded.is_zero() { "-" } else { "" }, rounded);
    }
    let abs = rounded.to_string();
    let padded = if abs.len() <= digits as usize {
        format!("0{}{}", "0".repeat(digits as usize - abs.len()), abs)
    } else {
        abs
    };
    let split = padded.len() - digits as usize;
    let (ip, fp) = padded.split_at(split);
    format!("{}{}.{}", if neg && rounded != BigInt::zero() { "-" } else { "" }, ip, fp)
}

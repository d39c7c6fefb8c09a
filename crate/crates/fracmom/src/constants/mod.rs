//! High-precision evaluation of the transcendental constants behind the
//! closed forms: γ, π, log 2π, ζ(s), ζ′(s) at even s, log Γ, the polygamma
//! functions and the sine/cosine integrals at 2π.
//!
//! Everything is computed from series with explicit analytic remainder
//! bounds, never from fixed iteration counts:
//!
//! - ζ(s) and the Hurwitz sums Σ (x+k)⁻ˢ use Euler–Maclaurin with the tail
//!   started far enough out that the asymptotic terms decay below one ulp;
//!   the remainder after the last included term is bounded by twice that
//!   term (the terms alternate through the Bernoulli numbers and the
//!   integral form of the remainder gives `2ζ(2J)/(2π)^{2J} = |B_{2J}|/(2J)!`
//!   exactly).
//! - ζ′(s) differentiates the same machinery term by term: the summand
//!   becomes `log k·k⁻ˢ` and the Euler–Maclaurin derivatives pick up exact
//!   integer coefficient pairs `(c_r, d_r)` with `c_{r+1} = (s+r)c_r`,
//!   `d_{r+1} = (s+r)d_r - c_r`.
//! - log Γ and ψ use argument shifts into the asymptotic regime.
//! - Si(2π) and Ci(2π) come from their alternating power series, whose
//!   remainders are below the first omitted term.
//!
//! Every producing operation computes at `digits + guard` decimal digits and
//! guarantees absolute error at most `10^-digits`.

mod real;

pub use real::{bits_for_digits, parse_decimal, Precision, Real};

use crate::bernoulli::bernoulli_number;
use crate::error::{Error, Result};
use crate::exactmath::{harmonic, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::Mutex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedConstant {
    Gamma,
    Pi,
    Log2Pi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum ConstKey {
    Gamma,
    Pi,
    Ln2,
    Log2Pi,
    Zeta(u64),
    ZetaPrime(u64),
    SiTwoPi,
    CiTwoPi,
}

static CONST_CACHE: Mutex<Option<HashMap<(ConstKey, u32), Real>>> = Mutex::new(None);

fn cached<F>(key: ConstKey, bits: u32, compute: F) -> Result<Real>
where
    F: FnOnce() -> Result<Real>,
{
    {
        let guard = CONST_CACHE.lock().unwrap();
        if let Some(map) = guard.as_ref() {
            if let Some(v) = map.get(&(key, bits)) {
                return Ok(v.clone());
            }
        }
    }
    let v = compute()?;
    let mut guard = CONST_CACHE.lock().unwrap();
    guard
        .get_or_insert_with(HashMap::new)
        .insert((key, bits), v.clone());
    Ok(v)
}

fn decimal_digits(bits: u32) -> u32 {
    (bits as u64 * 30103 / 100000) as u32
}

/// Start of the asymptotic regime: large enough that the Euler–Maclaurin
/// terms for exponent `s` decay below the ulp target before they turn.
fn asym_start(bits: u32, s: u64) -> u64 {
    let d = decimal_digits(bits) as u64;
    (d * 367 / 1000 + 4).max(10).max(s / 6 + 4)
}

// ---------------------------------------------------------------------------
// elementary constants and series
// ---------------------------------------------------------------------------

fn ln2_raw(bits: u32) -> Real {
    // ln 2 = 2·atanh(1/3) = Σ 2 / ((2i+1)·3^{2i+1})
    let mut inv = BigInt::one() << bits;
    inv /= 3;
    let mut acc = BigInt::zero();
    let mut i: u64 = 0;
    while !inv.is_zero() {
        acc += 2 * &inv / (2 * i + 1);
        inv /= 9;
        i += 1;
    }
    real_from_mant(acc, bits)
}

fn real_from_mant(mant: BigInt, bits: u32) -> Real {
    Real::from_rational(
        &Rational::new(mant, BigInt::one() << bits),
        bits,
    )
}

fn atan_inv(q: u64, bits: u32) -> Real {
    // atan(1/q) = Σ (-1)^i / ((2i+1)·q^{2i+1}), alternating
    let q2 = BigInt::from(q) * q;
    let mut inv = (BigInt::one() << bits) / q;
    let mut acc = BigInt::zero();
    let mut i: u64 = 0;
    while !inv.is_zero() {
        let term = &inv / (2 * i + 1);
        if i.is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
        inv /= &q2;
        i += 1;
    }
    real_from_mant(acc, bits)
}

fn pi_raw(bits: u32) -> Real {
    // Machin: π = 16·atan(1/5) - 4·atan(1/239)
    let w = bits + 16;
    let v = atan_inv(5, w).mul_i64(16).sub(&atan_inv(239, w).mul_i64(4));
    v.rescale(bits)
}

/// Natural logarithm for x > 0 (argument reduction by powers of two, then
/// the atanh series; error a few ulp).
fn ln_raw(x: &Real) -> Result<Real> {
    if x.is_zero() || x.is_negative() {
        return Err(Error::Domain("log of non-positive value".into()));
    }
    let bits = x.bits();
    let w = bits + 16;
    let mut y = x.rescale(w);
    let mut e: i64 = 0;
    let hi = Real::from_rational(&crate::exactmath::rat(3, 2), w);
    let lo = Real::from_rational(&crate::exactmath::rat(3, 4), w);
    while !y.lt(&hi) {
        y = y.div_i64(2);
        e += 1;
    }
    while y.lt(&lo) {
        y = y.mul_i64(2);
        e -= 1;
    }
    let one = Real::one(w);
    let t = y.sub(&one).div(&y.add(&one));
    let t2 = t.mul(&t);
    let mut p = t.clone();
    let mut acc = t;
    let mut i: u64 = 1;
    let eps = Real::ulps(2, w);
    loop {
        p = p.mul(&t2);
        if p.abs().lt(&eps) {
            break;
        }
        acc = acc.add(&p.div_i64(2 * i as i64 + 1));
        i += 1;
    }
    let ln2 = cached(ConstKey::Ln2, w, || Ok(ln2_raw(w)))?;
    Ok(acc.mul_i64(2).add(&ln2.mul_i64(e)).rescale(bits))
}

/// sin x by Taylor series; intended for |x| ≤ 8 (no argument reduction).
pub fn sin_taylor(x: &Real) -> Real {
    let bits = x.bits();
    let x2 = x.mul(x);
    let mut term = x.clone();
    let mut acc = x.clone();
    let eps = Real::ulps(2, bits);
    let mut k: i64 = 1;
    loop {
        term = term.mul(&x2).div_i64(2 * k * (2 * k + 1)).neg();
        if term.abs().lt(&eps) {
            break;
        }
        acc = acc.add(&term);
        k += 1;
    }
    acc
}

/// cos x by Taylor series; intended for |x| ≤ 8.
pub fn cos_taylor(x: &Real) -> Real {
    let bits = x.bits();
    let x2 = x.mul(x);
    let mut term = Real::one(bits);
    let mut acc = Real::one(bits);
    let eps = Real::ulps(2, bits);
    let mut k: i64 = 1;
    loop {
        term = term.mul(&x2).div_i64((2 * k - 1) * 2 * k).neg();
        if term.abs().lt(&eps) {
            break;
        }
        acc = acc.add(&term);
        k += 1;
    }
    acc
}

// ---------------------------------------------------------------------------
// digamma / Euler–Mascheroni
// ---------------------------------------------------------------------------

/// ψ(x) for x > 0, with an error bound: shift into the asymptotic regime,
/// then ψ(y) = ln y - 1/(2y) - Σ B_{2j}/(2j)·y^{-2j}.
fn digamma_with_bound(x: &Real, bits: u32) -> Result<(Real, Real)> {
    if x.is_zero() || x.is_negative() {
        return Err(Error::Domain("digamma requires x > 0".into()));
    }
    let target = Real::ulps(8, bits);
    let mut start = asym_start(bits, 2);
    for _attempt in 0..6 {
        let xf = x.to_f64();
        let shift = if xf >= start as f64 {
            0u64
        } else {
            (start as f64 - xf).ceil() as u64 + 1
        };
        let mut head = Real::zero(bits);
        for k in 0..shift {
            head = head.add(&x.add(&Real::from_i64(k as i64, bits)).recip());
        }
        let y = x.add(&Real::from_i64(shift as i64, bits));
        let inv = y.recip();
        let inv2 = inv.mul(&inv);
        let mut acc = ln_raw(&y)?.sub(&inv.div_i64(2));
        // term_j = B_{2j}/(2j)·y^{-2j}, advanced by its exact term ratio so
        // that tiny powers of y are never scaled back up by the huge
        // Bernoulli-number growth
        let mut term = inv2.mul_rational(&(bernoulli_number(2) / Rational::from_integer(BigInt::from(2))));
        let mut prev = Real::zero(bits);
        for j in 1..(40 + 3 * decimal_digits(bits) as u64) {
            acc = acc.sub(&term);
            let mag = term.abs();
            if mag.le(&target) {
                let bound = mag.mul_i64(2).add(&Real::ulps(shift + 80, bits));
                return Ok((acc.sub(&head), bound));
            }
            if j > 1 && !mag.lt(&prev) {
                break; // asymptotic terms turned; restart farther out
            }
            prev = mag;
            let ratio = bernoulli_number(2 * j as u32 + 2) / bernoulli_number(2 * j as u32)
                * Rational::new(BigInt::from(2 * j), BigInt::from(2 * j + 2));
            term = term.mul_rational(&ratio).mul(&inv2);
        }
        start *= 2;
    }
    Err(Error::PrecisionUnachievable(
        "digamma asymptotic series did not converge".into(),
    ))
}

fn gamma_raw(bits: u32) -> Result<Real> {
    // γ = H_N - ψ(N+1), with N+1 already in the asymptotic regime
    let n = asym_start(bits, 2) + 2;
    let (psi, _) = digamma_with_bound(&Real::from_i64(n as i64 + 1, bits), bits)?;
    let h = Real::from_rational(&harmonic(n), bits);
    Ok(h.sub(&psi))
}

// ---------------------------------------------------------------------------
// Hurwitz sums and zeta
// ---------------------------------------------------------------------------

/// Σ_{k=0}^{∞} (x+k)^{-s} for s ≥ 2, x > 0, with an error bound.
pub(crate) fn hurwitz_with_bound(s: u64, x: &Real, bits: u32) -> Result<(Real, Real)> {
    assert!(s >= 2);
    if x.is_zero() || x.is_negative() {
        return Err(Error::Domain("hurwitz sum requires x > 0".into()));
    }
    let target = Real::ulps(8, bits);
    let xf = x.to_f64();
    // fast path: the direct series already converges below one ulp
    if xf >= 1.0 && (s as f64) * xf.log10() > decimal_digits(bits) as f64 + 6.0 {
        let mut acc = Real::zero(bits);
        let eps = Real::ulps(2, bits);
        let mut k = 0i64;
        loop {
            let term = x.add(&Real::from_i64(k, bits)).powi(-(s as i64));
            if term.lt(&eps) {
                // integral-test tail: ∫ (x+k)^{-s} = (x+k)^{1-s}/(s-1)
                let tail = x
                    .add(&Real::from_i64(k, bits))
                    .powi(1 - s as i64)
                    .div_i64(s as i64 - 1);
                let bound = tail.add(&Real::ulps(k as u64 + 8, bits));
                return Ok((acc, bound));
            }
            acc = acc.add(&term);
            k += 1;
        }
    }
    let mut start = asym_start(bits, s);
    for _attempt in 0..6 {
        let shift = if xf >= start as f64 {
            0u64
        } else {
            (start as f64 - xf).ceil() as u64 + 1
        };
        let mut head = Real::zero(bits);
        for k in 0..shift {
            head = head.add(&x.add(&Real::from_i64(k as i64, bits)).powi(-(s as i64)));
        }
        let y = x.add(&Real::from_i64(shift as i64, bits));
        let inv = y.recip();
        let inv2 = inv.mul(&inv);
        // ∫ + boundary: y^{1-s}/(s-1) + y^{-s}/2
        let w1s = inv.powi(s as i64 - 1);
        let mut acc = w1s.div_i64(s as i64 - 1);
        acc = acc.add(&w1s.mul(&inv).div_i64(2));
        // term_j = B_{2j}/(2j)!·(s)_{2j-1}·y^{1-s-2j}, ratio-tracked
        let mut term = w1s.mul(&inv2).mul_rational(
            &(bernoulli_number(2) * Rational::new(BigInt::from(s), BigInt::from(2u32))),
        );
        let mut prev = Real::zero(bits);
        for j in 1..(40 + 3 * decimal_digits(bits) as u64) {
            acc = acc.add(&term);
            let mag = term.abs();
            if mag.le(&target) {
                let bound = mag.mul_i64(2).add(&Real::ulps(shift + 100, bits));
                return Ok((head.add(&acc), bound));
            }
            if j > 1 && !mag.lt(&prev) {
                break;
            }
            prev = mag;
            let ratio = bernoulli_number(2 * j as u32 + 2) / bernoulli_number(2 * j as u32)
                * Rational::new(
                    BigInt::from((s + 2 * j - 1) * (s + 2 * j)),
                    BigInt::from((2 * j + 1) * (2 * j + 2)),
                );
            term = term.mul_rational(&ratio).mul(&inv2);
        }
        start *= 2;
    }
    Err(Error::PrecisionUnachievable(
        "Euler-Maclaurin tail did not reach the ulp target".into(),
    ))
}

/// Σ_{k=start}^{∞} k^{-s} over the integers, with bound. `start ≥ 1`, s ≥ 2.
pub(crate) fn zeta_tail_from(s: u64, start: u64, bits: u32) -> Result<(Real, Real)> {
    hurwitz_with_bound(s, &Real::from_i64(start as i64, bits), bits)
}

fn zeta_raw(s: u64, bits: u32) -> Result<(Real, Real)> {
    zeta_tail_from(s, 1, bits)
}

/// ζ′(s) for integer s ≥ 2: term-wise differentiated Euler–Maclaurin for
/// -Σ log k·k^{-s}.
fn zeta_prime_raw(s: u64, bits: u32) -> Result<(Real, Real)> {
    assert!(s >= 2);
    let target = Real::ulps(8, bits);
    let mut start = asym_start(bits, s).max(12);
    'attempt: for _attempt in 0..6 {
        let x = start;
        let mut head = Real::zero(bits);
        for k in 2..x {
            let pow = BigInt::from(k).pow(s as u32);
            let invpow = Real::one(bits).div_bigint(&pow);
            head = head.add(&ln_raw(&Real::from_i64(k as i64, bits))?.mul(&invpow));
        }
        let y = Real::from_i64(x as i64, bits);
        let lny = ln_raw(&y)?;
        let inv = y.recip();
        let inv2 = inv.mul(&inv);
        let sm1 = s as i64 - 1;
        // ∫_y^∞ log u·u^{-s} du = y^{1-s}(ln y/(s-1) + 1/(s-1)^2)
        let w1s = inv.powi(sm1);
        let mut acc = w1s.mul(&lny.div_i64(sm1).add(&Real::from_rational(
            &Rational::new(BigInt::one(), BigInt::from(sm1) * sm1),
            bits,
        )));
        // + log y·y^{-s}/2
        acc = acc.add(&w1s.mul(&inv).mul(&lny).div_i64(2));
        // + Σ_j B_{2j}/(2j)!·y^{1-s-2j}·(c_{2j-1}·ln y + d_{2j-1})
        // with c_{r+1} = (s+r)c_r, d_{r+1} = (s+r)d_r - c_r from the
        // derivatives of log u·u^{-s}. The two halves are ratio-tracked:
        // u_j carries the c part, v_j the d part.
        let mut c = BigInt::from(s); // c_1
        let mut d = -BigInt::one(); // d_1
        let mut r: u64 = 1;
        let first = w1s
            .mul(&inv2)
            .mul_rational(&(bernoulli_number(2) / Rational::from_integer(BigInt::from(2u32))));
        let mut u = first.mul_bigint(&c); // B_2/2!·c_1·y^{-s-1}
        let mut v = first.neg(); // B_2/2!·d_1·y^{-s-1}
        let mut prev = Real::zero(bits);
        for j in 1..(40 + 3 * decimal_digits(bits) as u64) {
            let term = u.mul(&lny).add(&v);
            acc = acc.add(&term);
            let mag = u.abs().mul(&lny).add(&v.abs());
            if mag.le(&target) {
                let bound = mag.mul_i64(2).add(&Real::ulps(x + 160, bits));
                return Ok((head.add(&acc).neg(), bound));
            }
            if j > 1 && !mag.lt(&prev) {
                start *= 2;
                continue 'attempt;
            }
            prev = mag;
            // advance c, d from index 2j-1 to 2j+1
            let c_old = c.clone();
            let d_old = d.clone();
            while r < 2 * j + 1 {
                let nd = BigInt::from(s + r) * &d - &c;
                c *= BigInt::from(s + r);
                d = nd;
                r += 1;
            }
            let b_ratio = bernoulli_number(2 * j as u32 + 2) / bernoulli_number(2 * j as u32);
            let fact_ratio = Rational::new(BigInt::one(), BigInt::from((2 * j + 1) * (2 * j + 2)));
            u = u
                .mul_rational(&(&b_ratio * &fact_ratio * Rational::new(c.clone(), c_old)))
                .mul(&inv2);
            v = v
                .mul_rational(&(&b_ratio * &fact_ratio * Rational::new(d.clone(), d_old)))
                .mul(&inv2);
        }
        start *= 2;
    }
    Err(Error::PrecisionUnachievable(
        "differentiated Euler-Maclaurin tail did not converge".into(),
    ))
}

// ---------------------------------------------------------------------------
// log gamma
// ---------------------------------------------------------------------------

/// log Γ(x) for x > 0, with an error bound (Stirling after argument shift).
pub fn log_gamma_with_bound(x: &Real, bits: u32) -> Result<(Real, Real)> {
    if x.is_zero() || x.is_negative() {
        return Err(Error::Domain("log_gamma requires x > 0".into()));
    }
    let target = Real::ulps(8, bits);
    let mut start = asym_start(bits, 2);
    for _attempt in 0..6 {
        let xf = x.to_f64();
        let shift = if xf >= start as f64 {
            0u64
        } else {
            (start as f64 - xf).ceil() as u64 + 1
        };
        let y = x.add(&Real::from_i64(shift as i64, bits));
        let lny = ln_raw(&y)?;
        let half = Real::from_rational(&crate::exactmath::rat(1, 2), bits);
        let log2pi = log2pi_at_bits(bits)?;
        let mut acc = y.sub(&half).mul(&lny).sub(&y).add(&log2pi.div_i64(2));
        let inv = y.recip();
        let inv2 = inv.mul(&inv);
        // term_j = B_{2j}/((2j)(2j-1))·y^{1-2j}, ratio-tracked
        let mut term = inv.mul_rational(&(bernoulli_number(2) / Rational::from_integer(BigInt::from(2u32))));
        let mut prev = Real::zero(bits);
        for j in 1..(40 + 3 * decimal_digits(bits) as u64) {
            acc = acc.add(&term);
            let mag = term.abs();
            if mag.le(&target) {
                let mut bound = mag.mul_i64(2).add(&Real::ulps(shift * 4 + 100, bits));
                for k in 0..shift {
                    acc = acc.sub(&ln_raw(&x.add(&Real::from_i64(k as i64, bits)))?);
                    bound = bound.add(&Real::ulps(4, bits));
                }
                return Ok((acc, bound));
            }
            if j > 1 && !mag.lt(&prev) {
                break;
            }
            prev = mag;
            let ratio = bernoulli_number(2 * j as u32 + 2) / bernoulli_number(2 * j as u32)
                * Rational::new(
                    BigInt::from(2 * j * (2 * j - 1)),
                    BigInt::from((2 * j + 2) * (2 * j + 1)),
                );
            term = term.mul_rational(&ratio).mul(&inv2);
        }
        start *= 2;
    }
    Err(Error::PrecisionUnachievable(
        "Stirling series did not reach the ulp target".into(),
    ))
}

// ---------------------------------------------------------------------------
// Si / Ci at 2π
// ---------------------------------------------------------------------------

fn si_2pi_raw(bits: u32) -> Result<Real> {
    let w = bits + 16;
    let theta = pi_at_bits(w).mul_i64(2);
    let t2 = theta.mul(&theta);
    let mut u = theta.clone(); // θ^{2k+1}/(2k+1)!
    let mut acc = theta;
    let eps = Real::ulps(2, w);
    let mut k: i64 = 0;
    loop {
        u = u.mul(&t2).div_i64((2 * k + 2) * (2 * k + 3)).neg();
        k += 1;
        let term = u.div_i64(2 * k + 1);
        if term.abs().lt(&eps) && k > 4 {
            break;
        }
        acc = acc.add(&term);
    }
    Ok(acc.rescale(bits))
}

fn ci_2pi_raw(bits: u32) -> Result<Real> {
    // Ci(x) = γ + log x + Σ_{k≥1} (-1)^k x^{2k} / (2k·(2k)!)
    let w = bits + 16;
    let theta = pi_at_bits(w).mul_i64(2);
    let t2 = theta.mul(&theta);
    let gamma = gamma_at_bits(w)?;
    let mut acc = gamma.add(&ln_raw(&theta)?);
    let mut u = Real::one(w); // θ^{2k}/(2k)!
    let eps = Real::ulps(2, w);
    let mut k: i64 = 0;
    loop {
        u = u.mul(&t2).div_i64((2 * k + 1) * (2 * k + 2)).neg();
        k += 1;
        let term = u.div_i64(2 * k);
        if term.abs().lt(&eps) && k > 4 {
            break;
        }
        acc = acc.add(&term);
    }
    Ok(acc.rescale(bits))
}

// ---------------------------------------------------------------------------
// bit-level accessors (cached) and the public, precision-driven API
// ---------------------------------------------------------------------------

pub fn pi_at_bits(bits: u32) -> Real {
    cached(ConstKey::Pi, bits, || Ok(pi_raw(bits))).expect("pi computation is total")
}

pub fn gamma_at_bits(bits: u32) -> Result<Real> {
    cached(ConstKey::Gamma, bits, || gamma_raw(bits))
}

pub fn log2pi_at_bits(bits: u32) -> Result<Real> {
    cached(ConstKey::Log2Pi, bits, || {
        let w = bits + 16;
        ln_raw(&pi_at_bits(w).mul_i64(2)).map(|v| v.rescale(bits))
    })
}

pub fn zeta_at_bits(s: u64, bits: u32) -> Result<Real> {
    cached(ConstKey::Zeta(s), bits, || zeta_raw(s, bits).map(|p| p.0))
}

pub fn zeta_prime_at_bits(s: u64, bits: u32) -> Result<Real> {
    cached(ConstKey::ZetaPrime(s), bits, || {
        zeta_prime_raw(s, bits).map(|p| p.0)
    })
}

pub fn si_2pi_at_bits(bits: u32) -> Result<Real> {
    cached(ConstKey::SiTwoPi, bits, || si_2pi_raw(bits))
}

pub fn ci_2pi_at_bits(bits: u32) -> Result<Real> {
    cached(ConstKey::CiTwoPi, bits, || ci_2pi_raw(bits))
}

/// γ, π or log 2π correct to 10^-digits.
pub fn eval_named_constant(name: NamedConstant, prec: Precision) -> Result<Real> {
    let bits = prec.working_bits();
    match name {
        NamedConstant::Gamma => gamma_at_bits(bits),
        NamedConstant::Pi => Ok(pi_at_bits(bits)),
        NamedConstant::Log2Pi => log2pi_at_bits(bits),
    }
}

/// ζ(s) for integer s ≥ 2, correct to 10^-digits.
pub fn zeta_int(s: i64, prec: Precision) -> Result<Real> {
    if s < 2 {
        return Err(Error::UnsupportedArgument(format!(
            "zeta_int requires s >= 2, got {s}"
        )));
    }
    zeta_at_bits(s as u64, prec.working_bits())
}

/// ζ′(s) for even integer s ≥ 2, correct to 10^-digits.
pub fn zeta_prime_even(s: i64, prec: Precision) -> Result<Real> {
    if s < 2 || s % 2 != 0 {
        return Err(Error::UnsupportedArgument(format!(
            "zeta_prime_even requires even s >= 2, got {s}"
        )));
    }
    zeta_prime_at_bits(s as u64, prec.working_bits())
}

/// log Γ(x) for x > 0, correct to 10^-digits.
pub fn log_gamma(x: &Real, prec: Precision) -> Result<Real> {
    let bits = prec.working_bits();
    log_gamma_with_bound(&x.rescale(bits), bits).map(|p| p.0)
}

/// ψ⁽ᵐ⁾(x) for x > 0, correct to 10^-digits; m = 0 is the digamma.
pub fn polygamma(m: u32, x: &Real, prec: Precision) -> Result<Real> {
    polygamma_with_bound(m, &x.rescale(prec.working_bits()), prec.working_bits()).map(|p| p.0)
}

/// ψ⁽ᵐ⁾(x) with an explicit error bound, at a caller-chosen scale.
pub fn polygamma_with_bound(m: u32, x: &Real, bits: u32) -> Result<(Real, Real)> {
    if m == 0 {
        return digamma_with_bound(x, bits);
    }
    let (h, hb) = hurwitz_with_bound(m as u64 + 1, x, bits)?;
    let mfac = crate::exactmath::factorial(m as u64);
    let signed = if m % 2 == 1 {
        mfac.clone()
    } else {
        -mfac.clone()
    };
    Ok((h.mul_bigint(&signed), hb.mul_bigint(&mfac).abs()))
}

/// (Si(2π), Ci(2π)) correct to 10^-digits.
pub fn si_ci_at_2pi(prec: Precision) -> Result<(Real, Real)> {
    let bits = prec.working_bits();
    Ok((si_2pi_at_bits(bits)?, ci_2pi_at_bits(bits)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(v: &Real, frozen: &str, digits: u32) {
        let expect = Real::from_decimal_str(frozen, v.bits()).unwrap();
        let diff = v.sub(&expect).abs();
        assert!(
            diff.le(&Real::pow10_neg(digits, v.bits())),
            "value {} differs from {} by more than 1e-{digits}",
            v.to_decimal(digits + 4),
            frozen
        );
    }

    #[test]
    fn named_constants() {
        let p = Precision::new(40);
        check(
            &eval_named_constant(NamedConstant::Gamma, p).unwrap(),
            "0.577215664901532860606512090082402431042159336",
            40,
        );
        check(
            &eval_named_constant(NamedConstant::Pi, p).unwrap(),
            "3.14159265358979323846264338327950288419716940",
            40,
        );
        check(
            &eval_named_constant(NamedConstant::Log2Pi, p).unwrap(),
            "1.83787706640934548356065947281123527972279495",
            40,
        );
    }

    #[test]
    fn zeta_values() {
        let p = Precision::new(40);
        check(
            &zeta_int(2, p).unwrap(),
            "1.64493406684822643647241516664602518921894990",
            40,
        );
        check(
            &zeta_int(3, p).unwrap(),
            "1.20205690315959428539973816151144999076498629",
            40,
        );
        // ζ(s) -> 1 for large s
        let z30 = zeta_int(30, Precision::new(12)).unwrap();
        let d = z30.sub(&Real::one(z30.bits())).abs();
        assert!(d.lt(&Real::pow10_neg(9, z30.bits())));
        assert!(zeta_int(1, p).is_err());
    }

    #[test]
    fn zeta_prime_values() {
        let p = Precision::new(40);
        check(
            &zeta_prime_even(2, p).unwrap(),
            "-0.937548254315843753702574094567864977897860289",
            40,
        );
        check(
            &zeta_prime_even(4, p).unwrap(),
            "-0.0689112658961253798488293655874408271500163749",
            40,
        );
        // |ζ′(30)| < 1e-7
        let z = zeta_prime_even(30, Precision::new(12)).unwrap();
        assert!(z.abs().lt(&Real::pow10_neg(7, z.bits())));
        assert!(z.is_negative());
        assert!(zeta_prime_even(3, p).is_err());
        // ratio at a sub-minimum request exercises the digits clamp
        let p8 = Precision::new(8);
        let ratio = zeta_prime_even(2, p8).unwrap().div(&zeta_int(2, p8).unwrap());
        assert_eq!(&ratio.to_decimal(8), "-0.56996099");
    }

    #[test]
    fn log_gamma_values() {
        let p = Precision::new(40);
        let bits = p.working_bits();
        let lg1 = log_gamma(&Real::one(bits), p).unwrap();
        assert!(lg1.abs().le(&Real::pow10_neg(40, bits)));
        let lg2 = log_gamma(&Real::from_i64(2, bits), p).unwrap();
        assert!(lg2.abs().le(&Real::pow10_neg(40, bits)));
        let half = Real::from_rational(&crate::exactmath::rat(1, 2), bits);
        check(
            &log_gamma(&half, p).unwrap(),
            "0.572364942924700087071713675676529355823647406",
            40,
        );
        let x15 = Real::from_rational(&crate::exactmath::rat(3, 2), bits);
        check(
            &log_gamma(&x15, p).unwrap(),
            "-0.120782237635245222345518445781647212251852728",
            40,
        );
        assert!(log_gamma(&Real::zero(bits), p).is_err());
    }

    #[test]
    fn polygamma_values() {
        let p = Precision::new(40);
        let bits = p.working_bits();
        // ψ(1) = -γ
        let psi1 = polygamma(0, &Real::one(bits), p).unwrap();
        let gamma = eval_named_constant(NamedConstant::Gamma, p).unwrap();
        assert!(psi1.add(&gamma).abs().le(&Real::pow10_neg(40, bits)));
        // ψ'(1) = ζ(2)
        let psi11 = polygamma(1, &Real::one(bits), p).unwrap();
        let z2 = zeta_int(2, p).unwrap();
        assert!(psi11.sub(&z2).abs().le(&Real::pow10_neg(39, bits)));
        // ψ(3) = -γ + 3/2
        check(
            &polygamma(0, &Real::from_i64(3, bits), p).unwrap(),
            "0.922784335098467139393487909917597568957840664",
            40,
        );
    }

    #[test]
    fn si_ci_values() {
        let p = Precision::new(40);
        let (si, ci) = si_ci_at_2pi(p).unwrap();
        check(&si, "1.41815157613262845024578016229974942914245335", 40);
        check(&ci, "-0.0225606617463460676435387785430464336473700478", 40);
        assert!(ci.is_negative());
    }

    #[test]
    fn polygamma_recurrence() {
        // ψ⁽ᵐ⁾(x+1) - ψ⁽ᵐ⁾(x) = (-1)ᵐ·m!/x^{m+1}
        let p = Precision::new(30);
        let bits = p.working_bits();
        for m in 0..=4u32 {
            for num in [3i64, 7, 12, 21] {
                let x = Real::from_rational(&crate::exactmath::rat(num, 5), bits);
                let lhs = polygamma(m, &x.add(&Real::one(bits)), p)
                    .unwrap()
                    .sub(&polygamma(m, &x, p).unwrap());
                let mut rhs = x.powi(-(m as i64 + 1)).mul_bigint(&crate::exactmath::factorial(m as u64));
                if m % 2 == 1 {
                    rhs = rhs.neg();
                }
                assert!(
                    lhs.sub(&rhs).abs().le(&Real::pow10_neg(28, bits)),
                    "recurrence failed at m={m} x={num}/5"
                );
            }
        }
    }

    #[test]
    fn psi_integer_values_match_zeta_tails() {
        // ψ⁽ᵐ⁾(n) = (-1)^{m+1} m!(ζ(m+1) - Σ_{k<n} k^{-(m+1)})
        let p = Precision::new(30);
        let bits = p.working_bits();
        for m in 1..=6u32 {
            for n in 1..=8i64 {
                let lhs = polygamma(m, &Real::from_i64(n, bits), p).unwrap();
                let mut tail = zeta_int(m as i64 + 1, p).unwrap();
                for k in 1..n {
                    let q = Rational::new(BigInt::one(), BigInt::from(k).pow(m + 1));
                    tail = tail.sub(&Real::from_rational(&q, bits));
                }
                let mut rhs = tail.mul_bigint(&crate::exactmath::factorial(m as u64));
                if m % 2 == 0 {
                    rhs = rhs.neg();
                }
                assert!(
                    lhs.sub(&rhs).abs().le(&Real::pow10_neg(28, bits)),
                    "failed at m={m} n={n}"
                );
            }
        }
    }

    #[test]
    fn monotone_bounds() {
        // raising the precision must not raise the reported bound
        let mut prev: Option<Real> = None;
        for digits in [15u32, 25, 35, 45] {
            let bits = Precision::new(digits).working_bits();
            let (_, b) = hurwitz_with_bound(2, &Real::one(bits), bits).unwrap();
            if let Some(p) = prev {
                assert!(b.le(&p), "bound grew from {} to {}", p.to_decimal(50), b.to_decimal(50));
            }
            prev = Some(b.rescale(Precision::new(50).working_bits()));
        }
    }
}

//! Exact symbolic constants: rational linear combinations of products of a
//! small fixed set of transcendental atoms, with a unique normal form so that
//! equality is decidable, plus the sequences `α_n`, `a_n`, `b_n` and the
//! closed-form `log Γ` integrals they encode.
//!
//! A [`SymValue`] is `Σ coeff·(atom₁·atom₂·…)`. Terms are keyed by their
//! sorted atom multiset; powers of π merge by exponent addition; zero
//! coefficients are dropped. Two values are equal iff their normalized term
//! collections coincide. No rewriting between encodings is attempted (ζ(2)
//! and π² are distinct atoms by design); cross-encoding equality is a
//! numerical question, answered by [`SymValue::eval`].

use crate::bernoulli::bernoulli_number;
use crate::constants::{self, Precision, Real};
use crate::error::Result;
use crate::exactmath::{binom, int, rat, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A named transcendental constant (or an integer power of π).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// Euler–Mascheroni γ.
    EulerGamma,
    /// πᵏ with k ≠ 0 (π⁰ is absorbed into the rational coefficient).
    Pi(i32),
    /// log 2π.
    Log2Pi,
    /// ζ(s) for integer s ≥ 2.
    Zeta(u32),
    /// ζ′(s)/ζ(s) for even s ≥ 2; the odd-index `a_n` values only ever use
    /// the ratio, which keeps every closed form linear in the atoms.
    ZetaPrimeRatio(u32),
    /// Si(2π).
    SiTwoPi,
    /// Ci(2π).
    CiTwoPi,
}

impl Atom {
    fn render(&self) -> String {
        match self {
            Atom::EulerGamma => "gamma".into(),
            Atom::Pi(1) => "pi".into(),
            Atom::Pi(p) => format!("pi^{p}"),
            Atom::Log2Pi => "log2pi".into(),
            Atom::Zeta(s) => format!("zeta({s})"),
            Atom::ZetaPrimeRatio(s) => format!("zeta'({s})/zeta({s})"),
            Atom::SiTwoPi => "Si2pi".into(),
            Atom::CiTwoPi => "Ci2pi".into(),
        }
    }

    fn eval(&self, bits: u32) -> Result<Real> {
        match self {
            Atom::EulerGamma => constants::gamma_at_bits(bits),
            Atom::Pi(p) => Ok(constants::pi_at_bits(bits + 8).powi(*p as i64).rescale(bits)),
            Atom::Log2Pi => constants::log2pi_at_bits(bits),
            Atom::Zeta(s) => constants::zeta_at_bits(*s as u64, bits),
            Atom::ZetaPrimeRatio(s) => {
                let zp = constants::zeta_prime_at_bits(*s as u64, bits + 8)?;
                let z = constants::zeta_at_bits(*s as u64, bits + 8)?;
                Ok(zp.div(&z).rescale(bits))
            }
            Atom::SiTwoPi => constants::si_2pi_at_bits(bits),
            Atom::CiTwoPi => constants::ci_2pi_at_bits(bits),
        }
    }
}

/// Multiset of atoms in canonical order: π powers merged, sorted.
fn normalize_atoms(atoms: Vec<Atom>) -> Vec<Atom> {
    let mut pi_power: i64 = 0;
    let mut rest = Vec::with_capacity(atoms.len());
    for a in atoms {
        match a {
            Atom::Pi(p) => pi_power += p as i64,
            other => rest.push(other),
        }
    }
    if pi_power != 0 {
        rest.push(Atom::Pi(pi_power as i32));
    }
    rest.sort();
    rest
}

/// Exact rational linear combination of products of atoms, in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymValue {
    terms: BTreeMap<Vec<Atom>, Rational>,
}

impl SymValue {
    pub fn zero() -> SymValue {
        SymValue::default()
    }

    pub fn from_rational(q: Rational) -> SymValue {
        let mut v = SymValue::zero();
        v.push(q, vec![]);
        v
    }

    pub fn from_atom(a: Atom) -> SymValue {
        SymValue::term(Rational::from_integer(BigInt::from(1)), vec![a])
    }

    /// A single term `coeff·Πatoms`.
    pub fn term(coeff: Rational, atoms: Vec<Atom>) -> SymValue {
        let mut v = SymValue::zero();
        v.push(coeff, atoms);
        v
    }

    fn push(&mut self, coeff: Rational, atoms: Vec<Atom>) {
        if coeff.is_zero() {
            return;
        }
        let key = normalize_atoms(atoms);
        let becomes_zero = {
            let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
            *entry += coeff;
            entry.is_zero()
        };
        if becomes_zero {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Atom>, &Rational)> {
        self.terms.iter()
    }

    /// The coefficient of the pure-rational term.
    pub fn rational_part(&self) -> Rational {
        self.terms.get(&vec![]).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &SymValue) -> SymValue {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.push(c.clone(), k.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymValue) -> SymValue {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SymValue {
        let mut out = SymValue::zero();
        for (k, c) in &self.terms {
            out.push(-c, k.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> SymValue {
        if c.is_zero() {
            return SymValue::zero();
        }
        let mut out = SymValue::zero();
        for (k, q) in &self.terms {
            out.push(q * c, k.clone());
        }
        out
    }

    pub fn add_rational(&self, q: &Rational) -> SymValue {
        let mut out = self.clone();
        out.push(q.clone(), vec![]);
        out
    }

    pub fn mul_atom(&self, a: Atom) -> SymValue {
        let mut out = SymValue::zero();
        for (k, c) in &self.terms {
            let mut atoms = k.clone();
            atoms.push(a);
            out.push(c.clone(), atoms);
        }
        out
    }

    pub fn mul(&self, other: &SymValue) -> SymValue {
        let mut out = SymValue::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let mut atoms = ka.clone();
                atoms.extend(kb.iter().copied());
                out.push(ca * cb, atoms);
            }
        }
        out
    }

    /// Evaluate numerically, correct to 10^-digits.
    ///
    /// Atoms are evaluated with enough extra digits to absorb the
    /// coefficient magnitudes and the term count.
    pub fn eval(&self, prec: Precision) -> Result<Real> {
        let extra = self.coefficient_headroom();
        let bits = Precision::with_guard(prec.digits(), prec.guard() + extra).working_bits();
        let mut acc = Real::zero(bits);
        for (atoms, coeff) in &self.terms {
            let mut t = Real::from_rational(coeff, bits);
            for a in atoms {
                t = t.mul(&a.eval(bits)?);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Extra decimal digits needed to cover Σ|coeff| and π powers.
    fn coefficient_headroom(&self) -> u32 {
        let mut max_bits: u64 = 0;
        let mut pi_pow: i64 = 0;
        for (atoms, coeff) in &self.terms {
            let b = coeff.numer().bits() + coeff.denom().bits();
            max_bits = max_bits.max(b);
            for a in atoms {
                if let Atom::Pi(p) = a {
                    pi_pow = pi_pow.max(p.unsigned_abs() as i64);
                }
            }
        }
        let coeff_digits = (max_bits * 302 / 1000) as u32;
        let term_digits = 2 + (self.terms.len() as f64).log10().ceil() as u32;
        coeff_digits + term_digits + pi_pow as u32 + 4
    }
}

impl fmt::Display for SymValue {
    /// Canonical text form: terms in normal-form order, `coeff*atom1*atom2`,
    /// e.g. `1 - 1/2*zeta(2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (atoms, coeff) in &self.terms {
            let neg = coeff.is_negative();
            let mag = coeff.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let atom_str: Vec<String> = atoms.iter().map(|a| a.render()).collect();
            if atoms.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == int(1) {
                write!(f, "{}", atom_str.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, atom_str.join("*"))?;
            }
        }
        Ok(())
    }
}

/// α₀ = γ and αₙ = ζ(n+1) for n ≥ 1.
pub fn alpha_seq(n: u32) -> SymValue {
    if n == 0 {
        SymValue::from_atom(Atom::EulerGamma)
    } else {
        SymValue::from_atom(Atom::Zeta(n + 1))
    }
}

/// aₙ = ∫₀¹ Bₙ(x)·log Γ(x) dx in closed form:
///
/// - even n: aₙ = -ζ′(-n), i.e. a₀ = log √2π and, for even n ≥ 2,
///   aₙ = (-1)^{n/2+1}·n!·ζ(n+1)/(2·(2π)ⁿ) by the functional equation;
/// - odd n: aₙ = B_{n+1}/(n+1)·(ζ′(n+1)/ζ(n+1) - log 2π - γ).
pub fn a_seq(n: u32) -> SymValue {
    if n == 0 {
        return SymValue::term(rat(1, 2), vec![Atom::Log2Pi]);
    }
    if n.is_multiple_of(2) {
        // (-1)^{n/2+1}·n!/2^{n+1}·π^{-n}·ζ(n+1)
        let sign = if (n / 2).is_multiple_of(2) { -1 } else { 1 };
        let coeff = Rational::new(
            BigInt::from(sign) * crate::exactmath::factorial(n as u64),
            BigInt::from(2u32).pow(n + 1),
        );
        SymValue::term(coeff, vec![Atom::Pi(-(n as i32)), Atom::Zeta(n + 1)])
    } else {
        let c = bernoulli_number(n + 1) / Rational::from_integer(BigInt::from(n + 1));
        SymValue::term(c.clone(), vec![Atom::ZetaPrimeRatio(n + 1)])
            .add(&SymValue::term(-&c, vec![Atom::Log2Pi]))
            .add(&SymValue::term(-&c, vec![Atom::EulerGamma]))
    }
}

/// bₙ = aₙ - (1/(n+1)) Σ_{k=1}^{n+1} C(n+1,k)·B_{n+1-k}/k; the subtracted
/// sum is a pure rational.
pub fn b_seq(n: u32) -> SymValue {
    let mut s = Rational::zero();
    for k in 1..=(n + 1) {
        s += binom(n as i64 + 1, k as i64).unwrap() * bernoulli_number(n + 1 - k)
            / Rational::from_integer(BigInt::from(k));
    }
    a_seq(n).add_rational(&(-s / Rational::from_integer(BigInt::from(n + 1))))
}

/// ∫₀¹ Bₙ(x)·log Γ(x+1) dx = bₙ.
pub fn loggamma_integral_bernoulli(n: u32) -> SymValue {
    b_seq(n)
}

/// ∫₀¹ xⁿ·log Γ(x+1) dx = -1/(n+1)² + (1/(n+1)) Σ_{k=0}^{n} C(n+1,k)·aₖ.
pub fn loggamma_integral_monomial(n: u32) -> SymValue {
    let np1 = Rational::from_integer(BigInt::from(n + 1));
    let mut acc = SymValue::from_rational(-(&np1 * &np1).recip());
    for k in 0..=n {
        let c = binom(n as i64 + 1, k as i64).unwrap() / &np1;
        acc = acc.add(&a_seq(k).scale(&c));
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrigKind {
    Sine,
    Cosine,
}

/// The two trigonometric log Γ integrals:
/// sine → Ci(2π)/(2π), cosine → 1/4 - Si(2π)/(2π).
pub fn loggamma_integral_trig(kind: TrigKind) -> SymValue {
    match kind {
        TrigKind::Sine => SymValue::term(rat(1, 2), vec![Atom::Pi(-1), Atom::CiTwoPi]),
        TrigKind::Cosine => SymValue::from_rational(rat(1, 4))
            .add(&SymValue::term(rat(-1, 2), vec![Atom::Pi(-1), Atom::SiTwoPi])),
    }
}

/// Evaluate a symbolic value numerically (alias of [`SymValue::eval`] at the
/// operation level).
pub fn eval_sym(v: &SymValue, prec: Precision) -> Result<Real> {
    v.eval(prec)
}

//! Exact Bernoulli numbers and polynomials, conversions between the monomial
//! and Bernoulli bases, the Bernoulli-basis expansion of `xᵐ(1-x)ᵐ` together
//! with its derivatives and boundary values, and shifted Legendre polynomials.
//!
//! The expansion of `fₘ(x) = xᵐ(1-x)ᵐ` is
//!
//! ```text
//! fₘ(x) = 1/((2m+1)·C(2m,m)) + (-1)ᵐ Σ_{j=m+1}^{2m} (1+(-1)ʲ)/j · C(m, j-m-1) · Bⱼ(x)
//! ```
//!
//! so only even-index Bernoulli polynomials appear. Everything here is exact.

use crate::exactmath::{binom, factorial, int, Poly, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::sync::Mutex;

static BERNOULLI_CACHE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Bernoulli number Bₙ (B₁ = -1/2 convention), from the recurrence
/// Σ_{k=0}^{m} C(m+1,k)·Bₖ = 0 for m ≥ 1. Cached; the cache is append-only
/// and never changes a previously returned value.
pub fn bernoulli_number(n: u32) -> Rational {
    let mut cache = BERNOULLI_CACHE.lock().unwrap();
    if cache.is_empty() {
        cache.push(Rational::one());
    }
    while cache.len() <= n as usize {
        let m = cache.len();
        if m > 1 && m % 2 == 1 {
            cache.push(Rational::zero());
            continue;
        }
        let mut acc = Rational::zero();
        for (k, b) in cache.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            acc += binom(m as i64 + 1, k as i64).unwrap() * b;
        }
        let bm = -acc / Rational::from_integer(BigInt::from(m as u64 + 1));
        cache.push(bm);
    }
    cache[n as usize].clone()
}

/// Bernoulli polynomial Bₙ(x) = Σₖ C(n,k)·B_{n-k}·xᵏ in the monomial basis.
pub fn bernoulli_poly(n: u32) -> Poly {
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        coeffs.push(binom(n as i64, k as i64).unwrap() * bernoulli_number(n - k));
    }
    Poly::from_coeffs(coeffs)
}

/// Polynomial in the Bernoulli basis: `coeffs[j]` multiplies Bⱼ(x).
///
/// Since B₀(x) = 1, `coeffs[0]` is the constant term of the expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliBasisPoly {
    coeffs: Vec<Rational>,
}

impl BernoulliBasisPoly {
    pub fn zero() -> Self {
        BernoulliBasisPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut b = BernoulliBasisPoly { coeffs };
        while b.coeffs.last().is_some_and(|c| c.is_zero()) {
            b.coeffs.pop();
        }
        b
    }

    /// Coefficient of Bⱼ(x).
    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The coefficient of B₀, i.e. the constant of the expansion.
    pub fn constant(&self) -> Rational {
        self.coeff(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Convert back to the monomial basis.
    pub fn to_poly(&self) -> Poly {
        let mut acc = Poly::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&bernoulli_poly(j as u32).scale(c));
        }
        acc
    }
}

/// Expansion of xⁿ in the Bernoulli basis:
/// xⁿ = (1/(n+1)) Σ_{j=0}^{n} C(n+1,j)·Bⱼ(x).
pub fn monomial_to_bernoulli(n: u32) -> BernoulliBasisPoly {
    let inv = Rational::new(BigInt::one(), BigInt::from(n as u64 + 1));
    let coeffs = (0..=n)
        .map(|j| binom(n as i64 + 1, j as i64).unwrap() * &inv)
        .collect();
    BernoulliBasisPoly::from_coeffs(coeffs)
}

/// Linear extension of [`monomial_to_bernoulli`] to an arbitrary polynomial.
/// Round-trips exactly with [`BernoulliBasisPoly::to_poly`].
pub fn poly_to_bernoulli(p: &Poly) -> BernoulliBasisPoly {
    let deg = match p.degree() {
        None => return BernoulliBasisPoly::zero(),
        Some(d) => d,
    };
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (n, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let expansion = monomial_to_bernoulli(n as u32);
        for (j, e) in expansion.coeffs().iter().enumerate() {
            coeffs[j] += c * e;
        }
    }
    BernoulliBasisPoly::from_coeffs(coeffs)
}

/// Bernoulli-basis expansion of fₘ(x) = xᵐ(1-x)ᵐ, m ≥ 1.
///
/// Only B₀ and even Bⱼ with m < j ≤ 2m appear; the factor (1+(-1)ʲ) kills
/// every odd index.
pub fn expand_sympower(m: u32) -> BernoulliBasisPoly {
    assert!(m >= 1, "expand_sympower requires m >= 1");
    let mi = m as i64;
    let mut coeffs = vec![Rational::zero(); 2 * m as usize + 1];
    coeffs[0] = Rational::one()
        / (Rational::from_integer(BigInt::from(2 * m as u64 + 1)) * binom(2 * mi, mi).unwrap());
    let sign = if m.is_multiple_of(2) { int(1) } else { int(-1) };
    for j in (m + 1)..=(2 * m) {
        if j % 2 == 1 {
            continue;
        }
        let c = &sign * int(2) / int(j as i64) * binom(mi, j as i64 - mi - 1).unwrap();
        coeffs[j as usize] = c;
    }
    BernoulliBasisPoly::from_coeffs(coeffs)
}

/// Bernoulli-basis expansion of the k-th derivative of fₘ(x) = xᵐ(1-x)ᵐ:
///
/// ```text
/// fₘ⁽ᵏ⁾(x) = (-1)ᵐ k! Σ_{j=max(k,m+1)}^{2m} (1+(-1)ʲ)/j · C(m,j-m-1) · C(j,k) · B_{j-k}(x)
/// ```
///
/// `k = 0` returns the plain expansion; `k > 2m` is the zero polynomial and
/// returns the empty expansion.
pub fn sympower_derivative(m: u32, k: u32) -> BernoulliBasisPoly {
    assert!(m >= 1, "sympower_derivative requires m >= 1");
    if k == 0 {
        return expand_sympower(m);
    }
    if k > 2 * m {
        return BernoulliBasisPoly::zero();
    }
    let mi = m as i64;
    let kf = Rational::from_integer(factorial(k as u64));
    let sign = if m.is_multiple_of(2) { int(1) } else { int(-1) };
    let mut coeffs = vec![Rational::zero(); (2 * m - k) as usize + 1];
    for j in k.max(m + 1)..=(2 * m) {
        if j % 2 == 1 {
            continue;
        }
        let c = &sign * &kf * int(2) / int(j as i64)
            * binom(mi, j as i64 - mi - 1).unwrap()
            * binom(j as i64, k as i64).unwrap();
        coeffs[(j - k) as usize] = c;
    }
    BernoulliBasisPoly::from_coeffs(coeffs)
}

/// `(fₘ⁽ʲ⁾(0), fₘ⁽ʲ⁾(1))`, exactly.
///
/// Zero for j < m and j > 2m; for m ≤ j ≤ 2m the pair is ((-1)ʲ·s, s) with
/// s = (-1)ᵐ·j!·C(m, j-m).
pub fn sympower_boundary(m: u32, j: u32) -> (Rational, Rational) {
    assert!(m >= 1, "sympower_boundary requires m >= 1");
    if j < m || j > 2 * m {
        return (Rational::zero(), Rational::zero());
    }
    let sign = if m.is_multiple_of(2) { int(1) } else { int(-1) };
    let s = sign
        * Rational::from_integer(factorial(j as u64))
        * binom(m as i64, j as i64 - m as i64).unwrap();
    let at0 = if j.is_multiple_of(2) { s.clone() } else { -s.clone() };
    (at0, s)
}

/// Shifted Legendre polynomial 𝒫ₘ(x) = Pₘ(2x-1) by the Rodrigues formula
/// 𝒫ₘ(x) = ((-1)ᵐ/m!)·(d/dx)ᵐ[xᵐ(1-x)ᵐ].
pub fn shifted_legendre(m: u32) -> Poly {
    let f = Poly::sympower(m).nth_derivative(m);
    let sign = if m.is_multiple_of(2) { int(1) } else { int(-1) };
    f.scale(&(sign / Rational::from_integer(factorial(m as u64))))
}

/// The same polynomial from its displayed Bernoulli-coefficient form,
/// 𝒫ₘ(x) = Σ_{j=1}^{m} (1+(-1)^{m+j})·(m+j-1)!/(j!(j-1)!(m-j+1)!)·Bⱼ(x)
/// for m ≥ 1 (m = 0 is the constant 1). Must agree exactly with
/// [`shifted_legendre`].
pub fn shifted_legendre_bernoulli_form(m: u32) -> BernoulliBasisPoly {
    if m == 0 {
        return BernoulliBasisPoly::from_coeffs(vec![Rational::one()]);
    }
    let mut coeffs = vec![Rational::zero(); m as usize + 1];
    for j in 1..=m {
        if (m + j) % 2 == 1 {
            continue;
        }
        let num = int(2) * Rational::from_integer(factorial((m + j - 1) as u64));
        let den = Rational::from_integer(
            factorial(j as u64) * factorial(j as u64 - 1) * factorial((m - j + 1) as u64),
        );
        coeffs[j as usize] = num / den;
    }
    BernoulliBasisPoly::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn bernoulli_numbers() {
        assert_eq!(bernoulli_number(0), int(1));
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(4), rat(-1, 30));
        for k in 1..=14 {
            assert_eq!(bernoulli_number(2 * k + 1), int(0));
        }
    }

    #[test]
    fn recurrence_footnote_identity() {
        // Σ_{k=0}^{m} C(m+1,k)·Bₖ is 1 for m = 0 and 0 for 1 ≤ m ≤ 30
        for m in 0..=30i64 {
            let mut acc = Rational::zero();
            for k in 0..=m {
                acc += binom(m + 1, k).unwrap() * bernoulli_number(k as u32);
            }
            let expect = if m == 0 { int(1) } else { int(0) };
            assert_eq!(acc, expect, "failed at m={m}");
        }
    }

    #[test]
    fn bernoulli_polys() {
        assert_eq!(bernoulli_poly(0), Poly::one());
        assert_eq!(bernoulli_poly(1), Poly::from_coeffs(vec![rat(-1, 2), int(1)]));
        assert_eq!(bernoulli_poly(2).evaluate(&int(0)), rat(1, 6));
    }

    #[test]
    fn boundary_symmetry() {
        // Bₙ(0) = (-1)ⁿ·Bₙ(1) = Bₙ for n ≤ 30
        for n in 0..=30u32 {
            let p = bernoulli_poly(n);
            let b = bernoulli_number(n);
            assert_eq!(p.evaluate(&int(0)), b);
            let sign = if n % 2 == 0 { int(1) } else { int(-1) };
            assert_eq!(sign * p.evaluate(&int(1)), b);
        }
    }

    #[test]
    fn appell_derivatives() {
        // Bₙ⁽ᵏ⁾(x) = n!/(n-k)!·B_{n-k}(x) for n ≤ 30 (every k ≤ n)
        for n in 0..=30u32 {
            let p = bernoulli_poly(n);
            for k in 0..=n {
                let lhs = p.nth_derivative(k);
                let c = Rational::new(factorial(n as u64), factorial((n - k) as u64));
                let rhs = bernoulli_poly(n - k).scale(&c);
                assert_eq!(lhs, rhs, "failed at n={n} k={k}");
            }
        }
    }

    #[test]
    fn monomial_conversion() {
        let e0 = monomial_to_bernoulli(0);
        assert_eq!(e0.coeffs(), &[int(1)]);
        let e1 = monomial_to_bernoulli(1);
        assert_eq!(e1.coeffs(), &[rat(1, 2), int(1)]);
        assert_eq!(e1.to_poly(), Poly::monomial(int(1), 1));
        let e3 = monomial_to_bernoulli(3);
        assert_eq!(e3.coeffs(), &[rat(1, 4), int(1), rat(3, 2), int(1)]);
        assert_eq!(e3.to_poly(), Poly::monomial(int(1), 3));
    }

    #[test]
    fn poly_conversion_round_trip() {
        assert!(poly_to_bernoulli(&Poly::zero()).is_zero());
        // x - 1/2 is exactly B₁(x)
        let p = Poly::from_coeffs(vec![rat(-1, 2), int(1)]);
        assert_eq!(poly_to_bernoulli(&p).coeffs(), &[int(0), int(1)]);
        // x(1-x) = 1/6 - B₂(x)
        let q = Poly::sympower(1);
        assert_eq!(poly_to_bernoulli(&q).coeffs(), &[rat(1, 6), int(0), int(-1)]);
        for p in [
            Poly::from_coeffs(vec![rat(3, 7), int(-2), rat(5, 3), int(0), int(9)]),
            Poly::sympower(4),
            bernoulli_poly(11),
        ] {
            assert_eq!(poly_to_bernoulli(&p).to_poly(), p);
        }
    }

    #[test]
    fn sympower_expansion_small() {
        let e1 = expand_sympower(1);
        assert_eq!(e1.coeffs(), &[rat(1, 6), int(0), int(-1)]);
        assert_eq!(e1.to_poly(), Poly::sympower(1));
        let e2 = expand_sympower(2);
        assert_eq!(e2.coeffs(), &[rat(1, 30), int(0), int(0), int(0), int(1)]);
        assert_eq!(e2.to_poly(), Poly::sympower(2));
    }

    #[test]
    fn sympower_expansion_exact_to_m20() {
        for m in 1..=20 {
            let e = expand_sympower(m);
            assert_eq!(e.to_poly(), Poly::sympower(m), "failed at m={m}");
            for (j, c) in e.coeffs().iter().enumerate() {
                if j % 2 == 1 {
                    assert!(c.is_zero(), "odd coefficient at m={m} j={j}");
                }
            }
        }
    }

    #[test]
    fn sympower_derivative_matches_poly_derivative() {
        assert_eq!(
            sympower_derivative(1, 2).coeffs(),
            &[int(-2)],
            "second derivative of x - x^2"
        );
        assert_eq!(sympower_derivative(1, 1).coeffs(), &[int(0), int(-2)]);
        assert_eq!(sympower_derivative(2, 4).coeffs(), &[int(24)]);
        assert!(sympower_derivative(2, 5).is_zero());
        for m in 1..=10u32 {
            let f = Poly::sympower(m);
            for k in 1..=2 * m {
                assert_eq!(
                    sympower_derivative(m, k).to_poly(),
                    f.nth_derivative(k),
                    "failed at m={m} k={k}"
                );
            }
        }
    }

    #[test]
    fn boundary_values() {
        assert_eq!(sympower_boundary(2, 1), (int(0), int(0)));
        assert_eq!(sympower_boundary(1, 1), (int(1), int(-1)));
        assert_eq!(sympower_boundary(1, 2), (int(-2), int(-2)));
        for m in 1..=10u32 {
            let f = Poly::sympower(m);
            for j in 0..=(2 * m + 2) {
                let d = f.nth_derivative(j);
                let (at0, at1) = sympower_boundary(m, j);
                assert_eq!(at0, d.evaluate(&int(0)), "at 0, m={m} j={j}");
                assert_eq!(at1, d.evaluate(&int(1)), "at 1, m={m} j={j}");
            }
        }
    }

    #[test]
    fn legendre_small() {
        assert_eq!(shifted_legendre(0), Poly::one());
        assert_eq!(shifted_legendre(1), Poly::from_coeffs(vec![int(-1), int(2)]));
        assert_eq!(
            shifted_legendre(2),
            Poly::from_coeffs(vec![int(1), int(-6), int(6)])
        );
    }

    #[test]
    fn legendre_both_constructions_agree() {
        for m in 0..=15u32 {
            assert_eq!(
                shifted_legendre(m),
                shifted_legendre_bernoulli_form(m).to_poly(),
                "failed at m={m}"
            );
        }
    }

    #[test]
    fn legendre_orthogonality() {
        // ∫₀¹ 𝒫ᵢ𝒫ⱼ dx = δᵢⱼ/(2i+1), exactly
        let ps: Vec<Poly> = (0..=8).map(shifted_legendre).collect();
        for (i, pi) in ps.iter().enumerate() {
            for (j, pj) in ps.iter().enumerate() {
                let v = pi.mul(pj).integrate_01();
                let expect = if i == j {
                    rat(1, 2 * i as i64 + 1)
                } else {
                    int(0)
                };
                assert_eq!(v, expect, "failed at ({i},{j})");
            }
        }
    }
}

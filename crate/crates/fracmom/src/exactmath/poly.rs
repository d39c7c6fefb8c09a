//! Exact polynomials over [`Rational`] in the monomial basis.

use super::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Polynomial with exact rational coefficients; `coeffs[i]` multiplies `xⁱ`.
///
/// Normal form: no trailing zero coefficients, so the zero polynomial is the
/// empty coefficient vector and `degree()` is `None` for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly { coeffs: vec![c] }.normalized()
    }

    /// The monomial c·xⁿ.
    pub fn monomial(c: Rational, n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = c;
        Poly { coeffs }.normalized()
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        Poly { coeffs }.normalized()
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of xⁱ (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        Poly { coeffs }.normalized()
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly { coeffs }.normalized()
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
            .collect();
        Poly { coeffs }.normalized()
    }

    pub fn nth_derivative(&self, n: u32) -> Poly {
        let mut p = self.clone();
        for _ in 0..n {
            if p.is_zero() {
                break;
            }
            p = p.derivative();
        }
        p
    }

    /// Exact evaluation at a rational point (Horner).
    pub fn evaluate(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact ∫₀¹ p(x) dx.
    pub fn integrate_01(&self) -> Rational {
        let mut acc = Rational::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += c / Rational::from_integer(BigInt::from(i as u64 + 1));
        }
        acc
    }

    /// x(1-x)·…: the symmetric power xᵐ(1-x)ᵐ.
    pub fn sympower(m: u32) -> Poly {
        let x = Poly::monomial(Rational::one(), 1);
        let one_minus_x = Poly::one().sub(&x);
        x.pow(m).mul(&one_minus_x.pow(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    #[test]
    fn derivative_of_square() {
        let p = Poly::monomial(int(1), 2);
        assert_eq!(p.derivative(), Poly::monomial(int(2), 1));
    }

    #[test]
    fn evaluate_vertex() {
        // x(1-x) at 1/2 -> 1/4
        let p = Poly::sympower(1);
        assert_eq!(p.evaluate(&rat(1, 2)), rat(1, 4));
    }

    #[test]
    fn binomial_expansion() {
        // x·(1-x)^2 = x - 2x^2 + x^3
        let x = Poly::monomial(int(1), 1);
        let q = Poly::one().sub(&x).pow(2).mul(&x);
        assert_eq!(
            q,
            Poly::from_coeffs(vec![int(0), int(1), int(-2), int(1)])
        );
    }

    #[test]
    fn zero_degree_conventions() {
        assert_eq!(Poly::zero().degree(), None);
        assert!(Poly::from_coeffs(vec![int(0), int(0)]).is_zero());
        assert_eq!(Poly::one().degree(), Some(0));
        assert_eq!(Poly::zero().nth_derivative(3), Poly::zero());
    }

    #[test]
    fn integrate_unit_interval() {
        // ∫₀¹ (1 - 3x²) dx = 0
        let p = Poly::from_coeffs(vec![int(1), int(0), int(-3)]);
        assert_eq!(p.integrate_01(), int(0));
        assert_eq!(Poly::sympower(1).integrate_01(), rat(1, 6));
    }
}

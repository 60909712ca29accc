//! Dense univariate polynomials over ℚ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::algebra::{format_rational, int, Rational};

/// `coefficients[d]` is the coefficient of `x^d`; trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RationalPolynomial {
    coefficients: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coefficients(vec![c])
    }

    pub fn from_coefficients(coefficients: Vec<Rational>) -> Self {
        let mut p = Self { coefficients };
        p.trim();
        p
    }

    /// `x + shift`.
    pub fn linear(shift: i64) -> Self {
        Self::from_coefficients(vec![int(shift), Rational::one()])
    }

    fn trim(&mut self) {
        while self.coefficients.last().is_some_and(Zero::is_zero) {
            self.coefficients.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn coefficient(&self, d: usize) -> Rational {
        self.coefficients.get(d).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coefficients.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        self.eval(&int(x))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coefficients(self.coefficients.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Product of `(x + shift)` over the given shifts.
    pub fn product_of_linears(shifts: impl IntoIterator<Item = i64>) -> Self {
        shifts.into_iter().fold(Self::one(), |acc, s| &acc * &Self::linear(s))
    }
}

impl Add<&RationalPolynomial> for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn add(self, other: &RationalPolynomial) -> RationalPolynomial {
        let len = self.coefficients.len().max(other.coefficients.len());
        RationalPolynomial::from_coefficients((0..len).map(|d| self.coefficient(d) + other.coefficient(d)).collect())
    }
}

impl Sub<&RationalPolynomial> for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn sub(self, other: &RationalPolynomial) -> RationalPolynomial {
        let len = self.coefficients.len().max(other.coefficients.len());
        RationalPolynomial::from_coefficients((0..len).map(|d| self.coefficient(d) - other.coefficient(d)).collect())
    }
}

impl Mul<&RationalPolynomial> for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn mul(self, other: &RationalPolynomial) -> RationalPolynomial {
        if self.is_zero() || other.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::from_coefficients(out)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::from_coefficients(self.coefficients.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| format!("({})x^{d}", format_rational(c)))
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;

    #[test]
    fn ring_operations() {
        let p = RationalPolynomial::linear(1); // x + 1
        let q = RationalPolynomial::linear(-1); // x - 1
        let prod = &p * &q;
        assert_eq!(prod, RationalPolynomial::from_coefficients(vec![int(-1), int(0), int(1)]));
        assert_eq!(prod.degree(), Some(2));
        assert!((&prod - &prod).is_zero());
        assert_eq!((&prod - &prod).degree(), None);
        assert_eq!(prod.eval(&ratio(1, 2)), ratio(-3, 4));
        assert_eq!(p.pow(3).coefficient(1), int(3));
        assert_eq!(RationalPolynomial::product_of_linears([1, 2, 3]).eval_int(0), int(6));
    }
}

//! Finite sums of monomials `z^n z̄^m` with Gaussian-rational coefficients.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::gauss::{ratio, GaussianRational, Rational};

/// The monomial `z^n z̄^m`. Ordered lexicographically by `(n, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub n: u32,
    pub m: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { n: 0, m: 0 };

    pub const fn new(n: u32, m: u32) -> Self {
        Self { n, m }
    }

    /// `n - m`; monomials with different offsets are orthogonal.
    pub fn offset(self) -> i64 {
        i64::from(self.n) - i64::from(self.m)
    }

    pub fn swap(self) -> Self {
        Self { n: self.m, m: self.n }
    }

    pub fn is_harmonic(self) -> bool {
        self.n == 0 || self.m == 0
    }

    pub fn times(self, other: Monomial) -> Monomial {
        Monomial { n: self.n + other.n, m: self.m + other.m }
    }
}

/// `⟨z^n z̄^m, z^k z̄^l⟩` on the normalized disk: `2/(n+m+k+l+2)` when the
/// offsets agree, zero otherwise.
pub fn monomial_inner(a: Monomial, b: Monomial) -> Rational {
    if a.offset() != b.offset() {
        return Rational::zero();
    }
    let total = i64::from(a.n) + i64::from(a.m) + i64::from(b.n) + i64::from(b.m) + 2;
    ratio(2, total)
}

/// A finitely supported map from monomials to nonzero coefficients.
///
/// Zero coefficients are never stored, so `==` decides equality of the
/// underlying functions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn monomial(n: u32, m: u32) -> Self {
        Self::term(GaussianRational::from_int(1), Monomial::new(n, m))
    }

    pub fn term(c: GaussianRational, mono: Monomial) -> Self {
        let mut e = Self::zero();
        e.add_term(mono, &c);
        e
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, GaussianRational)>,
    {
        let mut e = Self::zero();
        for (mono, c) in terms {
            e.add_term(mono, &c);
        }
        e
    }

    /// Adds `c · mono`, merging with an existing term and dropping zeros.
    pub fn add_term(&mut self, mono: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: Monomial) -> GaussianRational {
        self.terms.get(&mono).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// True when every monomial has `n = 0` or `m = 0`.
    pub fn is_harmonic(&self) -> bool {
        self.terms.keys().all(|mono| mono.is_harmonic())
    }

    /// The value when the element is a constant (possibly zero).
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    /// Largest exponent appearing in either variable.
    pub fn max_exponent(&self) -> u32 {
        self.terms.keys().map(|mono| mono.n.max(mono.m)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &GaussianRational) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// Pointwise complex conjugate: `z^n z̄^m ↦ z^m z̄^n`, coefficients conjugated.
    pub fn conjugate(&self) -> Element {
        Element { terms: self.terms.iter().map(|(k, v)| (k.swap(), v.conj())).collect() }
    }

    pub fn multiply(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                out.add_term(ka.times(*kb), &(va * vb));
            }
        }
        out
    }

    /// `⟨self, other⟩`, linear in `self` and conjugate-linear in `other`.
    pub fn inner(&self, other: &Element) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let w = monomial_inner(*ka, *kb);
                if !w.is_zero() {
                    acc += &(va * &vb.conj()).scale(&w);
                }
            }
        }
        acc
    }

    /// `‖self‖²` as a rational.
    pub fn norm_sqr(&self) -> Rational {
        self.inner(self).re
    }
}

pub fn inner_product(f: &Element, g: &Element) -> GaussianRational {
    f.inner(g)
}

pub fn multiply(f: &Element, g: &Element) -> Element {
    f.multiply(g)
}

pub fn conjugate(f: &Element) -> Element {
    f.conjugate()
}

impl Add<&Element> for &Element {
    type Output = Element;

    fn add(self, other: &Element) -> Element {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(*k, v);
        }
        out
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;

    fn sub(self, other: &Element) -> Element {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(*k, &-v);
        }
        out
    }
}

impl Mul<&Element> for &Element {
    type Output = Element;

    fn mul(self, other: &Element) -> Element {
        self.multiply(other)
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        Element { terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect() }
    }
}

impl Add for Element {
    type Output = Element;

    fn add(self, other: Element) -> Element {
        &self + &other
    }
}

impl Sub for Element {
    type Output = Element;

    fn sub(self, other: Element) -> Element {
        &self - &other
    }
}

//! Closed forms and polynomial identities behind the normality criteria,
//! written as plain rational arithmetic so they can be checked against the
//! operator engine.

pub mod poly;

use num_traits::Zero;

pub use poly::RationalPolynomial;

use crate::algebra::{
    complement_project, harmonic_constant, int, ratio, Element, GaussianRational, Monomial, Rational,
};
use crate::engine::{commutator_apply, fk_weight};
use crate::error::{Error, Result};

fn require_index_above(k: u32, exponents: &[u32]) -> Result<()> {
    let max = exponents.iter().copied().max().unwrap_or(0);
    if k == 0 || k <= max {
        return Err(Error::IndexOutOfRange { k, max });
    }
    Ok(())
}

fn require_positive(exponents: &[u32]) -> Result<()> {
    if exponents.contains(&0) {
        return Err(Error::NonPositiveExponent);
    }
    Ok(())
}

/// Three-term closed form of `S_{z^n z̄^m} f_k`, valid for `k > max(n, m)`:
///
/// `z^(n+k) z̄^(m+1) - (k/(k+1)) z^(n+k-1) z̄^m - n(n+k-m)/((k+1)(n+k)(n+k+1)) z^(n+k-m-1)`.
pub fn closed_form_apply(n: u32, m: u32, k: u32) -> Result<Element> {
    require_index_above(k, &[n, m])?;
    let (ni, mi, ki) = (i64::from(n), i64::from(m), i64::from(k));
    let mut out = Element::monomial(n + k, m + 1);
    out.add_term(Monomial::new(n + k - 1, m), &(-GaussianRational::real(fk_weight(k))));
    let tail = ratio(-ni * (ni + ki - mi), (ki + 1) * (ni + ki) * (ni + ki + 1));
    out.add_term(Monomial::new(n + k - m - 1, 0), &GaussianRational::real(tail));
    Ok(out)
}

/// One half of the monomial self-commutator closed form:
/// `n²(n+k-m) / ((k+1)²(n+k)²(n+k+1)²)`.
fn monomial_norm_excess(n: i64, m: i64, k: i64) -> Rational {
    let den = (k + 1) * (n + k) * (n + k + 1);
    ratio(n * n * (n + k - m), 1) / int(den * den)
}

/// `‖S f_k‖² - ‖S* f_k‖²` for `S = S_{z^n z̄^m}`, `k > max(n, m)`.
pub fn closed_form_q(n: u32, m: u32, k: u32) -> Result<Rational> {
    require_index_above(k, &[n, m])?;
    let (ni, mi, ki) = (i64::from(n), i64::from(m), i64::from(k));
    Ok(monomial_norm_excess(mi, ni, ki) - monomial_norm_excess(ni, mi, ki))
}

/// `‖S f_k‖² - ‖S* f_k‖²` for `φ = z^n1 z̄^m1 + α z^n2 z̄^m2`,
/// `k > max(n1, m1, n2, m2)`.
///
/// The two monomial images are orthogonal unless `n1 - m1 = n2 - m2`, in
/// which case the real cross terms weighted by `α + ᾱ` are added.
pub fn two_monomial_q(n1: u32, m1: u32, n2: u32, m2: u32, alpha: &GaussianRational, k: u32) -> Result<Rational> {
    require_index_above(k, &[n1, m1, n2, m2])?;
    let s = alpha.norm_sqr();
    let mut value = closed_form_q(n1, m1, k)? + &s * closed_form_q(n2, m2, k)?;
    let [n1, m1, n2, m2, k] = [n1, m1, n2, m2, k].map(i64::from);
    if n1 - m1 == n2 - m2 {
        let trace = &alpha.re * int(2);
        let forward =
            ratio(-n1 * n2 * (n2 + k - m2), (k + 1) * (k + 1) * (n1 + k) * (n1 + k + 1) * (n2 + k) * (n2 + k + 1));
        let backward =
            ratio(m1 * m2 * (m2 + k - n2), (k + 1) * (k + 1) * (m1 + k) * (m1 + k + 1) * (m2 + k) * (m2 + k + 1));
        value += trace * (forward + backward);
    }
    Ok(value)
}

/// `p(x) = n²(n+x-m)(m+x)²(m+x+1)² - m²(m+x-n)(n+x)²(n+x+1)²`.
///
/// Vanishing of `p` at every admissible `k` is the monomial normality
/// condition; `p` is the zero polynomial exactly when `n = m`.
pub fn balance_polynomial(n: u32, m: u32) -> RationalPolynomial {
    let (n, m) = (i64::from(n), i64::from(m));
    let left = &RationalPolynomial::linear(n - m).scale(&int(n * n))
        * &RationalPolynomial::product_of_linears([m, m, m + 1, m + 1]);
    let right = &RationalPolynomial::linear(m - n).scale(&int(m * m))
        * &RationalPolynomial::product_of_linears([n, n, n + 1, n + 1]);
    &left - &right
}

/// Which of the four rational terms of the two-monomial balance equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BalanceTerm {
    /// `n1²(n1+k-m1)/((n1+k)²(n1+k+1)²)`
    A,
    /// `n2²(n2+k-m2)/((n2+k)²(n2+k+1)²)`
    B,
    /// `m1²(m1+k-n1)/((m1+k)²(m1+k+1)²)`
    C,
    /// `m2²(m2+k-n2)/((m2+k)²(m2+k+1)²)`
    D,
}

impl BalanceTerm {
    pub const ALL: [BalanceTerm; 4] = [BalanceTerm::A, BalanceTerm::B, BalanceTerm::C, BalanceTerm::D];
}

/// Exponents of `φ = z^n1 z̄^m1 + α z^n2 z̄^m2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairExponents {
    pub n1: u32,
    pub m1: u32,
    pub n2: u32,
    pub m2: u32,
}

impl PairExponents {
    pub fn new(n1: u32, m1: u32, n2: u32, m2: u32) -> Self {
        Self { n1, m1, n2, m2 }
    }

    fn slots(self) -> [i64; 4] {
        [self.n1, self.n2, self.m1, self.m2].map(i64::from)
    }

    /// `(numerator exponent, partner exponent, slot)` of a term; the slot is
    /// the factor pair of `G` cancelled by that term's denominator.
    fn term_shape(self, term: BalanceTerm) -> (i64, i64, usize) {
        let [n1, n2, m1, m2] = self.slots();
        match term {
            BalanceTerm::A => (n1, m1, 0),
            BalanceTerm::B => (n2, m2, 1),
            BalanceTerm::C => (m1, n1, 2),
            BalanceTerm::D => (m2, n2, 3),
        }
    }

    /// `term(x)·G(x)` with the cancelled factors removed, where
    /// `G = [(n1+x)(n1+x+1)(n2+x)(n2+x+1)(m1+x)(m1+x+1)(m2+x)(m2+x+1)]²`.
    pub fn deflated_product(self, term: BalanceTerm) -> RationalPolynomial {
        let (p, q, slot) = self.term_shape(term);
        let slots = self.slots();
        let rest = (0..4).filter(|&i| i != slot).flat_map(|i| [slots[i], slots[i], slots[i] + 1, slots[i] + 1]);
        &RationalPolynomial::linear(p - q).scale(&int(p * p)) * &RationalPolynomial::product_of_linears(rest)
    }

    /// `G(x)` itself.
    pub fn clearing_polynomial(self) -> RationalPolynomial {
        RationalPolynomial::product_of_linears(self.slots().into_iter().flat_map(|j| [j, j, j + 1, j + 1]))
    }
}

/// `H(x) = F(x)G(x)` with `F = a + s·b - c - s·d`, expanded; `s = |α|²`.
pub fn cleared_polynomial(exps: PairExponents, s: &Rational) -> Result<RationalPolynomial> {
    require_positive(&[exps.n1, exps.m1, exps.n2, exps.m2])?;
    if s < &Rational::zero() {
        return Err(Error::NegativeParameter);
    }
    let [a, b, c, d] = BalanceTerm::ALL.map(|t| exps.deflated_product(t));
    Ok(&(&a + &b.scale(s)) - &(&c + &d.scale(s)))
}

/// One evaluation point where all but one deflated product must vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialPoint {
    pub x: i64,
    pub surviving: BalanceTerm,
    /// Deflated products at `x`, in `A, B, C, D` order.
    pub values: [Rational; 4],
}

impl SpecialPoint {
    pub fn holds(&self) -> bool {
        BalanceTerm::ALL
            .iter()
            .zip(&self.values)
            .all(|(t, v)| if *t == self.surviving { !v.is_zero() } else { v.is_zero() })
    }
}

/// Special points that apply to `exps`: `x = -n1-1` when `n1` is the
/// strict maximum, `x = -m2-1` when `m2` is, `x = -n2` when `n2` is the
/// strict minimum and `x = -m1` when `m1` is.
pub fn special_points(exps: PairExponents) -> Vec<SpecialPoint> {
    let PairExponents { n1, m1, n2, m2 } = exps;
    let mut cases = Vec::new();
    if n1 > n2.max(m1).max(m2) {
        cases.push((-i64::from(n1) - 1, BalanceTerm::A));
    }
    if m2 > n1.max(n2).max(m1) {
        cases.push((-i64::from(m2) - 1, BalanceTerm::D));
    }
    if n2 < n1.min(m1).min(m2) {
        cases.push((-i64::from(n2), BalanceTerm::B));
    }
    if m1 < n1.min(n2).min(m2) {
        cases.push((-i64::from(m1), BalanceTerm::C));
    }
    cases
        .into_iter()
        .map(|(x, surviving)| SpecialPoint {
            x,
            surviving,
            values: BalanceTerm::ALL.map(|t| exps.deflated_product(t).eval_int(x)),
        })
        .collect()
}

/// Both sides of the two-monomial balance equation at `k = 0`:
/// `(n1-m1)/(n1+1)² + s(n2-m2)/(n2+1)²` and
/// `-(n1-m1)/(m1+1)² - s(n2-m2)/(m2+1)²`.
pub fn k0_reduction_sides(exps: PairExponents, s: &Rational) -> Result<(Rational, Rational)> {
    require_positive(&[exps.n1, exps.m1, exps.n2, exps.m2])?;
    if s <= &Rational::zero() {
        return Err(Error::NegativeParameter);
    }
    let [n1, n2, m1, m2] = exps.slots();
    let sq = |x: i64| x * x;
    let lhs = ratio(n1 - m1, sq(n1 + 1)) + s * ratio(n2 - m2, sq(n2 + 1));
    let rhs = -ratio(n1 - m1, sq(m1 + 1)) - s * ratio(n2 - m2, sq(m2 + 1));
    Ok((lhs, rhs))
}

pub fn check_k0_reduction(exps: PairExponents, s: &Rational) -> Result<bool> {
    let (lhs, rhs) = k0_reduction_sides(exps, s)?;
    Ok(lhs == rhs)
}

/// `(m1-n1)·[|1/(n1+1) + α/(n2+1)|² + |1/(m1+1) + α/(m2+1)|²]`, defined
/// when `n1 - m1 = n2 - m2`.
pub fn equal_offset_k0_residual(exps: PairExponents, alpha: &GaussianRational) -> Result<Rational> {
    let [n1, n2, m1, m2] = exps.slots();
    if n1 - m1 != n2 - m2 {
        return Err(Error::OffsetMismatch);
    }
    let bracket = |p: i64, q: i64| {
        let v = &GaussianRational::from_ratio(1, p + 1) + &alpha.scale(&ratio(1, q + 1));
        v.norm_sqr()
    };
    Ok(int(m1 - n1) * (bracket(n1, n2) + bracket(m1, m2)))
}

/// For distinct `n, m ≥ 1`, with `f0 = |z|² - 1/2` and
/// `g = |z|^(2m) Q(|z|^(2n) f0) - |z|^(2n) Q(|z|^(2m) f0)`, returns
/// `((I - Q) g, Q g)`. `Q g` is constant for radial `g`.
pub fn radial_commutator_residual(n: u32, m: u32) -> Result<(Element, Rational)> {
    if n == m {
        return Err(Error::EqualExponents);
    }
    require_positive(&[n, m])?;
    let f0 = complement_project(&Element::monomial(1, 1));
    let radial = |p: u32| Element::monomial(p, p);
    let project = |e: &Element| crate::algebra::harmonic_project(e);
    let g = &radial(m).multiply(&project(&radial(n).multiply(&f0)))
        - &radial(n).multiply(&project(&radial(m).multiply(&f0)));
    let constant = harmonic_constant(&g).expect("harmonic part of a radial function is constant");
    debug_assert!(constant.is_real());
    Ok((complement_project(&g), constant.re))
}

/// `(n - m) / ((n+1)(n+2)(m+1)(m+2))`.
pub fn radial_commutator_constant(n: u32, m: u32) -> Rational {
    let (n, m) = (i64::from(n), i64::from(m));
    ratio(n - m, (n + 1) * (n + 2) * (m + 1) * (m + 2))
}

/// Checks `(S_ψ̄ S_φ̄ - S_φ̄ S_ψ̄) h = conj((S_ψ S_φ - S_φ S_ψ) conj h)`, the
/// identity that makes the commutator matrix antisymmetric after the swap
/// permutation.
pub fn commutator_conjugation_check(phi: &Element, psi: &Element, h: &Element) -> bool {
    let lhs = commutator_apply(&psi.conjugate(), &phi.conjugate(), h);
    let rhs = commutator_apply(psi, phi, &h.conjugate()).conjugate();
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{apply, make_fk, q_value};

    fn q(num: i64, den: i64) -> GaussianRational {
        GaussianRational::from_ratio(num, den)
    }

    #[test]
    fn closed_form_apply_examples() {
        let expected = Element::from_terms([
            (Monomial::new(3, 2), q(1, 1)),
            (Monomial::new(2, 1), q(-2, 3)),
            (Monomial::new(1, 0), q(-1, 18)),
        ]);
        assert_eq!(closed_form_apply(1, 1, 2).unwrap(), expected);
        let expected = Element::from_terms([
            (Monomial::new(5, 2), q(1, 1)),
            (Monomial::new(4, 1), q(-3, 4)),
            (Monomial::new(3, 0), q(-1, 15)),
        ]);
        assert_eq!(closed_form_apply(2, 1, 3).unwrap(), expected);
        assert!(closed_form_apply(2, 1, 2).is_err());
        assert!(closed_form_apply(0, 0, 0).is_err());
    }

    #[test]
    fn closed_form_apply_matches_engine_on_grid() {
        for n in 0..=6 {
            for m in 0..=6 {
                for k in n.max(m) + 1..=10 {
                    let fk = make_fk(i64::from(k)).unwrap();
                    assert_eq!(apply(&Element::monomial(n, m), &fk), closed_form_apply(n, m, k).unwrap());
                }
            }
        }
    }

    #[test]
    fn closed_form_q_examples() {
        for k in 2..12 {
            assert!(closed_form_q(1, 1, k).unwrap().is_zero());
        }
        assert_eq!(closed_form_q(2, 1, 3).unwrap(), ratio(-23, 28800));
        for (n, m) in [(2, 1), (4, 1), (3, 5)] {
            for k in 6..10 {
                assert_eq!(closed_form_q(n, m, k).unwrap(), -closed_form_q(m, n, k).unwrap());
            }
        }
        assert!(closed_form_q(3, 1, 3).is_err());
    }

    #[test]
    fn two_monomial_q_matches_engine() {
        let alphas = [
            GaussianRational::from_int(1),
            GaussianRational::i(),
            GaussianRational::new(int(1), int(1)),
            GaussianRational::from_int(-2),
        ];
        for n1 in 0..=3 {
            for m1 in 0..=3 {
                for n2 in 0..=3 {
                    for m2 in 0..=3 {
                        if (n1, m1) == (n2, m2) {
                            continue;
                        }
                        for alpha in &alphas {
                            let phi = &Element::monomial(n1, m1) + &Element::term(alpha.clone(), Monomial::new(n2, m2));
                            for k in n1.max(m1).max(n2).max(m2) + 1..=8 {
                                let fk = make_fk(i64::from(k)).unwrap();
                                assert_eq!(
                                    two_monomial_q(n1, m1, n2, m2, alpha, k).unwrap(),
                                    q_value(&phi, &fk),
                                    "({n1},{m1},{n2},{m2}) alpha={alpha} k={k}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn two_monomial_q_vanishes_in_normal_cases() {
        for k in 3..9 {
            assert!(two_monomial_q(1, 1, 2, 2, &q(-3, 2), k).unwrap().is_zero());
            let unit = GaussianRational::new(ratio(3, 5), ratio(4, 5));
            assert!(two_monomial_q(2, 1, 1, 2, &unit, k).unwrap().is_zero());
        }
    }

    #[test]
    fn balance_polynomial_properties() {
        for n in 0..=10 {
            for m in 0..=10 {
                let p = balance_polynomial(n, m);
                let (ni, mi) = (i64::from(n), i64::from(m));
                assert_eq!(p.coefficient(5), int(ni * ni - mi * mi));
                assert_eq!(p.is_zero(), n == m);
            }
        }
        let p = balance_polynomial(2, 1);
        assert!((3..=20).all(|k| !p.eval_int(k).is_zero()));
    }

    #[test]
    fn balance_polynomial_clears_closed_form_q() {
        // closed_form_q · (k+1)²(n+k)²(n+k+1)²(m+k)²(m+k+1)² = -p(k)
        for (n, m) in [(2u32, 1u32), (3, 1), (1, 4), (5, 5)] {
            let p = balance_polynomial(n, m);
            for k in n.max(m) + 1..=n.max(m) + 6 {
                let (ni, mi, ki) = (i64::from(n), i64::from(m), i64::from(k));
                let clear = (ki + 1) * (ni + ki) * (ni + ki + 1) * (mi + ki) * (mi + ki + 1);
                let cleared = closed_form_q(n, m, k).unwrap() * int(clear) * int(clear);
                assert_eq!(cleared, -p.eval_int(ki));
            }
        }
    }

    #[test]
    fn cleared_polynomial_examples() {
        let e = PairExponents::new(3, 1, 2, 4);
        let s = ratio(2, 3);
        let h = cleared_polynomial(e, &s).unwrap();
        assert_eq!(h.coefficient(13), int(9) + &s * int(4) - int(1) - &s * int(16));
        assert!(h.degree().unwrap() <= 13);

        assert!(cleared_polynomial(PairExponents::new(2, 1, 1, 2), &int(1)).unwrap().is_zero());
        assert!(!cleared_polynomial(PairExponents::new(2, 1, 1, 2), &int(2)).unwrap().is_zero());
        assert!(cleared_polynomial(PairExponents::new(0, 1, 1, 2), &int(1)).is_err());
        assert!(cleared_polynomial(PairExponents::new(2, 1, 1, 2), &int(-1)).is_err());
    }

    #[test]
    fn cleared_polynomial_is_f_times_g() {
        let e = PairExponents::new(4, 2, 1, 3);
        let s = ratio(5, 7);
        let h = cleared_polynomial(e, &s).unwrap();
        let g = e.clearing_polynomial();
        let [n1, n2, m1, m2] = [4i64, 1, 2, 3];
        let term =
            |p: i64, q: i64, k: i64| ratio(p * p * (p + k - q), 1) / int((p + k) * (p + k) * (p + k + 1) * (p + k + 1));
        for k in 5..12 {
            let f = term(n1, m1, k) + &s * term(n2, m2, k) - term(m1, n1, k) - &s * term(m2, n2, k);
            assert_eq!(h.eval_int(k), f * g.eval_int(k));
        }
    }

    #[test]
    fn special_point_example() {
        let pts = special_points(PairExponents::new(5, 2, 1, 3));
        assert!(pts.iter().any(|p| p.x == -6 && p.surviving == BalanceTerm::A));
        assert!(pts.iter().all(SpecialPoint::holds));
        // n1 = m2 and m1 = n2 admits no special point.
        assert!(special_points(PairExponents::new(3, 1, 1, 3)).is_empty());
    }

    #[test]
    fn k0_reduction_examples() {
        assert!(check_k0_reduction(PairExponents::new(2, 2, 3, 3), &int(5)).unwrap());
        let (lhs, rhs) = k0_reduction_sides(PairExponents::new(2, 1, 3, 1), &int(1)).unwrap();
        assert_ne!(lhs, rhs);
        assert!(lhs > Rational::zero() && rhs < Rational::zero());
        assert!(check_k0_reduction(PairExponents::new(2, 1, 3, 1), &int(0)).is_err());
    }

    #[test]
    fn k0_reduction_is_cleared_polynomial_at_zero() {
        for e in [PairExponents::new(2, 1, 3, 1), PairExponents::new(2, 2, 1, 1), PairExponents::new(3, 1, 1, 2)] {
            for s in [ratio(1, 2), int(1), int(3)] {
                let vanishes = cleared_polynomial(e, &s).unwrap().eval_int(0).is_zero();
                assert_eq!(check_k0_reduction(e, &s).unwrap(), vanishes);
            }
        }
    }

    #[test]
    fn equal_offset_residual_examples() {
        assert!(equal_offset_k0_residual(PairExponents::new(2, 2, 3, 3), &q(7, 3)).unwrap().is_zero());
        assert_eq!(equal_offset_k0_residual(PairExponents::new(2, 1, 3, 2), &q(1, 1)).unwrap(), ratio(-149, 144));
        assert_eq!(equal_offset_k0_residual(PairExponents::new(2, 1, 4, 2), &q(1, 1)), Err(Error::OffsetMismatch));
        // Vanishing with n1 ≠ m1 forces α = -(n2+1)/(n1+1) = -(m2+1)/(m1+1).
        assert!(equal_offset_k0_residual(PairExponents::new(3, 1, 3, 1), &q(-1, 1)).unwrap().is_zero());
        assert!(!equal_offset_k0_residual(PairExponents::new(3, 1, 4, 2), &q(-5, 4)).unwrap().is_zero());
    }

    #[test]
    fn radial_residual_examples() {
        let (rest, c) = radial_commutator_residual(2, 1).unwrap();
        assert_eq!(c, ratio(1, 72));
        assert!(!rest.is_zero());
        assert_eq!(radial_commutator_residual(1, 2).unwrap().1, ratio(-1, 72));
        assert_eq!(radial_commutator_residual(3, 3), Err(Error::EqualExponents));
    }

    #[test]
    fn conjugation_check_examples() {
        let z = Element::monomial(1, 0);
        let zb = Element::monomial(0, 1);
        let f2 = make_fk(2).unwrap();
        assert!(commutator_conjugation_check(&z, &z, &f2));
        assert!(commutator_conjugation_check(&z, &zb, &f2));
    }
}

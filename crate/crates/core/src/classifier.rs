//! Normality decisions for dual Toeplitz operators with polynomial symbols.
//!
//! For bounded symbols hyponormality and normality coincide, so a verdict is
//! one of normal, not hyponormal, or outside the classes with a proven
//! criterion. Symbols in the last group get exact evidence from the
//! restricted self-commutator matrices instead.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::algebra::{Element, GaussianRational, Monomial, Rational};
use crate::engine::{build_basis, q_value, selfcomm_form_on};
use crate::error::{Error, Result};
use crate::linalg::{psd_test, rank, ExactMatrix, HermitianForm, PsdOutcome};

/// Largest truncation order searched by default; enough to certify every
/// non-normal symbol with exponents at most 4 in the proven classes.
pub const DEFAULT_N_MAX: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Normal,
    NotHyponormal,
    OutsideProvenScope,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Normal => "Normal",
            Status::NotHyponormal => "NotHyponormal",
            Status::OutsideProvenScope => "OutsideProvenScope",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The condition that decided a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    ZeroSymbol,
    /// `a z^n z̄^n`.
    MonomialBalanced,
    /// `a z^n z̄^m`, `n ≠ m`.
    MonomialUnbalanced,
    /// `αφ + βφ̄` is constant for some `(α, β) ≠ (0, 0)`.
    HarmonicConjugateDependent,
    HarmonicIndependent,
    /// `n1 = m1 = n2 = m2`.
    TwoMonomialEqualRadial,
    /// `n1 = m1`, `n2 = m2` and `b/a` real.
    TwoMonomialRadialRealRatio,
    /// `n1 = m2`, `m1 = n2` and `|a| = |b|`.
    TwoMonomialSwappedEqualModulus,
    /// Positive exponents, none of the normal conditions.
    TwoMonomialNoCondition,
    /// Two monomials but some exponent is zero.
    TwoMonomialZeroExponent,
    OutsideProvenScope,
}

impl Rule {
    pub fn tag(self) -> &'static str {
        match self {
            Rule::ZeroSymbol => "zero-symbol",
            Rule::MonomialBalanced => "monomial:balanced",
            Rule::MonomialUnbalanced => "monomial:unbalanced",
            Rule::HarmonicConjugateDependent => "harmonic:conjugate-dependent",
            Rule::HarmonicIndependent => "harmonic:independent",
            Rule::TwoMonomialEqualRadial => "two-monomial:equal-radial",
            Rule::TwoMonomialRadialRealRatio => "two-monomial:radial-real-ratio",
            Rule::TwoMonomialSwappedEqualModulus => "two-monomial:swapped-equal-modulus",
            Rule::TwoMonomialNoCondition => "two-monomial:none",
            Rule::TwoMonomialZeroExponent => "two-monomial:zero-exponent",
            Rule::OutsideProvenScope => "outside-proven-scope",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A nonzero entry of a restricted self-commutator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixEntry {
    pub row: usize,
    pub col: usize,
    pub row_label: Monomial,
    pub col_label: Monomial,
    pub value: GaussianRational,
}

/// `f = Σ c_j e_j` with `‖S_φ f‖² - ‖S_φ* f‖² < 0`, checked by direct
/// evaluation rather than through the matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub coordinates: Vec<GaussianRational>,
    pub element: Element,
    pub q_value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Certificate {
    /// The matrix at `order` is nonzero, so `S_φ` is not normal.
    NotNormalCertified { order: u32, entry: MatrixEntry, witness: Option<Witness> },
    /// Every matrix up to this order vanished. Evidence, not proof.
    ZeroUpTo(u32),
}

impl Certificate {
    pub fn certifies_non_normal(&self) -> bool {
        matches!(self, Certificate::NotNormalCertified { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub rule: Rule,
    pub certificate: Option<Certificate>,
    pub note: Option<String>,
}

impl Verdict {
    fn symbolic(status: Status, rule: Rule) -> Self {
        Self { status, rule, certificate: None, note: None }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// `a z^n z̄^m` is normal iff `n = m`; the coefficient plays no role.
pub fn classify_monomial(a: &GaussianRational, n: u32, m: u32) -> Result<Verdict> {
    if a.is_zero() {
        return Err(Error::ZeroCoefficient);
    }
    Ok(if n == m {
        Verdict::symbolic(Status::Normal, Rule::MonomialBalanced)
    } else {
        Verdict::symbolic(Status::NotHyponormal, Rule::MonomialUnbalanced)
    })
}

fn two_monomial_symbolic(a: &GaussianRational, p: Monomial, b: &GaussianRational, q: Monomial) -> Result<Verdict> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroCoefficient);
    }
    if p == q {
        return Err(Error::RepeatedMonomial);
    }
    let Monomial { n: n1, m: m1 } = p;
    let Monomial { n: n2, m: m2 } = q;
    if [n1, m1, n2, m2].contains(&0) {
        return Ok(Verdict::symbolic(Status::OutsideProvenScope, Rule::TwoMonomialZeroExponent));
    }
    if n1 == m1 && n2 == m2 && n1 == n2 {
        return Ok(Verdict::symbolic(Status::Normal, Rule::TwoMonomialEqualRadial));
    }
    if n1 == m1 && n2 == m2 {
        let alpha = b / a;
        if alpha.is_real() {
            let verdict = Verdict::symbolic(Status::Normal, Rule::TwoMonomialRadialRealRatio);
            if alpha.re.is_negative() {
                return Ok(verdict.with_note(
                    "b/a is a negative real: arg(a) != arg(b), yet the symbol is a real multiple of a real-valued \
                     function and the operator is normal",
                ));
            }
            return Ok(verdict);
        }
        return Ok(Verdict::symbolic(Status::NotHyponormal, Rule::TwoMonomialNoCondition));
    }
    if n1 == m2 && m1 == n2 && n1 != m1 && a.norm_sqr() == b.norm_sqr() {
        return Ok(Verdict::symbolic(Status::Normal, Rule::TwoMonomialSwappedEqualModulus));
    }
    Ok(Verdict::symbolic(Status::NotHyponormal, Rule::TwoMonomialNoCondition))
}

/// `a z^n1 z̄^m1 + b z^n2 z̄^m2` with distinct exponent pairs.
///
/// A zero exponent lies outside the proven criterion; such verdicts carry a
/// certificate searched up to [`DEFAULT_N_MAX`].
pub fn classify_two_monomial(a: &GaussianRational, p: Monomial, b: &GaussianRational, q: Monomial) -> Result<Verdict> {
    let mut verdict = two_monomial_symbolic(a, p, b, q)?;
    if verdict.status == Status::OutsideProvenScope {
        let phi = Element::from_terms([(p, a.clone()), (q, b.clone())]);
        verdict.certificate = Some(numeric_certificate(&phi, DEFAULT_N_MAX)?);
    }
    Ok(verdict)
}

/// The rows `(a_k, conj b_k)` and `(b_k, conj a_k)` for every `k ≥ 1`, where
/// `φ = c + Σ a_k z^k + Σ b_k z̄^k`.
pub fn harmonic_dependence_matrix(phi: &Element) -> Result<ExactMatrix> {
    if !phi.is_harmonic() {
        return Err(Error::NotHarmonic);
    }
    let degree = phi.max_exponent();
    let mut rows = Vec::new();
    for k in 1..=degree {
        let a = phi.coefficient(Monomial::new(k, 0));
        let b = phi.coefficient(Monomial::new(0, k));
        rows.push(vec![a.clone(), b.conj()]);
        rows.push(vec![b, a.conj()]);
    }
    if rows.is_empty() {
        return Ok(ExactMatrix::zeros(0, 2));
    }
    ExactMatrix::from_rows(rows)
}

/// Harmonic polynomial symbols: normal iff `αφ + βφ̄` is constant for some
/// `(α, β) ≠ (0, 0)`.
pub fn classify_harmonic(phi: &Element) -> Result<Verdict> {
    let m = harmonic_dependence_matrix(phi)?;
    Ok(if rank(&m) <= 1 {
        Verdict::symbolic(Status::Normal, Rule::HarmonicConjugateDependent)
    } else {
        Verdict::symbolic(Status::NotHyponormal, Rule::HarmonicIndependent)
    })
}

/// Dispatches to the proven criteria without computing any certificate.
pub fn classify_symbolic(phi: &Element) -> Verdict {
    let terms: Vec<(Monomial, GaussianRational)> = phi.terms().map(|(k, v)| (*k, v.clone())).collect();
    match terms.as_slice() {
        [] => Verdict::symbolic(Status::Normal, Rule::ZeroSymbol),
        [(mono, a)] => classify_monomial(a, mono.n, mono.m).expect("canonical terms are nonzero"),
        _ if phi.is_harmonic() => classify_harmonic(phi).expect("checked harmonic"),
        [(p, a), (q, b)] => two_monomial_symbolic(a, *p, b, *q).expect("canonical terms are distinct and nonzero"),
        _ => Verdict::symbolic(Status::OutsideProvenScope, Rule::OutsideProvenScope),
    }
}

/// [`classify_with`] at [`DEFAULT_N_MAX`].
pub fn classify(phi: &Element) -> Verdict {
    classify_with(phi, DEFAULT_N_MAX).expect("default order is positive")
}

/// Symbolic verdict; anything not proven normal also gets a certificate
/// searched up to `n_max`.
pub fn classify_with(phi: &Element, n_max: u32) -> Result<Verdict> {
    let mut verdict = classify_symbolic(phi);
    if verdict.status != Status::Normal {
        let certificate = numeric_certificate(phi, n_max)?;
        if verdict.status == Status::OutsideProvenScope && certificate.certifies_non_normal() && verdict.note.is_none()
        {
            verdict.note = Some("the certificate proves the operator is not normal, hence not hyponormal".to_string());
        }
        verdict.certificate = Some(certificate);
    }
    Ok(verdict)
}

/// Searches `N = 1..=n_max` for the first nonzero restricted
/// self-commutator matrix.
pub fn numeric_certificate(phi: &Element, n_max: u32) -> Result<Certificate> {
    if n_max == 0 {
        return Err(Error::InvalidOrder);
    }
    for order in 1..=n_max {
        let basis = build_basis(order)?;
        let a = selfcomm_form_on(phi, &basis);
        let Some((row, col, value)) = a.first_nonzero() else {
            continue;
        };
        let labels = basis.labels();
        let entry = MatrixEntry { row, col, row_label: labels[row], col_label: labels[col], value: value.clone() };
        let form = HermitianForm::new(a).expect("self-commutator forms are Hermitian");
        let witness = match psd_test(&form) {
            PsdOutcome::Indefinite { witness, .. } => {
                let element = basis.combine(&witness);
                let q = q_value(phi, &element);
                q.is_negative().then_some(Witness { coordinates: witness, element, q_value: q })
            }
            PsdOutcome::Psd { .. } => None,
        };
        return Ok(Certificate::NotNormalCertified { order, entry, witness });
    }
    Ok(Certificate::ZeroUpTo(n_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;

    fn q(num: i64, den: i64) -> GaussianRational {
        GaussianRational::from_ratio(num, den)
    }

    fn mono(n: u32, m: u32) -> Monomial {
        Monomial::new(n, m)
    }

    #[test]
    fn monomial_examples() {
        assert_eq!(classify_monomial(&q(1, 1), 1, 1).unwrap().status, Status::Normal);
        assert_eq!(classify_monomial(&GaussianRational::i(), 2, 1).unwrap().status, Status::NotHyponormal);
        assert_eq!(classify_monomial(&q(3, 7), 4, 4).unwrap().status, Status::Normal);
        assert_eq!(classify_monomial(&q(0, 1), 4, 4), Err(Error::ZeroCoefficient));
    }

    #[test]
    fn two_monomial_examples() {
        let v = classify_two_monomial(&q(1, 1), mono(2, 1), &q(1, 1), mono(1, 2)).unwrap();
        assert_eq!((v.status, v.rule), (Status::Normal, Rule::TwoMonomialSwappedEqualModulus));
        let v = classify_two_monomial(&q(1, 1), mono(2, 1), &q(2, 1), mono(1, 2)).unwrap();
        assert_eq!(v.status, Status::NotHyponormal);
        let v = classify_two_monomial(&q(1, 1), mono(1, 1), &GaussianRational::i(), mono(2, 2)).unwrap();
        assert_eq!(v.status, Status::NotHyponormal);
        let v = classify_two_monomial(&q(1, 1), mono(1, 1), &q(-3, 2), mono(2, 2)).unwrap();
        assert_eq!((v.status, v.rule), (Status::Normal, Rule::TwoMonomialRadialRealRatio));
        assert!(v.note.is_some());
        let unit = GaussianRational::new(ratio(3, 5), ratio(4, 5));
        let v = classify_two_monomial(&q(1, 1), mono(3, 1), &unit, mono(1, 3)).unwrap();
        assert_eq!(v.status, Status::Normal);
        let v = classify_two_monomial(&q(1, 1), mono(2, 0), &q(1, 1), mono(1, 2)).unwrap();
        assert_eq!(v.status, Status::OutsideProvenScope);
        assert!(v.certificate.is_some());
        assert_eq!(classify_two_monomial(&q(1, 1), mono(1, 2), &q(1, 1), mono(1, 2)), Err(Error::RepeatedMonomial));
        assert_eq!(classify_two_monomial(&q(0, 1), mono(1, 2), &q(1, 1), mono(2, 2)), Err(Error::ZeroCoefficient));
    }

    #[test]
    fn harmonic_examples() {
        let z = Element::monomial(1, 0);
        let zb = Element::monomial(0, 1);
        assert_eq!(classify_harmonic(&(&z + &zb)).unwrap().status, Status::Normal);
        assert_eq!(classify_harmonic(&z).unwrap().status, Status::NotHyponormal);
        let z_2zb = &z + &zb.scale(&q(2, 1));
        assert_eq!(classify_harmonic(&z_2zb).unwrap().status, Status::NotHyponormal);
        // φ - i·φ̄ = 0 for φ = z + i z̄.
        let twisted = &z + &zb.scale(&GaussianRational::i());
        assert_eq!(classify_harmonic(&twisted).unwrap().status, Status::Normal);
        assert_eq!(classify_harmonic(&Element::monomial(1, 1)), Err(Error::NotHarmonic));
    }

    #[test]
    fn dispatcher_examples() {
        assert_eq!(classify(&Element::zero()).rule, Rule::ZeroSymbol);
        let half = Element::term(q(1, 2), mono(1, 1));
        let v = classify(&(&half + &half));
        assert_eq!((v.status, v.rule), (Status::Normal, Rule::MonomialBalanced));
        let three = &(&Element::monomial(2, 1) + &Element::monomial(1, 2)) + &Element::monomial(1, 0);
        let v = classify(&three);
        assert_eq!(v.status, Status::OutsideProvenScope);
        assert!(v.certificate.is_some());
    }

    #[test]
    fn certificate_examples() {
        assert_eq!(numeric_certificate(&Element::monomial(1, 1), 5).unwrap(), Certificate::ZeroUpTo(5));
        match numeric_certificate(&Element::monomial(2, 1), DEFAULT_N_MAX).unwrap() {
            Certificate::NotNormalCertified { witness: Some(w), .. } => assert!(w.q_value.is_negative()),
            other => panic!("expected a witness, got {other:?}"),
        }
        let swapped = &Element::monomial(2, 1) + &Element::monomial(1, 2);
        assert_eq!(numeric_certificate(&swapped, 6).unwrap(), Certificate::ZeroUpTo(6));
        assert_eq!(numeric_certificate(&swapped, 0), Err(Error::InvalidOrder));
    }
}

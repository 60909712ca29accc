//! Verification suites: each cross-checks closed forms and classifier
//! verdicts against the operator engine over a fixed grid.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::algebra::{int, ratio, Element, GaussianRational, Monomial};
use crate::classifier::{classify_symbolic, numeric_certificate, Certificate, Status};
use crate::engine::{
    apply, build_basis, commutator_matrix, commutator_projected_gram, make_fk, q_value, selfcomm_form_on,
};
use crate::error::{Error, Result};
use crate::identities::{
    check_k0_reduction, cleared_polynomial, closed_form_apply, closed_form_q, commutator_conjugation_check,
    radial_commutator_constant, radial_commutator_residual, special_points, two_monomial_q, PairExponents,
};
use crate::linalg::{is_antisymmetric, rank};
use crate::symbol::format_symbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Monomial,
    TwoMonomial,
    Harmonic,
    RadialPair,
    CommutatorRank,
}

impl Suite {
    pub const ALL: [Suite; 5] =
        [Suite::Monomial, Suite::TwoMonomial, Suite::Harmonic, Suite::RadialPair, Suite::CommutatorRank];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Monomial => "monomial",
            Suite::TwoMonomial => "two-monomial",
            Suite::Harmonic => "harmonic",
            Suite::RadialPair => "radial-pair",
            Suite::CommutatorRank => "commutator-rank",
        }
    }

    /// Accepted spellings besides [`Suite::name`].
    fn aliases(self) -> &'static [&'static str] {
        match self {
            Suite::Monomial => &["prop2c"],
            Suite::TwoMonomial => &["thmM2"],
            Suite::Harmonic => &["cor2e"],
            Suite::RadialPair => &["lemma2i"],
            Suite::CommutatorRank => &["thmM3"],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A suite selection: one suite or all of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    One(Suite),
    All,
}

impl Selection {
    pub fn suites(self) -> Vec<Suite> {
        match self {
            Selection::One(s) => vec![s],
            Selection::All => Suite::ALL.to_vec(),
        }
    }
}

impl FromStr for Selection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "all" {
            return Ok(Selection::All);
        }
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s || suite.aliases().contains(&s))
            .map(Selection::One)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Grid sizes for the suites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Monomial suite: `1 ≤ n, m ≤ monomial_max`.
    pub monomial_max: u32,
    /// Two-monomial suite: exponents `1..=two_monomial_max`.
    pub two_monomial_max: u32,
    /// Harmonic suite: degree of `z^k` and `z̄^k` terms.
    pub harmonic_max: u32,
    /// Radial-pair suite: distinct `1 ≤ n, m ≤ radial_max`.
    pub radial_max: u32,
    /// Truncation order used by the commutator-rank suite.
    pub commutator_order: u32,
    /// Largest order searched when certifying non-normal verdicts.
    pub certificate_order: u32,
    /// Order up to which normal verdicts must give zero matrices.
    pub zero_order: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            monomial_max: 5,
            two_monomial_max: 2,
            harmonic_max: 2,
            radial_max: 6,
            commutator_order: 4,
            certificate_order: 8,
            zero_order: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: usize,
    pub failed: usize,
    pub first_counterexample: Option<String>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Default)]
struct Tally {
    passed: usize,
    failed: usize,
    first: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.first.is_none() {
                self.first = Some(describe());
            }
        }
    }

    /// Merges results computed out of order, keeping the input order.
    fn extend(&mut self, results: Vec<(bool, String)>) {
        for (ok, label) in results {
            self.check(ok, || label);
        }
    }

    fn finish(self, suite: Suite) -> SuiteReport {
        SuiteReport { suite, passed: self.passed, failed: self.failed, first_counterexample: self.first }
    }
}

pub fn run_suite(suite: Suite, bounds: &Bounds) -> SuiteReport {
    match suite {
        Suite::Monomial => monomial_suite(bounds),
        Suite::TwoMonomial => two_monomial_suite(bounds),
        Suite::Harmonic => harmonic_suite(bounds),
        Suite::RadialPair => radial_pair_suite(bounds),
        Suite::CommutatorRank => commutator_rank_suite(bounds),
    }
}

pub fn run(selection: Selection, bounds: &Bounds) -> Vec<SuiteReport> {
    selection.suites().into_iter().map(|s| run_suite(s, bounds)).collect()
}

/// `Normal` must give zero matrices through `zero_order`; `NotHyponormal`
/// must be certified with a negative witness by `certificate_order`.
fn verdict_agrees(phi: &Element, status: Status, bounds: &Bounds) -> bool {
    match status {
        Status::Normal => (1..=bounds.zero_order)
            .all(|order| selfcomm_form_on(phi, &build_basis(order).expect("order ≥ 1")).is_zero()),
        Status::NotHyponormal => matches!(
            numeric_certificate(phi, bounds.certificate_order),
            Ok(Certificate::NotNormalCertified { witness: Some(ref w), .. }) if w.q_value.is_negative()
        ),
        Status::OutsideProvenScope => true,
    }
}

fn monomial_suite(bounds: &Bounds) -> SuiteReport {
    let mut t = Tally::default();
    let top = bounds.monomial_max;
    for n in 1..=top {
        for m in 1..=top {
            let phi = Element::monomial(n, m);
            let start = n.max(m) + 1;
            let mut values = Vec::new();
            for k in start..start + 5 {
                let fk = make_fk(i64::from(k)).expect("k ≥ 1");
                let closed = closed_form_apply(n, m, k).expect("k above exponents");
                t.check(apply(&phi, &fk) == closed, || format!("S f_k closed form, n={n} m={m} k={k}"));
                let q = closed_form_q(n, m, k).expect("k above exponents");
                t.check(q_value(&phi, &fk) == q, || format!("q_value closed form, n={n} m={m} k={k}"));
                values.push(q);
                values.push(closed_form_q(m, n, k).expect("k above exponents"));
            }
            let has_negative = values.iter().any(Signed::is_negative);
            let status = classify_symbolic(&phi).status;
            t.check(has_negative == (status == Status::NotHyponormal), || {
                format!("negative q_value iff not hyponormal, n={n} m={m}")
            });
            t.check(values.iter().all(Zero::is_zero) == (n == m), || format!("q_value vanishes iff n=m, n={n} m={m}"));
        }
    }
    t.finish(Suite::Monomial)
}

fn alphas() -> Vec<GaussianRational> {
    vec![
        GaussianRational::from_int(1),
        GaussianRational::from_int(-2),
        GaussianRational::i(),
        GaussianRational::new(int(1), int(1)),
        GaussianRational::new(ratio(3, 5), ratio(-4, 5)),
    ]
}

fn two_monomial_suite(bounds: &Bounds) -> SuiteReport {
    let mut t = Tally::default();
    let top = bounds.two_monomial_max;
    let pairs: Vec<(Monomial, Monomial)> = (1..=top)
        .flat_map(|n1| (1..=top).map(move |m1| Monomial::new(n1, m1)))
        .flat_map(|p| (1..=top).flat_map(move |n2| (1..=top).map(move |m2| (p, Monomial::new(n2, m2)))))
        .filter(|(p, q)| p < q)
        .collect();
    let cases: Vec<(Monomial, Monomial, GaussianRational)> =
        pairs.iter().flat_map(|&(p, q)| alphas().into_iter().map(move |a| (p, q, a))).collect();

    let results: Vec<Vec<(bool, String)>> = cases
        .par_iter()
        .map(|(p, q, alpha)| {
            let phi = &Element::monomial(p.n, p.m) + &Element::term(alpha.clone(), *q);
            let label = format!("{} ", format_symbol(&phi));
            let mut out = Vec::new();
            let start = p.n.max(p.m).max(q.n).max(q.m) + 1;
            for k in start..start + 4 {
                let fk = make_fk(i64::from(k)).expect("k ≥ 1");
                let closed = two_monomial_q(p.n, p.m, q.n, q.m, alpha, k).expect("k above exponents");
                out.push((q_value(&phi, &fk) == closed, format!("{label}q_value closed form at k={k}")));
            }
            let status = classify_symbolic(&phi).status;
            out.push((verdict_agrees(&phi, status, bounds), format!("{label}verdict {status} vs matrices")));
            out
        })
        .collect();
    t.extend(results.into_iter().flatten().collect());

    // Cleared-polynomial facts on the configured grid, widened to 4.
    let wide = top.max(4);
    for n1 in 1..=wide {
        for m1 in 1..=wide {
            for n2 in 1..=wide {
                for m2 in 1..=wide {
                    let e = PairExponents::new(n1, m1, n2, m2);
                    let s = ratio(2, 3);
                    let h = cleared_polynomial(e, &s).expect("positive exponents");
                    let lead = int(i64::from(n1 * n1)) + &s * int(i64::from(n2 * n2))
                        - int(i64::from(m1 * m1))
                        - &s * int(i64::from(m2 * m2));
                    t.check(h.coefficient(13) == lead, || format!("leading coefficient, {e:?}"));
                    t.check(check_k0_reduction(e, &s).expect("s > 0") == h.eval_int(0).is_zero(), || {
                        format!("k=0 reduction matches H(0), {e:?}")
                    });
                    if n1 > m1 && n2 < m2 {
                        for point in special_points(e) {
                            t.check(point.holds(), || format!("special point x={} {e:?}", point.x));
                        }
                    }
                }
            }
        }
    }
    t.finish(Suite::TwoMonomial)
}

fn harmonic_suite(bounds: &Bounds) -> SuiteReport {
    let mut t = Tally::default();
    let coefficients = [
        GaussianRational::zero(),
        GaussianRational::from_int(1),
        GaussianRational::from_int(-2),
        GaussianRational::i(),
    ];
    let slots: Vec<Monomial> =
        (1..=bounds.harmonic_max).flat_map(|k| [Monomial::new(k, 0), Monomial::new(0, k)]).collect();
    let mut symbols = Vec::new();
    let total = coefficients.len().pow(slots.len() as u32);
    for code in 0..total {
        let mut rest = code;
        let mut phi = Element::constant(GaussianRational::from_ratio(1, 3));
        for slot in &slots {
            phi.add_term(*slot, &coefficients[rest % coefficients.len()]);
            rest /= coefficients.len();
        }
        symbols.push(phi);
    }
    let results: Vec<(bool, String)> = symbols
        .par_iter()
        .map(|phi| {
            let verdict = classify_symbolic(phi);
            let decided = verdict.status != Status::OutsideProvenScope;
            (
                decided && verdict_agrees(phi, verdict.status, bounds),
                format!("{} verdict {}", format_symbol(phi), verdict.status),
            )
        })
        .collect();
    t.extend(results);
    t.finish(Suite::Harmonic)
}

fn radial_pair_suite(bounds: &Bounds) -> SuiteReport {
    let mut t = Tally::default();
    for n in 1..=bounds.radial_max {
        for m in 1..=bounds.radial_max {
            if n == m {
                continue;
            }
            let (rest, constant) = radial_commutator_residual(n, m).expect("distinct positive exponents");
            t.check(constant == radial_commutator_constant(n, m), || format!("harmonic constant, n={n} m={m}"));
            t.check(!rest.is_zero(), || format!("complement part nonzero, n={n} m={m}"));
            let status = classify_symbolic(
                &(&Element::monomial(n, n) + &Element::term(GaussianRational::i(), Monomial::new(m, m))),
            )
            .status;
            t.check(status == Status::NotHyponormal, || format!("non-real ratio is not normal, n={n} m={m}"));
        }
    }
    t.finish(Suite::RadialPair)
}

/// Ten fixed symbol pairs, harmonic and not, exponents at most 3.
pub fn commutator_pairs() -> Vec<(Element, Element)> {
    let mono = Element::monomial;
    let i = GaussianRational::i();
    vec![
        (mono(1, 0), mono(0, 1)),
        (mono(2, 0), mono(0, 1)),
        (mono(3, 0), &mono(0, 2) + &mono(1, 0)),
        (mono(2, 1), mono(1, 2)),
        (mono(1, 1), mono(2, 1)),
        (mono(3, 1), mono(0, 3)),
        (&mono(1, 0) + &Element::term(i.clone(), Monomial::new(0, 1)), mono(2, 2)),
        (mono(2, 3), &mono(3, 2) + &mono(1, 1)),
        (Element::term(GaussianRational::from_ratio(1, 2), Monomial::new(1, 2)), &mono(3, 3) + &mono(0, 2)),
        (&mono(2, 0) + &mono(0, 2), Element::term(i, Monomial::new(3, 1))),
    ]
}

fn commutator_rank_suite(bounds: &Bounds) -> SuiteReport {
    let mut t = Tally::default();
    let order = bounds.commutator_order;
    let basis = build_basis(order).expect("order ≥ 1");
    let results: Vec<Vec<(bool, String)>> = commutator_pairs()
        .par_iter()
        .map(|(phi, psi)| {
            let label = format!("[{}, {}] N={order} ", format_symbol(phi), format_symbol(psi));
            let b = commutator_matrix(phi, psi, order).expect("order ≥ 1");
            let swapped = b.permute_rows(basis.swap());
            let r = rank(&b);
            let projected = rank(&commutator_projected_gram(phi, psi, order).expect("order ≥ 1"));
            let conj_ok = basis.vectors().iter().all(|h| commutator_conjugation_check(phi, psi, h));
            vec![
                (is_antisymmetric(&swapped).expect("square"), format!("{label}swapped matrix antisymmetric")),
                (r.is_multiple_of(2), format!("{label}rank {r} even")),
                (projected == r, format!("{label}projected Gram rank {projected} vs {r}")),
                (conj_ok, format!("{label}conjugation identity")),
            ]
        })
        .collect();
    t.extend(results.into_iter().flatten().collect());
    t.finish(Suite::CommutatorRank)
}

/// Bounds as `(name, value)` pairs, in a fixed order.
pub fn describe_bounds(bounds: &Bounds) -> Vec<(&'static str, u32)> {
    vec![
        ("monomial_max", bounds.monomial_max),
        ("two_monomial_max", bounds.two_monomial_max),
        ("harmonic_max", bounds.harmonic_max),
        ("radial_max", bounds.radial_max),
        ("commutator_order", bounds.commutator_order),
        ("certificate_order", bounds.certificate_order),
        ("zero_order", bounds.zero_order),
    ]
}

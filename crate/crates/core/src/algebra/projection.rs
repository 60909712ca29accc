//! Orthogonal projections of `L²(𝔻)` restricted to monomial sums.
//!
//! `P` is the analytic Bergman projection, `Q` the harmonic one. `Q` is
//! assembled from `P` through `Q(f) = P(f) + conj(P(conj f)) - P(f)(0)`.

use super::element::{Element, Monomial};
use super::gauss::{ratio, GaussianRational};

/// `P(z^n z̄^m) = ((n-m+1)/(n+1)) z^(n-m)` for `n ≥ m`, zero otherwise.
pub fn bergman_project(f: &Element) -> Element {
    let mut out = Element::zero();
    for (mono, c) in f.terms() {
        if mono.n >= mono.m {
            let weight = ratio(i64::from(mono.n - mono.m) + 1, i64::from(mono.n) + 1);
            out.add_term(Monomial::new(mono.n - mono.m, 0), &c.scale(&weight));
        }
    }
    out
}

/// Orthogonal projection onto the harmonic Bergman space.
pub fn harmonic_project(f: &Element) -> Element {
    let analytic = bergman_project(f);
    let antianalytic = bergman_project(&f.conjugate()).conjugate();
    let at_origin = analytic.coefficient(Monomial::ONE);
    let mut out = &analytic + &antianalytic;
    out.add_term(Monomial::ONE, &-at_origin);
    out
}

/// `(I - Q) f`, the component orthogonal to every harmonic function.
pub fn complement_project(f: &Element) -> Element {
    f - &harmonic_project(f)
}

/// Value of `Q(f)` when it is constant, as happens for radial `f`.
pub fn harmonic_constant(f: &Element) -> Option<GaussianRational> {
    harmonic_project(f).as_constant()
}

//! Dual Toeplitz operators `S_φ u = (I - Q)(φ u)` acting on monomial sums,
//! and their restriction matrices over a truncated spanning set of
//! `(L²_h)^⊥`.
//!
//! Matrices here are forms restricted to `span(E_N)`, written in the
//! (non-orthonormal) basis `e_{n,m}`; no compression or orthonormalization
//! is performed.

use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{complement_project, ratio, Element, GaussianRational, Monomial, Rational};
use crate::error::{Error, Result};
use crate::linalg::{solve, ExactMatrix};

/// `S_φ f = (I - Q)(φ f)`.
pub fn apply(symbol: &Element, f: &Element) -> Element {
    complement_project(&symbol.multiply(f))
}

/// Symbol of the adjoint: `S_φ* = S_{conj φ}`.
pub fn adjoint_symbol(symbol: &Element) -> Element {
    symbol.conjugate()
}

/// The test vector `f_k = z^k z̄ - (k/(k+1)) z^(k-1) = e_{k,1}`.
pub fn make_fk(k: i64) -> Result<Element> {
    let k32 = u32::try_from(k).ok().filter(|&k| k >= 1).ok_or(Error::InvalidTestIndex(k))?;
    let mut f = Element::monomial(k32, 1);
    f.add_term(Monomial::new(k32 - 1, 0), &GaussianRational::from_ratio(-k, k + 1));
    Ok(f)
}

/// `‖S_φ f‖² - ‖S_φ* f‖²`, the self-commutator quadratic form at `f`.
pub fn q_value(symbol: &Element, f: &Element) -> Rational {
    let forward = apply(symbol, f);
    let backward = apply(&adjoint_symbol(symbol), f);
    let value = &forward.inner(&forward) - &backward.inner(&backward);
    debug_assert!(value.is_real());
    value.re
}

/// The vectors `e_{n,m} = (I - Q)(z^n z̄^m)`, `1 ≤ n, m ≤ N`, in
/// lexicographic order of `(n, m)`.
#[derive(Clone, Debug)]
pub struct TruncatedBasis {
    order: u32,
    labels: Vec<Monomial>,
    vectors: Vec<Element>,
    swap: Vec<usize>,
}

impl TruncatedBasis {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Element] {
        &self.vectors
    }

    /// `(n, m)` of each basis vector.
    pub fn labels(&self) -> &[Monomial] {
        &self.labels
    }

    /// `swap[i]` is the index of `conj(e_i)`, i.e. of `e_{m,n}`.
    pub fn swap(&self) -> &[usize] {
        &self.swap
    }

    pub fn index_of(&self, n: u32, m: u32) -> Option<usize> {
        (1..=self.order).contains(&n).then_some(())?;
        (1..=self.order).contains(&m).then_some(())?;
        Some(((n - 1) * self.order + (m - 1)) as usize)
    }

    /// `Σ c_j e_j`.
    pub fn combine(&self, coords: &[GaussianRational]) -> Element {
        assert_eq!(coords.len(), self.len());
        let mut out = Element::zero();
        for (c, e) in coords.iter().zip(&self.vectors) {
            if !c.is_zero() {
                out = &out + &e.scale(c);
            }
        }
        out
    }

    /// Permutation matrix `Pσ` with `(Pσ M)[i] = M[σ(i)]`.
    pub fn swap_matrix(&self) -> ExactMatrix {
        let n = self.len();
        ExactMatrix::from_fn(n, n, |i, j| {
            if self.swap[i] == j {
                GaussianRational::from_int(1)
            } else {
                GaussianRational::zero()
            }
        })
    }
}

pub fn build_basis(order: u32) -> Result<TruncatedBasis> {
    if order == 0 {
        return Err(Error::InvalidOrder);
    }
    let labels: Vec<Monomial> = (1..=order).flat_map(|n| (1..=order).map(move |m| Monomial::new(n, m))).collect();
    let vectors = labels.iter().map(|mono| complement_project(&Element::monomial(mono.n, mono.m))).collect();
    let swap = labels.iter().map(|mono| ((mono.m - 1) * order + (mono.n - 1)) as usize).collect();
    Ok(TruncatedBasis { order, labels, vectors, swap })
}

/// `G[i][j] = ⟨v_j, v_i⟩`.
pub fn gram_matrix(vectors: &[Element]) -> ExactMatrix {
    let n = vectors.len();
    let entries: Vec<GaussianRational> =
        (0..n * n).into_par_iter().map(|k| vectors[k % n].inner(&vectors[k / n])).collect();
    ExactMatrix::from_vec(n, n, entries).expect("square by construction")
}

/// `B[i][j] = ⟨u_j, v_i⟩` for images `u` and test vectors `v`.
fn pairing_matrix(images: &[Element], tests: &[Element]) -> ExactMatrix {
    let (rows, cols) = (tests.len(), images.len());
    let entries: Vec<GaussianRational> =
        (0..rows * cols).into_par_iter().map(|k| images[k % cols].inner(&tests[k / cols])).collect();
    ExactMatrix::from_vec(rows, cols, entries).expect("dimensions by construction")
}

fn apply_all(symbol: &Element, vectors: &[Element]) -> Vec<Element> {
    vectors.par_iter().map(|v| apply(symbol, v)).collect()
}

/// `A[i][j] = ⟨S_φ e_j, S_φ e_i⟩ - ⟨S_φ* e_j, S_φ* e_i⟩`. Hermitian, and
/// `c* A c = q_value(φ, Σ c_j e_j)`.
pub fn selfcomm_form_matrix(symbol: &Element, order: u32) -> Result<ExactMatrix> {
    let basis = build_basis(order)?;
    Ok(selfcomm_form_on(symbol, &basis))
}

pub fn selfcomm_form_on(symbol: &Element, basis: &TruncatedBasis) -> ExactMatrix {
    let forward = apply_all(symbol, basis.vectors());
    let backward = apply_all(&adjoint_symbol(symbol), basis.vectors());
    let n = basis.len();
    let entries: Vec<GaussianRational> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / n, k % n);
            &forward[j].inner(&forward[i]) - &backward[j].inner(&backward[i])
        })
        .collect();
    ExactMatrix::from_vec(n, n, entries).expect("square by construction")
}

/// `(S_φ S_ψ - S_ψ S_φ) f`.
pub fn commutator_apply(phi: &Element, psi: &Element, f: &Element) -> Element {
    &apply(phi, &apply(psi, f)) - &apply(psi, &apply(phi, f))
}

fn commutator_images(phi: &Element, psi: &Element, basis: &TruncatedBasis) -> Vec<Element> {
    basis.vectors().par_iter().map(|e| commutator_apply(phi, psi, e)).collect()
}

/// `B[i][j] = ⟨[S_φ, S_ψ] e_j, e_i⟩`.
pub fn commutator_matrix(phi: &Element, psi: &Element, order: u32) -> Result<ExactMatrix> {
    let basis = build_basis(order)?;
    Ok(pairing_matrix(&commutator_images(phi, psi, &basis), basis.vectors()))
}

/// Gram matrix of `g_j = [S_φ, S_ψ] e_j`; its rank is `dim span{g_j}`.
pub fn commutator_range_gram(phi: &Element, psi: &Element, order: u32) -> Result<ExactMatrix> {
    let basis = build_basis(order)?;
    Ok(gram_matrix(&commutator_images(phi, psi, &basis)))
}

/// The two commutator matrices at once, sharing the basis and images.
pub fn commutator_pair(phi: &Element, psi: &Element, order: u32) -> Result<(ExactMatrix, ExactMatrix)> {
    let basis = build_basis(order)?;
    let images = commutator_images(phi, psi, &basis);
    Ok((pairing_matrix(&images, basis.vectors()), gram_matrix(&images)))
}

/// Gram matrix of the orthogonal projections of `g_j = [S_φ, S_ψ] e_j` onto
/// the span of the truncated basis, `B* Γ⁻¹ B` with `Γ` the basis Gram.
pub fn commutator_projected_gram(phi: &Element, psi: &Element, order: u32) -> Result<ExactMatrix> {
    let basis = build_basis(order)?;
    let b = pairing_matrix(&commutator_images(phi, psi, &basis), basis.vectors());
    let gamma = gram_matrix(basis.vectors());
    let coords = solve(&gamma, &b)?.expect("basis vectors are linearly independent");
    b.conj_transpose().mul(&coords)
}

/// `⟨S_φ e_j, e_i⟩`.
pub fn operator_matrix(symbol: &Element, order: u32) -> Result<ExactMatrix> {
    let basis = build_basis(order)?;
    Ok(pairing_matrix(&apply_all(symbol, basis.vectors()), basis.vectors()))
}

/// Coefficient `(k/(k+1))` shared by the test-vector formulas.
pub(crate) fn fk_weight(k: u32) -> Rational {
    ratio(i64::from(k), i64::from(k) + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{harmonic_project, int};
    use crate::linalg::{is_antisymmetric, rank};

    fn q(num: i64, den: i64) -> GaussianRational {
        GaussianRational::from_ratio(num, den)
    }

    fn mono(n: u32, m: u32) -> Element {
        Element::monomial(n, m)
    }

    #[test]
    fn fk_examples() {
        assert_eq!(make_fk(1).unwrap(), &mono(1, 1) - &Element::constant(q(1, 2)));
        assert_eq!(make_fk(3).unwrap(), &mono(3, 1) - &Element::term(q(3, 4), Monomial::new(2, 0)));
        for k in 1..=10 {
            assert!(harmonic_project(&make_fk(k).unwrap()).is_zero());
        }
        assert_eq!(make_fk(0), Err(Error::InvalidTestIndex(0)));
        assert_eq!(make_fk(-3), Err(Error::InvalidTestIndex(-3)));
    }

    #[test]
    fn apply_examples() {
        let f2 = make_fk(2).unwrap();
        let expected = Element::from_terms([
            (Monomial::new(3, 2), q(1, 1)),
            (Monomial::new(2, 1), q(-2, 3)),
            (Monomial::new(1, 0), q(-1, 18)),
        ]);
        assert_eq!(apply(&mono(1, 1), &f2), expected);

        let f3 = make_fk(3).unwrap();
        let expected = Element::from_terms([
            (Monomial::new(5, 2), q(1, 1)),
            (Monomial::new(4, 1), q(-3, 4)),
            (Monomial::new(3, 0), q(-1, 15)),
        ]);
        assert_eq!(apply(&mono(2, 1), &f3), expected);

        let e = complement_project(&mono(2, 3));
        assert_eq!(apply(&Element::constant(q(1, 1)), &e), e);
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(adjoint_symbol(&mono(2, 1)), mono(1, 2));
        let i_zzb = Element::term(GaussianRational::i(), Monomial::new(1, 1));
        assert_eq!(adjoint_symbol(&i_zzb), Element::term(-GaussianRational::i(), Monomial::new(1, 1)));
    }

    #[test]
    fn q_value_examples() {
        let f3 = make_fk(3).unwrap();
        assert_eq!(q_value(&mono(2, 1), &f3), ratio(-23, 28800));
        assert!(q_value(&mono(1, 1), &f3).is_zero());
        assert!(q_value(&mono(1, 1), &complement_project(&mono(4, 2))).is_zero());
    }

    #[test]
    fn basis_examples() {
        let b1 = build_basis(1).unwrap();
        assert_eq!(b1.vectors(), &[&mono(1, 1) - &Element::constant(q(1, 2))]);
        let b2 = build_basis(2).unwrap();
        assert_eq!(b2.len(), 4);
        let e12 = &mono(1, 2) - &Element::term(q(2, 3), Monomial::new(0, 1));
        assert_eq!(b2.vectors()[b2.index_of(1, 2).unwrap()], e12);
        assert!(build_basis(0).is_err());
    }

    #[test]
    fn basis_is_conjugation_closed_and_independent() {
        for order in 1..=4 {
            let b = build_basis(order).unwrap();
            for (i, e) in b.vectors().iter().enumerate() {
                assert!(harmonic_project(e).is_zero());
                assert_eq!(e.conjugate(), b.vectors()[b.swap()[i]]);
                assert_eq!(b.swap()[b.swap()[i]], i);
            }
            assert_eq!(rank(&gram_matrix(b.vectors())), b.len());
        }
    }

    #[test]
    fn selfcomm_examples() {
        assert!(selfcomm_form_matrix(&mono(1, 1), 3).unwrap().is_zero());
        let z_plus_zb = &mono(1, 0) + &mono(0, 1);
        assert!(selfcomm_form_matrix(&z_plus_zb, 3).unwrap().is_zero());

        let a = selfcomm_form_matrix(&mono(2, 1), 4).unwrap();
        let b = build_basis(4).unwrap();
        let i = b.index_of(3, 1).unwrap();
        assert_eq!(a.get(i, i), &GaussianRational::real(ratio(-23, 28800)));
        assert!(a.is_hermitian());
    }

    #[test]
    fn commutator_examples() {
        let phi = &mono(2, 1) + &Element::term(GaussianRational::i(), Monomial::new(0, 1));
        assert!(commutator_matrix(&phi, &phi, 3).unwrap().is_zero());
        let c = Element::constant(GaussianRational::new(int(2), int(-5)));
        assert!(commutator_matrix(&phi, &c, 3).unwrap().is_zero());

        let b = build_basis(3).unwrap();
        let m = commutator_matrix(&mono(1, 0), &mono(0, 1), 3).unwrap();
        let skew = b.swap_matrix().mul(&m).unwrap();
        assert!(is_antisymmetric(&skew).unwrap());
    }

    #[test]
    fn range_gram_is_zero_for_equal_symbols() {
        let phi = mono(1, 2);
        assert!(commutator_range_gram(&phi, &phi, 2).unwrap().is_zero());
        let g = commutator_range_gram(&mono(1, 0), &mono(0, 1), 2).unwrap();
        assert!(g.is_hermitian());
    }

    #[test]
    fn projected_gram_rank_matches_compression_rank() {
        let (phi, psi) = (mono(2, 0), mono(0, 1));
        for order in 1..=3 {
            let (b, g) = commutator_pair(&phi, &psi, order).unwrap();
            let p = commutator_projected_gram(&phi, &psi, order).unwrap();
            assert!(p.is_hermitian());
            assert_eq!(rank(&p), rank(&b));
            // The images leave the truncated span, so the full range Gram
            // sees one more direction here.
            assert_eq!(rank(&g), rank(&b) + 1);
        }
    }

    #[test]
    fn swap_matrix_matches_row_permutation() {
        let b = build_basis(3).unwrap();
        let m = operator_matrix(&mono(2, 1), 3).unwrap();
        assert_eq!(b.swap_matrix().mul(&m).unwrap(), m.permute_rows(b.swap()));
    }
}

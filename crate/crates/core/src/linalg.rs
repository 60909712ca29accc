//! Exact decision procedures on dense Gaussian-rational matrices.
//!
//! Nothing here uses floating point: positivity is decided by a pivoted
//! `LDLᵀ` over the rationals and rank by fraction-free elimination over the
//! Gaussian integers.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{GaussianRational, Rational};
use crate::error::{Error, Result};

/// Dense row-major matrix of Gaussian rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![GaussianRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GaussianRational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        let mut f = f;
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds from row-major entries; `data.len()` must be `rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<GaussianRational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    /// Integer entries, handy in tests and small examples.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|row| row.iter().map(|&x| GaussianRational::from_int(x)).collect()).collect();
        Self::from_rows(rows).expect("rectangular input")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: GaussianRational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &GaussianRational)> {
        self.data.iter().position(|x| !x.is_zero()).map(|k| (k / self.cols, k % self.cols, &self.data[k]))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn neg(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.conj_transpose()
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| (0..self.cols).map(|k| self.get(i, k) * other.get(k, j)).sum()))
    }

    /// Row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rows, "permutation length");
        Self::from_fn(self.rows, self.cols, |i, j| self.get(perm[i], j).clone())
    }

    pub fn permute_cols(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.cols, "permutation length");
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, perm[j]).clone())
    }

    /// Rows as vectors of canonical `p/q+r/si` strings.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(GaussianRational::to_canonical_string).collect()).collect()
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_string_rows() {
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `c* H c` for a square `h`.
pub fn quadratic_form(h: &ExactMatrix, c: &[GaussianRational]) -> GaussianRational {
    assert_eq!(h.rows(), c.len());
    assert!(h.is_square());
    let mut acc = GaussianRational::zero();
    for (i, ci) in c.iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        let ci_bar = ci.conj();
        for (j, cj) in c.iter().enumerate() {
            if !cj.is_zero() {
                acc += &(&(&ci_bar * h.get(i, j)) * cj);
            }
        }
    }
    acc
}

/// A matrix known to equal its conjugate transpose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianForm(ExactMatrix);

impl HermitianForm {
    pub fn new(matrix: ExactMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        if !matrix.is_hermitian() {
            return Err(Error::NotHermitian);
        }
        Ok(Self(matrix))
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ExactMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }
}

/// Real symmetric `[[X, -Y], [Y, X]]` for `H = X + iY`.
pub fn realify(h: &HermitianForm) -> ExactMatrix {
    let m = h.matrix();
    let n = m.rows();
    ExactMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let entry = m.get(i % n, j % n);
        let value = match (i < n, j < n) {
            (true, true) | (false, false) => entry.re.clone(),
            (true, false) => -&entry.im,
            (false, true) => entry.im.clone(),
        };
        GaussianRational::real(value)
    })
}

/// Result of an exact positivity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsdOutcome {
    /// Positive semidefinite; `rank` is the rank of the Hermitian input.
    Psd { rank: usize },
    /// `witness* H witness = value < 0`.
    Indefinite { witness: Vec<GaussianRational>, value: Rational },
}

impl PsdOutcome {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdOutcome::Psd { .. })
    }
}

/// Decides `H ⪰ 0` by symmetric-pivoted `LDLᵀ` on the realified matrix.
///
/// Pivots are taken on positive diagonal entries. A negative diagonal entry
/// of a Schur complement, or a nonzero off-diagonal entry between two zero
/// diagonal entries, is turned into an explicit witness.
pub fn psd_test(h: &HermitianForm) -> PsdOutcome {
    let n = h.dim();
    let real = realify(h);
    let d = real.rows();
    let mut schur: Vec<Vec<Rational>> = (0..d).map(|i| (0..d).map(|j| real.get(i, j).re.clone()).collect()).collect();
    // basis[i] holds, in original coordinates, the vector whose Gram entries
    // are the current Schur complement.
    let mut basis: Vec<Vec<Rational>> =
        (0..d).map(|i| (0..d).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
    let mut active = vec![true; d];
    let mut positive_pivots = 0usize;

    let witness = loop {
        let live: Vec<usize> = (0..d).filter(|&i| active[i]).collect();
        if let Some(&i) = live.iter().find(|&&i| schur[i][i].is_negative()) {
            break Some(basis[i].clone());
        }
        if let Some(&p) = live.iter().find(|&&i| schur[i][i].is_positive()) {
            let pivot = schur[p][p].clone();
            let pivot_row = schur[p].clone();
            for &i in live.iter().filter(|&&i| i != p) {
                if pivot_row[i].is_zero() {
                    continue;
                }
                let factor = &pivot_row[i] / &pivot;
                for &j in live.iter().filter(|&&j| j != p) {
                    if !pivot_row[j].is_zero() {
                        let delta = &factor * &pivot_row[j];
                        schur[i][j] -= delta;
                    }
                }
                let pivot_vec = basis[p].clone();
                for (x, y) in basis[i].iter_mut().zip(&pivot_vec) {
                    if !y.is_zero() {
                        *x -= &factor * y;
                    }
                }
            }
            active[p] = false;
            positive_pivots += 1;
            continue;
        }
        // Every remaining diagonal entry is zero.
        let pair = live
            .iter()
            .flat_map(|&i| live.iter().map(move |&j| (i, j)))
            .find(|&(i, j)| i < j && !schur[i][j].is_zero());
        match pair {
            Some((i, j)) => {
                let sign = if schur[i][j].is_positive() { Rational::one() } else { -Rational::one() };
                let v: Vec<Rational> = basis[i].iter().zip(&basis[j]).map(|(a, b)| a - &sign * b).collect();
                break Some(v);
            }
            None => break None,
        }
    };

    match witness {
        None => PsdOutcome::Psd { rank: positive_pivots / 2 },
        Some(real_vec) => {
            let witness: Vec<GaussianRational> =
                (0..n).map(|k| GaussianRational::new(real_vec[k].clone(), real_vec[n + k].clone())).collect();
            let value = quadratic_form(h.matrix(), &witness);
            debug_assert!(value.is_real() && value.re.is_negative());
            PsdOutcome::Indefinite { witness, value: value.re }
        }
    }
}

/// Exact rank by fraction-free (Bareiss) elimination.
///
/// Rows are first scaled to Gaussian integers; every intermediate division
/// is then exact in `ℤ[i]`.
#[allow(clippy::needless_range_loop)]
pub fn rank(m: &ExactMatrix) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<GaussianRational>> = (0..rows)
        .map(|i| {
            let row = m.row(i);
            let lcm = row
                .iter()
                .fold(num_bigint::BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, &x.denominator_lcm()));
            let scale = Rational::from_integer(lcm);
            row.iter().map(|x| x.scale(&scale)).collect()
        })
        .collect();

    let mut r = 0usize;
    let mut prev = GaussianRational::one();
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][col].clone();
        for i in r + 1..rows {
            let lead = a[i][col].clone();
            for j in col + 1..cols {
                let num = &(&pivot * &a[i][j]) - &(&lead * &a[r][j]);
                let q = &num / &prev;
                debug_assert!(q.is_gaussian_integer(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][col] = GaussianRational::zero();
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Solves `a·x = b` by Gauss-Jordan elimination; `None` if `a` is singular.
pub fn solve(a: &ExactMatrix, b: &ExactMatrix) -> Result<Option<ExactMatrix>> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!("{} rows vs {} rows", a.rows(), b.rows())));
    }
    let (n, k) = (a.rows(), b.cols());
    let mut aug: Vec<Vec<GaussianRational>> =
        (0..n).map(|i| a.row(i).iter().chain(b.row(i)).cloned().collect()).collect();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !aug[i][col].is_zero()) else {
            return Ok(None);
        };
        aug.swap(col, p);
        let inv = aug[col][col].checked_inv().expect("pivot is nonzero");
        for x in aug[col].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = aug[col].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &(&factor * y);
                }
            }
        }
    }
    let data = aug.into_iter().flat_map(|row| row.into_iter().skip(n)).collect();
    Ok(Some(ExactMatrix::from_vec(n, k, data)?))
}

/// True iff `mᵀ = -m` exactly.
pub fn is_antisymmetric(m: &ExactMatrix) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    Ok((0..n).all(|i| (i..n).all(|j| *m.get(i, j) == -m.get(j, i))))
}

//! The normalized sample covariance matrix and its trace functionals.

use std::sync::OnceLock;

use nalgebra::{Complex, DMatrix};
use num::traits::Signed;
use num::{BigRational, ToPrimitive};

use crate::chebyshev::gamma_scaled;
use crate::ensembles::EntryMatrix;
use crate::{Error, Result};

/// Largest exponent accepted by [`trace_powers`].
pub const MAX_TRACE_POWER: usize = 20;

/// Largest polynomial order accepted by [`trace_gamma`].
pub const MAX_GAMMA_TRACE_ORDER: usize = 12;

/// Iteration cap for the symmetric eigensolver before reporting a numeric
/// failure.
const EIGEN_MAX_ITER: usize = 100_000;

/// Relative floor for the positive-semidefiniteness check: eigenvalues of a
/// freshly built covariance matrix must stay above `-1e-10 * max |λ|`.
const PSD_FLOOR: f64 = 1e-10;

/// Hermitian matrix storage, real symmetric or complex Hermitian.
#[derive(Clone, Debug)]
enum HermitianStorage {
    Real(DMatrix<f64>),
    Complex(DMatrix<Complex<f64>>),
}

/// The normalized sample covariance matrix `W = (1/n) Y Y*` of an `s × t`
/// data matrix `Y`, together with the dimension triple `(n, s, t)` it was
/// built from.
///
/// The matrix is Hermitian by construction (the product is explicitly
/// re-symmetrized, so `entry(i, j)` equals the conjugate of `entry(j, i)`
/// bit for bit) and positive semidefinite up to roundoff; eigenvalues are
/// computed on first use and cached.
#[derive(Clone, Debug)]
pub struct CovarianceMatrix {
    mat: HermitianStorage,
    n: usize,
    s: usize,
    t: usize,
    source_seed: Option<u64>,
    eigenvalues: OnceLock<Vec<f64>>,
}

/// Builds `W = (1/n) Y Y*` from a data matrix.
///
/// # Panics
///
/// Panics if `n` is zero.
pub fn build_w(y: &EntryMatrix, n: usize) -> CovarianceMatrix {
    assert!(n >= 1, "sample size n must be at least 1");
    let s = y.nrows();
    let t = y.ncols();
    let scale = 1.0 / n as f64;
    let mat = match y {
        EntryMatrix::Real(m) => {
            let prod = m * m.transpose();
            let sym = (&prod + prod.transpose()).map(|v| v * 0.5 * scale);
            HermitianStorage::Real(sym)
        }
        EntryMatrix::Complex(m) => {
            let prod = m * m.adjoint();
            let half = Complex::new(0.5 * scale, 0.0);
            let herm = (&prod + prod.adjoint()).map(|z| z * half);
            HermitianStorage::Complex(herm)
        }
    };
    CovarianceMatrix {
        mat,
        n,
        s,
        t,
        source_seed: None,
        eigenvalues: OnceLock::new(),
    }
}

impl CovarianceMatrix {
    /// The normalization `n` used in `(1/n) Y Y*`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of rows `s` of the data matrix (the side of `W`).
    pub fn s(&self) -> usize {
        self.s
    }

    /// Number of columns `t` of the data matrix.
    pub fn t(&self) -> usize {
        self.t
    }

    /// Side length of the square matrix `W` (equals [`Self::s`]).
    pub fn dim(&self) -> usize {
        self.s
    }

    /// Whether the underlying data matrix was complex-valued.
    pub fn is_complex(&self) -> bool {
        matches!(self.mat, HermitianStorage::Complex(_))
    }

    /// Records the RNG seed the data matrix was sampled from.
    pub fn with_source_seed(mut self, seed: u64) -> Self {
        self.source_seed = Some(seed);
        self
    }

    /// The recorded sampling seed, if any.
    pub fn source_seed(&self) -> Option<u64> {
        self.source_seed
    }

    /// Entry accessor (0-based); real storage is promoted to a complex value
    /// with zero imaginary part.
    ///
    /// # Panics
    ///
    /// Panics if an index is out of range.
    pub fn entry(&self, row: usize, col: usize) -> Complex<f64> {
        match &self.mat {
            HermitianStorage::Real(m) => Complex::new(m[(row, col)], 0.0),
            HermitianStorage::Complex(m) => m[(row, col)],
        }
    }

    /// The trace of `W` (sum of real diagonal entries).
    pub fn trace(&self) -> f64 {
        match &self.mat {
            HermitianStorage::Real(m) => m.trace(),
            HermitianStorage::Complex(m) => m.trace().re,
        }
    }

    /// The eigenvalues of `W`, computed on first use and cached. Verifies
    /// positive semidefiniteness up to roundoff (`λ ≥ -1e-10 · max |λ|`).
    ///
    /// # Errors
    ///
    /// [`Error::Numeric`] if the eigensolver fails to converge or an
    /// eigenvalue falls below the roundoff floor.
    pub fn eigenvalues(&self) -> Result<&[f64]> {
        if self.eigenvalues.get().is_none() {
            let computed = self.compute_eigenvalues()?;
            let _ = self.eigenvalues.set(computed);
        }
        Ok(self
            .eigenvalues
            .get()
            .expect("eigenvalues cached above")
            .as_slice())
    }

    fn compute_eigenvalues(&self) -> Result<Vec<f64>> {
        let eigs: Vec<f64> = match &self.mat {
            HermitianStorage::Real(m) => m
                .clone()
                .try_symmetric_eigen(f64::EPSILON, EIGEN_MAX_ITER)
                .ok_or_else(|| Error::Numeric("symmetric eigensolver did not converge".into()))?
                .eigenvalues
                .iter()
                .copied()
                .collect(),
            HermitianStorage::Complex(m) => m
                .clone()
                .try_symmetric_eigen(f64::EPSILON, EIGEN_MAX_ITER)
                .ok_or_else(|| Error::Numeric("Hermitian eigensolver did not converge".into()))?
                .eigenvalues
                .iter()
                .copied()
                .collect(),
        };
        let spread = eigs.iter().fold(0.0_f64, |acc, &l| acc.max(l.abs()));
        let floor = -PSD_FLOOR * spread;
        if eigs.iter().any(|&l| l < floor) {
            return Err(Error::Numeric(format!(
                "covariance eigenvalue below the positive-semidefinite roundoff floor {floor:e}"
            )));
        }
        Ok(eigs)
    }
}

/// Power traces `tr(W^k)` for `k = 1..=k_max`, computed from the eigenvalue
/// spectrum as `Σ_i λ_i^k`.
///
/// # Errors
///
/// [`Error::SizeLimit`] if `k_max` exceeds [`MAX_TRACE_POWER`];
/// [`Error::Numeric`] if the eigensolver fails.
pub fn trace_powers(w: &CovarianceMatrix, k_max: usize) -> Result<Vec<f64>> {
    if k_max > MAX_TRACE_POWER {
        return Err(Error::SizeLimit {
            what: "trace power",
            got: k_max,
            limit: MAX_TRACE_POWER,
        });
    }
    let eigs = w.eigenvalues()?;
    let mut running: Vec<f64> = eigs.to_vec();
    let mut out = Vec::with_capacity(k_max);
    for _ in 1..=k_max {
        out.push(running.iter().sum());
        for (r, &l) in running.iter_mut().zip(eigs) {
            *r *= l;
        }
    }
    Ok(out)
}

/// The trace of the variance-adjusted Chebyshev polynomial of `W`:
/// `Σ_m σ^{2(k-m)} g'_{k,m} tr(W^m)`, where `g'_{k,m}` is the coefficient
/// of `x^m` in the degree-`k` polynomial with parameter `y`.
///
/// # Errors
///
/// [`Error::SizeLimit`] if `k` exceeds [`MAX_GAMMA_TRACE_ORDER`];
/// [`Error::Domain`] if `y` or `sigma_sq` is not positive; numeric errors
/// propagate from [`trace_powers`].
pub fn trace_gamma(
    w: &CovarianceMatrix,
    k: usize,
    y: &BigRational,
    sigma_sq: &BigRational,
) -> Result<f64> {
    if k > MAX_GAMMA_TRACE_ORDER {
        return Err(Error::SizeLimit {
            what: "polynomial trace order",
            got: k,
            limit: MAX_GAMMA_TRACE_ORDER,
        });
    }
    if !y.is_positive() || !sigma_sq.is_positive() {
        return Err(Error::Domain(
            "aspect ratio y and variance sigma_sq must be positive".into(),
        ));
    }
    let powers = trace_powers(w, k)?;
    Ok(gamma_trace_from_powers(&powers, w.s(), k, y, sigma_sq))
}

/// Same functional as [`trace_gamma`], evaluated from precomputed power
/// traces (`powers[m - 1] = tr(W^m)`, needed for `m = 1..=k`) so that one
/// eigendecomposition can serve several polynomial orders.
///
/// # Panics
///
/// Panics if fewer than `k` power traces are supplied or if `y`/`sigma_sq`
/// are not positive.
pub fn gamma_trace_from_powers(
    powers: &[f64],
    s: usize,
    k: usize,
    y: &BigRational,
    sigma_sq: &BigRational,
) -> f64 {
    assert!(
        powers.len() >= k,
        "need tr(W^m) for every m = 1..=k (got {} of {k})",
        powers.len()
    );
    let poly = gamma_scaled(k, y, sigma_sq);
    let mut total = poly
        .coeff(0)
        .to_f64()
        .expect("polynomial coefficient fits in f64")
        * s as f64;
    for (m, tr_m) in powers.iter().take(k).enumerate() {
        total += poly
            .coeff(m + 1)
            .to_f64()
            .expect("polynomial coefficient fits in f64")
            * tr_m;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebyshev::gamma_scaled;
    use crate::ensembles::{sample_matrix, DependenceStructure, EntryModel, EntryModelKind};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use num::rational::Ratio;
    use num::BigInt;

    fn rat(num: i64, den: i64) -> BigRational {
        Ratio::new(BigInt::from(num), BigInt::from(den))
    }

    fn seeded_matrix(s: usize, t: usize, kind: EntryModelKind, seed: u64) -> EntryMatrix {
        let d = DependenceStructure::independent(s, t).expect("grid fits");
        let model = EntryModel::new(kind, 1.0).expect("valid model");
        sample_matrix(&d, &model, seed).expect("sampling succeeds")
    }

    #[test]
    fn zero_data_matrix_gives_zero_covariance() {
        let y = EntryMatrix::Real(DMatrix::zeros(3, 4));
        let w = build_w(&y, 5);
        assert_eq!((w.n(), w.s(), w.t(), w.dim()), (5, 3, 4, 3));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(w.entry(i, j), Complex::new(0.0, 0.0));
            }
        }
        let traces = trace_powers(&w, 6).expect("traces of zero matrix");
        assert!(traces.iter().all(|&t| t == 0.0));
    }

    #[test]
    fn one_by_one_covariance_is_squared_modulus() {
        let c = Complex::new(0.6, -0.8);
        let y = EntryMatrix::Complex(DMatrix::from_element(1, 1, c));
        let w = build_w(&y, 1);
        let got = w.entry(0, 0);
        assert_abs_diff_eq!(got.re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(got.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn eigenvalue_sum_matches_squared_entries() {
        for (kind, seed) in [
            (EntryModelKind::GaussianReal, 11_u64),
            (EntryModelKind::GaussianComplex, 12),
        ] {
            let y = seeded_matrix(16, 16, kind, seed);
            let w = build_w(&y, 16);
            let eig_sum: f64 = w.eigenvalues().expect("eigenvalues").iter().sum();
            let direct = y.sum_abs_sq() / 16.0;
            assert_relative_eq!(eig_sum, direct, max_relative = 1e-10);
        }
    }

    #[test]
    fn covariance_is_hermitian_and_positive_semidefinite() {
        for (kind, seed) in [
            (EntryModelKind::GaussianReal, 21_u64),
            (EntryModelKind::GaussianComplex, 22),
            (EntryModelKind::Rademacher, 23),
        ] {
            let y = seeded_matrix(10, 14, kind, seed);
            let w = build_w(&y, 14);
            for i in 0..w.dim() {
                for j in 0..w.dim() {
                    assert_eq!(w.entry(i, j), w.entry(j, i).conj());
                }
            }
            let eigs = w.eigenvalues().expect("eigenvalues");
            let spread = eigs.iter().fold(0.0_f64, |a, &l| a.max(l.abs()));
            assert!(eigs.iter().all(|&l| l >= -1e-10 * spread));
        }
    }

    #[test]
    fn diagonal_covariance_has_power_sum_traces() {
        // Y = diag(1, sqrt(2)) with n = 1 gives W = diag(1, 2).
        let mut m = DMatrix::zeros(2, 2);
        m[(0, 0)] = 1.0;
        m[(1, 1)] = 2.0_f64.sqrt();
        let w = build_w(&EntryMatrix::Real(m), 1);
        let traces = trace_powers(&w, 3).expect("traces");
        assert_abs_diff_eq!(traces[0], 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(traces[1], 5.0, epsilon = 1e-12);
        assert_abs_diff_eq!(traces[2], 9.0, epsilon = 1e-12);
    }

    /// Repeated matrix multiplication, the slow reference path for traces.
    fn power_trace_by_multiplication(w: &CovarianceMatrix, k: usize) -> f64 {
        let dim = w.dim();
        let base = DMatrix::from_fn(dim, dim, |i, j| w.entry(i, j));
        let mut acc = base.clone();
        for _ in 1..k {
            acc = &acc * &base;
        }
        acc.trace().re
    }

    #[test]
    fn eigenvalue_traces_match_matrix_powers() {
        for (kind, seed) in [
            (EntryModelKind::GaussianReal, 31_u64),
            (EntryModelKind::GaussianComplex, 32),
        ] {
            let y = seeded_matrix(8, 8, kind, seed);
            let w = build_w(&y, 8);
            let traces = trace_powers(&w, 6).expect("traces");
            for k in 1..=6 {
                let reference = power_trace_by_multiplication(&w, k);
                assert_relative_eq!(traces[k - 1], reference, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn trace_power_guard_rejects_large_exponents() {
        let y = EntryMatrix::Real(DMatrix::zeros(2, 2));
        let w = build_w(&y, 2);
        assert!(matches!(
            trace_powers(&w, MAX_TRACE_POWER + 1),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn order_zero_polynomial_trace_is_the_dimension() {
        let y = seeded_matrix(7, 9, EntryModelKind::GaussianReal, 41);
        let w = build_w(&y, 9);
        let value = trace_gamma(&w, 0, &rat(7, 9), &rat(1, 1)).expect("order 0");
        assert_abs_diff_eq!(value, 7.0, epsilon = 1e-12);
    }

    #[test]
    fn order_one_polynomial_trace_centers_the_plain_trace() {
        let y = seeded_matrix(6, 12, EntryModelKind::GaussianReal, 42);
        let w = build_w(&y, 12);
        let y_ratio = rat(1, 2);
        let sigma_sq = rat(3, 2);
        let value = trace_gamma(&w, 1, &y_ratio, &sigma_sq).expect("order 1");
        let expected = w.trace() - 6.0 * 1.5 * (1.0 + 0.5);
        assert_relative_eq!(value, expected, max_relative = 1e-12);
    }

    #[test]
    fn polynomial_trace_matches_eigenvalue_evaluation() {
        let y = seeded_matrix(9, 9, EntryModelKind::GaussianComplex, 43);
        let w = build_w(&y, 9);
        let y_ratio = rat(1, 1);
        let sigma_sq = rat(5, 4);
        for k in 2..=4 {
            let via_traces = trace_gamma(&w, k, &y_ratio, &sigma_sq).expect("trace path");
            let poly = gamma_scaled(k, &y_ratio, &sigma_sq);
            let via_eigs: f64 = w
                .eigenvalues()
                .expect("eigenvalues")
                .iter()
                .map(|&l| poly.eval_f64(l))
                .sum();
            assert_relative_eq!(via_traces, via_eigs, max_relative = 1e-10);
        }
    }

    #[test]
    fn polynomial_trace_guards() {
        let y = EntryMatrix::Real(DMatrix::zeros(2, 2));
        let w = build_w(&y, 2);
        assert!(matches!(
            trace_gamma(&w, MAX_GAMMA_TRACE_ORDER + 1, &rat(1, 1), &rat(1, 1)),
            Err(Error::SizeLimit { .. })
        ));
        assert!(matches!(
            trace_gamma(&w, 2, &rat(-1, 2), &rat(1, 1)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            trace_gamma(&w, 2, &rat(1, 2), &rat(0, 1)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn precomputed_powers_reproduce_the_polynomial_trace() {
        let y = seeded_matrix(5, 10, EntryModelKind::GaussianReal, 44);
        let w = build_w(&y, 10);
        let y_ratio = rat(1, 2);
        let sigma_sq = rat(2, 1);
        let powers = trace_powers(&w, 6).expect("powers");
        for k in 0..=6 {
            let direct = trace_gamma(&w, k, &y_ratio, &sigma_sq).expect("direct");
            let reused = gamma_trace_from_powers(&powers, w.s(), k, &y_ratio, &sigma_sq);
            assert_relative_eq!(direct, reused, max_relative = 1e-14);
        }
    }

    #[test]
    fn seed_annotation_round_trips() {
        let y = EntryMatrix::Real(DMatrix::zeros(2, 3));
        let w = build_w(&y, 4);
        assert_eq!(w.source_seed(), None);
        let w = w.with_source_seed(99);
        assert_eq!(w.source_seed(), Some(99));
    }

    #[test]
    #[should_panic(expected = "sample size n must be at least 1")]
    fn zero_sample_size_is_rejected() {
        let y = EntryMatrix::Real(DMatrix::zeros(2, 2));
        let _ = build_w(&y, 0);
    }
}

//! Sampling dependent random matrices: fills a dependence structure with
//! entries drawn from an entry model, using a counter-keyed substream per
//! (class, member) so that distinct classes are structurally independent
//! and results do not depend on evaluation order.

use nalgebra::{Complex, DMatrix};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

use super::model::{EntryModel, EntryModelKind};
use super::rng::SplitMix64;
use super::structure::DependenceStructure;

/// Tag separating the per-class stream (shared draws) from per-member
/// streams in the substream key space.
const CLASS_STREAM_TAG: u64 = u64::MAX;

/// A sampled `s × t` data matrix, stored real or complex according to the
/// entry model that produced it. Indices are 0-based, matching matrix
/// conventions (the dependence structure's `(p, q)` are 1-based).
#[derive(Clone, Debug, PartialEq)]
pub enum EntryMatrix {
    /// Real-valued entries.
    Real(DMatrix<f64>),
    /// Complex-valued entries.
    Complex(DMatrix<Complex<f64>>),
}

impl EntryMatrix {
    /// Number of rows `s`.
    pub fn nrows(&self) -> usize {
        match self {
            EntryMatrix::Real(m) => m.nrows(),
            EntryMatrix::Complex(m) => m.nrows(),
        }
    }

    /// Number of columns `t`.
    pub fn ncols(&self) -> usize {
        match self {
            EntryMatrix::Real(m) => m.ncols(),
            EntryMatrix::Complex(m) => m.ncols(),
        }
    }

    /// Whether the storage is complex.
    pub fn is_complex(&self) -> bool {
        matches!(self, EntryMatrix::Complex(_))
    }

    /// Entry at 0-based `(row, col)`, as a complex number in either case.
    pub fn entry(&self, row: usize, col: usize) -> Complex<f64> {
        match self {
            EntryMatrix::Real(m) => Complex::new(m[(row, col)], 0.0),
            EntryMatrix::Complex(m) => m[(row, col)],
        }
    }

    /// The real storage, if this matrix is real.
    pub fn as_real(&self) -> Option<&DMatrix<f64>> {
        match self {
            EntryMatrix::Real(m) => Some(m),
            EntryMatrix::Complex(_) => None,
        }
    }

    /// The complex storage, if this matrix is complex.
    pub fn as_complex(&self) -> Option<&DMatrix<Complex<f64>>> {
        match self {
            EntryMatrix::Real(_) => None,
            EntryMatrix::Complex(m) => Some(m),
        }
    }

    /// Sum of squared moduli of all entries.
    pub fn sum_abs_sq(&self) -> f64 {
        match self {
            EntryMatrix::Real(m) => m.iter().map(|v| v * v).sum(),
            EntryMatrix::Complex(m) => m.iter().map(|z| z.norm_sqr()).sum(),
        }
    }
}

/// Draws one matrix: each class of the structure is filled from its own
/// keyed substream according to the model's within-class law, so the
/// result is a pure function of `(structure, model, seed)` and distinct
/// classes never share randomness.
pub fn sample_matrix(
    d: &DependenceStructure,
    model: &EntryModel,
    seed: u64,
) -> Result<EntryMatrix> {
    let (s, t) = (d.s(), d.t());
    let sigma = model.variance().sqrt();

    if model.is_complex() {
        let mut m = DMatrix::<Complex<f64>>::zeros(s, t);
        let half = sigma / std::f64::consts::SQRT_2;
        for id in 0..d.num_classes() {
            for (idx, &(p, q)) in d.class_members(id).iter().enumerate() {
                let mut rng = SplitMix64::substream(seed, &[id as u64, idx as u64]);
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                m[(p - 1, q - 1)] = Complex::new(half * re, half * im);
            }
        }
        return Ok(EntryMatrix::Complex(m));
    }

    let mut m = DMatrix::<f64>::zeros(s, t);
    for id in 0..d.num_classes() {
        let members = d.class_members(id);
        match model.kind() {
            EntryModelKind::GaussianReal => {
                for (idx, &(p, q)) in members.iter().enumerate() {
                    let mut rng = SplitMix64::substream(seed, &[id as u64, idx as u64]);
                    let z: f64 = rng.sample(StandardNormal);
                    m[(p - 1, q - 1)] = sigma * z;
                }
            }
            EntryModelKind::Rademacher => {
                for (idx, &(p, q)) in members.iter().enumerate() {
                    let mut rng = SplitMix64::substream(seed, &[id as u64, idx as u64]);
                    let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                    m[(p - 1, q - 1)] = sigma * sign;
                }
            }
            EntryModelKind::ClassConstant => {
                let mut rng = SplitMix64::substream(seed, &[id as u64, CLASS_STREAM_TAG]);
                let z: f64 = rng.sample(StandardNormal);
                let value = sigma * z;
                for &(p, q) in members {
                    m[(p - 1, q - 1)] = value;
                }
            }
            EntryModelKind::ClassCorrelated { rho } => {
                let size = members.len() as f64;
                let tail = 1.0 - rho + size * rho; // 1 + (m−1)ρ
                if tail < 0.0 {
                    return Err(Error::Domain(format!(
                        "correlation {rho} is not realizable on a class of size {}: \
                         the equicorrelation matrix is not positive semidefinite",
                        members.len()
                    )));
                }
                let u = (1.0 - rho).sqrt();
                let c = (tail.sqrt() - u) / size;
                let draws: Vec<f64> = members
                    .iter()
                    .enumerate()
                    .map(|(idx, _)| {
                        let mut rng =
                            SplitMix64::substream(seed, &[id as u64, idx as u64]);
                        rng.sample(StandardNormal)
                    })
                    .collect();
                let total: f64 = draws.iter().sum();
                for (idx, &(p, q)) in members.iter().enumerate() {
                    m[(p - 1, q - 1)] = sigma * (u * draws[idx] + c * total);
                }
            }
            EntryModelKind::GaussianComplex => unreachable!("handled above"),
        }
    }
    Ok(EntryMatrix::Real(m))
}

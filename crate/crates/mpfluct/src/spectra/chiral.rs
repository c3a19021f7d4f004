//! The chiral block embedding of a data matrix and the index relation it
//! induces on the enlarged grid.

use std::collections::HashMap;
use std::sync::OnceLock;

use nalgebra::{Complex, DMatrix};

use crate::ensembles::{DependenceStructure, EntryMatrix};
use crate::{Error, Result};

/// Largest enlarged grid side `s + t` accepted by
/// [`induced_chiral_relation`] (exhaustive scans stay cheap below this).
pub const MAX_CHIRAL_POINTS: usize = 256;

/// Largest exponent accepted by [`ChiralMatrix::trace_powers`]; even powers
/// `2k` of the embedding cover covariance powers up to `k = 20`.
pub const MAX_CHIRAL_TRACE_POWER: usize = 40;

/// Iteration cap for the symmetric eigensolver before reporting a numeric
/// failure.
const EIGEN_MAX_ITER: usize = 100_000;

/// The `(s + t) × (s + t)` Hermitian matrix with zero diagonal blocks whose
/// upper-right block is the data matrix `Y` and whose lower-left block is
/// `Y*`.
///
/// The block is stored unscaled; the `1/sqrt(n)` entry normalization is
/// applied inside [`Self::trace_powers`], so that even power traces of the
/// scaled embedding equal twice the power traces of `W = (1/n) Y Y*`.
#[derive(Clone, Debug)]
pub struct ChiralMatrix {
    y: EntryMatrix,
    s: usize,
    t: usize,
    unscaled_eigenvalues: OnceLock<Vec<f64>>,
}

/// Embeds a data matrix into its chiral block form.
pub fn chiral_embed(y: &EntryMatrix) -> ChiralMatrix {
    ChiralMatrix {
        s: y.nrows(),
        t: y.ncols(),
        y: y.clone(),
        unscaled_eigenvalues: OnceLock::new(),
    }
}

impl ChiralMatrix {
    /// Number of rows `s` of the stored block.
    pub fn s(&self) -> usize {
        self.s
    }

    /// Number of columns `t` of the stored block.
    pub fn t(&self) -> usize {
        self.t
    }

    /// Side length `s + t` of the embedding.
    pub fn dim(&self) -> usize {
        self.s + self.t
    }

    /// Whether the stored block is complex-valued.
    pub fn is_complex(&self) -> bool {
        self.y.is_complex()
    }

    /// The stored data block.
    pub fn block(&self) -> &EntryMatrix {
        &self.y
    }

    /// Entry accessor (0-based) of the unscaled embedding: zero on both
    /// diagonal blocks, `Y` upper right, `Y*` lower left.
    ///
    /// # Panics
    ///
    /// Panics if an index is out of range.
    pub fn entry(&self, row: usize, col: usize) -> Complex<f64> {
        let (s, dim) = (self.s, self.dim());
        assert!(row < dim && col < dim, "chiral index out of range");
        if row < s && col >= s {
            self.y.entry(row, col - s)
        } else if row >= s && col < s {
            self.y.entry(col, row - s).conj()
        } else {
            Complex::new(0.0, 0.0)
        }
    }

    /// Eigenvalues of the unscaled embedding, computed on first use and
    /// cached; scaling by `1/sqrt(n)` commutes with the spectrum.
    fn unscaled_eigenvalue_slice(&self) -> Result<&[f64]> {
        if self.unscaled_eigenvalues.get().is_none() {
            let computed = self.compute_unscaled_eigenvalues()?;
            let _ = self.unscaled_eigenvalues.set(computed);
        }
        Ok(self
            .unscaled_eigenvalues
            .get()
            .expect("eigenvalues cached above")
            .as_slice())
    }

    fn compute_unscaled_eigenvalues(&self) -> Result<Vec<f64>> {
        let (s, t, dim) = (self.s, self.t, self.dim());
        match &self.y {
            EntryMatrix::Real(m) => {
                let mut h = DMatrix::<f64>::zeros(dim, dim);
                h.view_mut((0, s), (s, t)).copy_from(m);
                h.view_mut((s, 0), (t, s)).copy_from(&m.transpose());
                Ok(h.try_symmetric_eigen(f64::EPSILON, EIGEN_MAX_ITER)
                    .ok_or_else(|| {
                        Error::Numeric("symmetric eigensolver did not converge".into())
                    })?
                    .eigenvalues
                    .iter()
                    .copied()
                    .collect())
            }
            EntryMatrix::Complex(m) => {
                let mut h = DMatrix::<Complex<f64>>::zeros(dim, dim);
                h.view_mut((0, s), (s, t)).copy_from(m);
                h.view_mut((s, 0), (t, s)).copy_from(&m.adjoint());
                Ok(h.try_symmetric_eigen(f64::EPSILON, EIGEN_MAX_ITER)
                    .ok_or_else(|| {
                        Error::Numeric("Hermitian eigensolver did not converge".into())
                    })?
                    .eigenvalues
                    .iter()
                    .copied()
                    .collect())
            }
        }
    }

    /// Power traces `tr(H^j)` of the `1/sqrt(n)`-scaled embedding for
    /// `j = 1..=k_max`, computed from its eigenvalue spectrum.
    ///
    /// # Errors
    ///
    /// [`Error::SizeLimit`] if `k_max` exceeds [`MAX_CHIRAL_TRACE_POWER`];
    /// [`Error::Domain`] if `n` is zero; [`Error::Numeric`] if the
    /// eigensolver fails.
    pub fn trace_powers(&self, n: usize, k_max: usize) -> Result<Vec<f64>> {
        if k_max > MAX_CHIRAL_TRACE_POWER {
            return Err(Error::SizeLimit {
                what: "chiral trace power",
                got: k_max,
                limit: MAX_CHIRAL_TRACE_POWER,
            });
        }
        if n == 0 {
            return Err(Error::Domain("sample size n must be at least 1".into()));
        }
        let scale = 1.0 / (n as f64).sqrt();
        let eigs: Vec<f64> = self
            .unscaled_eigenvalue_slice()?
            .iter()
            .map(|&l| l * scale)
            .collect();
        let mut running = eigs.clone();
        let mut out = Vec::with_capacity(k_max);
        for _ in 1..=k_max {
            out.push(running.iter().sum());
            for (r, &l) in running.iter_mut().zip(&eigs) {
                *r *= l;
            }
        }
        Ok(out)
    }

    /// Spectral norm (largest absolute eigenvalue) of the `1/sqrt(n)`-scaled
    /// embedding; useful for absolute trace tolerances.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] if `n` is zero; [`Error::Numeric`] if the
    /// eigensolver fails.
    pub fn spectral_norm(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Err(Error::Domain("sample size n must be at least 1".into()));
        }
        let scale = 1.0 / (n as f64).sqrt();
        Ok(self
            .unscaled_eigenvalue_slice()?
            .iter()
            .fold(0.0_f64, |acc, &l| acc.max(l.abs() * scale)))
    }
}

/// Whether a 1-based point of the enlarged `[s + t]²` grid lies in the
/// zero-block diagonal region `[s]² ∪ [s+1, s+t]²`.
pub fn in_diagonal_region(point: (usize, usize), s: usize) -> bool {
    let (p, q) = point;
    (p <= s) == (q <= s)
}

/// The index map from the off-diagonal blocks of the enlarged grid back to
/// the `[s] × [t]` grid of the data matrix (all indices 1-based):
/// `(p, q) ↦ (p, q - s)` when `q > s`, and `(p, q) ↦ (q, p - s)` when
/// `p > s`.
///
/// # Errors
///
/// [`Error::Domain`] if the point lies outside `[s + t]²` or inside the
/// zero-block diagonal region.
pub fn psi(point: (usize, usize), s: usize, t: usize) -> Result<(usize, usize)> {
    let (p, q) = point;
    let dim = s + t;
    if p < 1 || p > dim || q < 1 || q > dim {
        return Err(Error::Domain(format!(
            "index ({p}, {q}) outside the enlarged grid of side {dim}"
        )));
    }
    if q > s && p <= s {
        Ok((p, q - s))
    } else if p > s && q <= s {
        Ok((q, p - s))
    } else {
        Err(Error::Domain(format!(
            "index ({p}, {q}) lies in the zero-block diagonal region"
        )))
    }
}

/// The equivalence relation induced on the enlarged `[s + t]²` grid by a
/// dependence structure on `[s] × [t]`: off-diagonal points are equivalent
/// exactly when their images under [`psi`] are, and each diagonal-region
/// pair `{(p, q), (q, p)}` forms its own class.
///
/// Carries the two exhaustively computed dependence statistics of the
/// enlarged grid: `alpha0_hat` (ordered triples `(p, p', q)` with
/// `(p, q) ~ (q, p')` and `p ≠ p'`) and `alpha2` (largest class size).
#[derive(Clone, Debug)]
pub struct ChiralRelation {
    side: usize,
    s: usize,
    class_of: Vec<u32>,
    classes: Vec<Vec<(usize, usize)>>,
    alpha0_hat: u64,
    alpha2: u64,
}

/// Builds the induced relation and its α statistics.
///
/// # Errors
///
/// [`Error::SizeLimit`] if `s + t` exceeds [`MAX_CHIRAL_POINTS`].
pub fn induced_chiral_relation(d: &DependenceStructure) -> Result<ChiralRelation> {
    let (s, t) = (d.s(), d.t());
    let side = s + t;
    if side > MAX_CHIRAL_POINTS {
        return Err(Error::SizeLimit {
            what: "enlarged grid side s + t",
            got: side,
            limit: MAX_CHIRAL_POINTS,
        });
    }

    // Class keys: diagonal-region pairs keyed by the unordered index pair,
    // off-diagonal points keyed by the underlying class id.
    let mut ids: HashMap<(bool, usize, usize), u32> = HashMap::new();
    let mut class_of = vec![0_u32; side * side];
    let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
    for p in 1..=side {
        for q in 1..=side {
            let key = if in_diagonal_region((p, q), s) {
                (true, p.min(q), p.max(q))
            } else {
                let (a, b) = psi((p, q), s, t).expect("off-diagonal point maps through psi");
                (false, d.class_id(a, b), 0)
            };
            let next = classes.len() as u32;
            let id = *ids.entry(key).or_insert_with(|| {
                classes.push(Vec::new());
                next
            });
            class_of[(p - 1) * side + (q - 1)] = id;
            classes[id as usize].push((p, q));
        }
    }

    let alpha2 = classes.iter().map(|c| c.len() as u64).max().unwrap_or(0);

    // alpha0_hat: for each q, group column entries (p, q) and row entries
    // (q, p') by class, multiply matching group sizes, and drop the p = p'
    // coincidences.
    let mut alpha0_hat = 0_u64;
    for q in 1..=side {
        let mut col: HashMap<u32, Vec<usize>> = HashMap::new();
        let mut row: HashMap<u32, Vec<usize>> = HashMap::new();
        for p in 1..=side {
            col.entry(class_of[(p - 1) * side + (q - 1)])
                .or_default()
                .push(p);
            row.entry(class_of[(q - 1) * side + (p - 1)])
                .or_default()
                .push(p);
        }
        for (id, ps) in &col {
            if let Some(pps) = row.get(id) {
                let coincide = ps.iter().filter(|p| pps.contains(p)).count() as u64;
                alpha0_hat += ps.len() as u64 * pps.len() as u64 - coincide;
            }
        }
    }

    Ok(ChiralRelation {
        side,
        s,
        class_of,
        classes,
        alpha0_hat,
        alpha2,
    })
}

impl ChiralRelation {
    /// Side length `s + t` of the enlarged grid.
    pub fn side(&self) -> usize {
        self.side
    }

    /// Number of classes of the induced relation.
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Class id of a 1-based point of the enlarged grid.
    ///
    /// # Panics
    ///
    /// Panics if an index is out of range.
    pub fn class_id(&self, p: usize, q: usize) -> u32 {
        assert!(
            (1..=self.side).contains(&p) && (1..=self.side).contains(&q),
            "enlarged grid index out of range"
        );
        self.class_of[(p - 1) * self.side + (q - 1)]
    }

    /// Whether two points of the enlarged grid are equivalent.
    pub fn same_class(&self, a: (usize, usize), b: (usize, usize)) -> bool {
        self.class_id(a.0, a.1) == self.class_id(b.0, b.1)
    }

    /// Members of a class, in row-major order of first appearance.
    ///
    /// # Panics
    ///
    /// Panics if the class id is out of range.
    pub fn class_members(&self, id: u32) -> &[(usize, usize)] {
        &self.classes[id as usize]
    }

    /// Whether a point lies in the zero-block diagonal region.
    pub fn is_diagonal_point(&self, p: usize, q: usize) -> bool {
        in_diagonal_region((p, q), self.s)
    }

    /// Count of ordered triples `(p, p', q)` with `(p, q) ~ (q, p')` and
    /// `p ≠ p'`; bounded by twice the corresponding count of the underlying
    /// structure.
    pub fn alpha0_hat(&self) -> u64 {
        self.alpha0_hat
    }

    /// Largest class size; equals exactly twice the largest class size of
    /// the underlying structure.
    pub fn alpha2(&self) -> u64 {
        self.alpha2
    }
}

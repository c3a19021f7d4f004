//! Joint cumulants via the moment–cumulant transform, plus plug-in
//! estimation of cumulants from replicate samples with batch-means
//! standard errors.
//!
//! The transform is the alternating sum over set partitions
//! `C_j(X_1,…,X_j) = Σ_π (−1)^{#π−1} (#π−1)! Π_{B∈π} E(Π_{i∈B} X_i)`,
//! evaluated from a table of mixed moments. Estimation plugs empirical
//! mixed moments into the same formula; the estimator is biased at order
//! `O(1/R)` over `R` replicates, which downstream tolerances account for.

use crate::error::{Error, Result};
use crate::partitions::enumerate_set_partitions;

/// Largest order accepted by [`MomentTable`] and
/// [`cumulant_from_moments`] (the set-partition enumeration grows as the
/// Bell numbers).
pub const MAX_CUMULANT_ORDER: usize = 8;

/// Largest order accepted by [`estimate_joint_cumulant`].
pub const MAX_ESTIMATE_ORDER: usize = 6;

/// Table of mixed moments `E(Π_{i∈S} X_i)` for every nonempty subset `S`
/// of the slots `{1, …, j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentTable {
    order: usize,
    /// Indexed by subset bitmask (bit `i−1` set means slot `i` is in the
    /// subset); entry 0 holds the empty product 1.
    moments: Vec<f64>,
}

impl MomentTable {
    fn check_order(order: usize) -> Result<()> {
        if order == 0 {
            return Err(Error::Domain("moment table order must be at least 1".into()));
        }
        if order > MAX_CUMULANT_ORDER {
            return Err(Error::SizeLimit {
                what: "moment table order",
                got: order,
                limit: MAX_CUMULANT_ORDER,
            });
        }
        Ok(())
    }

    /// Builds a table by evaluating `f` on every nonempty subset of
    /// `{1, …, order}`, passed as a sorted slice of 1-based slots.
    pub fn from_fn(order: usize, mut f: impl FnMut(&[usize]) -> f64) -> Result<Self> {
        Self::check_order(order)?;
        let mut moments = vec![1.0; 1 << order];
        let mut subset = Vec::with_capacity(order);
        for mask in 1u32..(1 << order) as u32 {
            subset.clear();
            for i in 1..=order {
                if mask & (1 << (i - 1)) != 0 {
                    subset.push(i);
                }
            }
            moments[mask as usize] = f(&subset);
        }
        Ok(MomentTable { order, moments })
    }

    /// Table of a single variable repeated in every slot, from its raw
    /// power moments: `powers[k−1] = E(X^k)`, so a subset of size `k` maps
    /// to `powers[k−1]`. Requires `powers.len() == order`.
    pub fn from_power_moments(order: usize, powers: &[f64]) -> Result<Self> {
        Self::check_order(order)?;
        if powers.len() != order {
            return Err(Error::Domain(format!(
                "need exactly {order} power moments, got {}",
                powers.len()
            )));
        }
        Self::from_fn(order, |subset| powers[subset.len() - 1])
    }

    /// Empirical table: for each nonempty subset `S` of the selected
    /// columns, the sample mean of `Π_{i∈S} samples[r][which[i]]` over all
    /// rows `r`.
    pub fn from_samples(samples: &SampleMatrix, which: &[usize]) -> Result<Self> {
        Self::check_order(which.len())?;
        for &c in which {
            if c >= samples.num_cols() {
                return Err(Error::Domain(format!(
                    "column index {c} out of range for a matrix with {} columns",
                    samples.num_cols()
                )));
            }
        }
        Ok(empirical_table(samples, which, 0, samples.num_rows()))
    }

    /// Number of slots `j`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Mixed moment of the subset given as 1-based slot indices; the
    /// slice must be nonempty, sorted not required, duplicates rejected.
    ///
    /// # Panics
    ///
    /// Panics if the subset is empty, repeats a slot, or mentions a slot
    /// outside `1..=order()`.
    pub fn moment(&self, subset: &[usize]) -> f64 {
        assert!(!subset.is_empty(), "moment subset must be nonempty");
        let mut mask = 0usize;
        for &i in subset {
            assert!(
                (1..=self.order).contains(&i),
                "slot {i} outside 1..={}",
                self.order
            );
            assert!(mask & (1 << (i - 1)) == 0, "slot {i} repeated in subset");
            mask |= 1 << (i - 1);
        }
        self.moments[mask]
    }

    fn moment_by_mask(&self, mask: usize) -> f64 {
        self.moments[mask]
    }
}

/// Replicate-by-statistic matrix of real samples, stored row-major; rows
/// are replicates, columns are the jointly observed statistics.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleMatrix {
    cols: usize,
    data: Vec<f64>,
}

impl SampleMatrix {
    /// Builds a matrix from rows of equal nonzero length; every value
    /// must be finite.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::Domain("sample matrix needs at least one row".into()))?;
        let cols = first.len();
        if cols == 0 {
            return Err(Error::Domain("sample matrix needs at least one column".into()));
        }
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Domain(format!(
                    "row {r} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for &v in row {
                if !v.is_finite() {
                    return Err(Error::Numeric(format!(
                        "sample matrix contains a non-finite value in row {r}"
                    )));
                }
                data.push(v);
            }
        }
        Ok(SampleMatrix { cols, data })
    }

    /// Number of replicate rows.
    pub fn num_rows(&self) -> usize {
        self.data.len() / self.cols
    }

    /// Number of statistic columns.
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    /// Entry in row `r`, column `c`.
    ///
    /// # Panics
    ///
    /// Panics if the indices are out of range.
    pub fn value(&self, r: usize, c: usize) -> f64 {
        assert!(c < self.cols, "column {c} out of range");
        self.data[r * self.cols + c]
    }
}

/// Joint-cumulant estimate together with its batch-means standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CumulantEstimate {
    /// Plug-in estimate of the cumulant.
    pub value: f64,
    /// Batch-means standard error; zero only for degenerate samples.
    pub std_error: f64,
    /// Order `j` of the estimated cumulant.
    pub order: usize,
    /// Number of replicate rows that entered the estimate.
    pub replicate_count: usize,
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Joint cumulant of the slots of a [`MomentTable`]: the alternating sum
/// `Σ_π (−1)^{#π−1} (#π−1)! Π_{B∈π} E(Π_{i∈B} X_i)` over all set
/// partitions `π` of the slots.
pub fn cumulant_from_moments(table: &MomentTable) -> f64 {
    let partitions = enumerate_set_partitions(table.order())
        .expect("table order is validated at construction");
    let mut acc = 0.0;
    for pi in &partitions {
        let blocks = pi.blocks();
        let sign = if (blocks.len() - 1) % 2 == 0 { 1.0 } else { -1.0 };
        let mut term = sign * factorial(blocks.len() - 1);
        for block in &blocks {
            let mask = block.iter().fold(0usize, |m, &i| m | (1 << (i - 1)));
            term *= table.moment_by_mask(mask);
        }
        acc += term;
    }
    acc
}

/// Empirical moment table over the half-open row range `[lo, hi)`.
fn empirical_table(
    samples: &SampleMatrix,
    which: &[usize],
    lo: usize,
    hi: usize,
) -> MomentTable {
    let j = which.len();
    let size = 1usize << j;
    let mut sums = vec![0.0; size];
    let mut prods = vec![1.0; size];
    for r in lo..hi {
        for mask in 1..size {
            let low_bit = mask.trailing_zeros() as usize;
            prods[mask] = prods[mask & (mask - 1)] * samples.value(r, which[low_bit]);
        }
        for mask in 1..size {
            sums[mask] += prods[mask];
        }
    }
    let count = (hi - lo) as f64;
    let mut moments = vec![1.0; size];
    for mask in 1..size {
        moments[mask] = sums[mask] / count;
    }
    MomentTable {
        order: j,
        moments,
    }
}

/// Estimates the joint cumulant of the sample columns selected by
/// `which` (a multiset of 0-based column indices; repeats raise the
/// order in that variable).
///
/// The estimate plugs empirical mixed moments into
/// [`cumulant_from_moments`]. The standard error comes from batch means:
/// the rows are split into `⌈√R⌉` contiguous batches, the plug-in
/// estimator is recomputed per batch, and the spread of the batch values
/// is scaled down by the square root of the number of batches.
pub fn estimate_joint_cumulant(
    samples: &SampleMatrix,
    which: &[usize],
) -> Result<CumulantEstimate> {
    let order = which.len();
    if order == 0 {
        return Err(Error::Domain("cumulant order must be at least 1".into()));
    }
    if order > MAX_ESTIMATE_ORDER {
        return Err(Error::SizeLimit {
            what: "estimated cumulant order",
            got: order,
            limit: MAX_ESTIMATE_ORDER,
        });
    }
    for &c in which {
        if c >= samples.num_cols() {
            return Err(Error::Domain(format!(
                "column index {c} out of range for a matrix with {} columns",
                samples.num_cols()
            )));
        }
    }
    let r = samples.num_rows();
    if r < 2 {
        return Err(Error::InsufficientData(format!(
            "cumulant estimation needs at least 2 replicates, got {r}"
        )));
    }

    let value = cumulant_from_moments(&empirical_table(samples, which, 0, r));

    let num_batches = (r as f64).sqrt().ceil() as usize;
    let mut batch_values = Vec::with_capacity(num_batches);
    for b in 0..num_batches {
        let lo = b * r / num_batches;
        let hi = (b + 1) * r / num_batches;
        if lo < hi {
            batch_values.push(cumulant_from_moments(&empirical_table(
                samples, which, lo, hi,
            )));
        }
    }
    let nb = batch_values.len() as f64;
    let mean = batch_values.iter().sum::<f64>() / nb;
    let var = batch_values
        .iter()
        .map(|v| (v - mean) * (v - mean))
        .sum::<f64>()
        / (nb - 1.0);
    let std_error = (var / nb).sqrt();

    Ok(CumulantEstimate {
        value,
        std_error,
        order,
        replicate_count: r,
    })
}

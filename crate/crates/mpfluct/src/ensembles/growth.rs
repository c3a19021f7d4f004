//! Growth-condition reporting: evaluates the β statistics of a structure
//! family along a dimension sweep, fits log-log slopes, and flags —
//! advisorily, not as a proof — whether the empirical growth is
//! consistent with the two hypotheses of the fluctuation theorem:
//! (a) the largest class stays subpolynomial, and (b) the coincidence
//! count times any power of the class size stays below the grid area.

use crate::error::{Error, Result};

use super::structure::{beta_stats, BetaStats, DependenceStructure};

/// Parametric structure families that can be instantiated at any grid
/// size, for dimension sweeps. (A fixed custom relation cannot follow a
/// sweep, so it is deliberately not representable here.)
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureFamily {
    /// Singleton classes at every size.
    Independent,
    /// Row-wise blocks of the given number of consecutive columns.
    ColumnBlock(usize),
    /// Consecutive row pairing.
    RowPair,
    /// Tiles of the given width × height.
    DuplicatePatch(usize, usize),
}

impl StructureFamily {
    /// Builds the family member on an `s × t` grid.
    pub fn instantiate(&self, s: usize, t: usize) -> Result<DependenceStructure> {
        match *self {
            StructureFamily::Independent => DependenceStructure::independent(s, t),
            StructureFamily::ColumnBlock(b) => DependenceStructure::column_block(s, t, b),
            StructureFamily::RowPair => DependenceStructure::row_pair(s, t),
            StructureFamily::DuplicatePatch(w, h) => {
                DependenceStructure::duplicate_patch(s, t, w, h)
            }
        }
    }
}

impl std::fmt::Display for StructureFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StructureFamily::Independent => write!(f, "independent"),
            StructureFamily::ColumnBlock(b) => write!(f, "column_block({b})"),
            StructureFamily::RowPair => write!(f, "row_pair"),
            StructureFamily::DuplicatePatch(w, h) => write!(f, "duplicate_patch({w},{h})"),
        }
    }
}

/// β statistics of one sweep point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrowthRow {
    /// Normalisation parameter of this point.
    pub n: usize,
    /// Grid rows.
    pub s: usize,
    /// Grid columns.
    pub t: usize,
    /// The four growth statistics at this size.
    pub betas: BetaStats,
}

/// Outcome of a dimension sweep: the per-size β table, fitted log-log
/// slopes, and advisory hypothesis flags.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    /// Family that was swept, for labelling.
    pub family: String,
    /// One row per sweep point, in the order given.
    pub rows: Vec<GrowthRow>,
    /// Least-squares slopes of `ln β_i` against `ln n` for i = 0..3
    /// (zero counts enter as 1 so their logarithm is 0).
    pub slopes: [f64; 4],
    /// Whether the sweep is consistent with the subpolynomial-class
    /// hypothesis (advisory).
    pub hypothesis_a_ok: bool,
    /// Whether the sweep is consistent with the coincidence-growth
    /// hypothesis (advisory).
    pub hypothesis_b_ok: bool,
}

/// Slope above which β₂ is no longer treated as subpolynomial.
const SLOPE_A_THRESHOLD: f64 = 0.25;
/// Slope above which β₀ is treated as filling the n² grid.
const SLOPE_B_THRESHOLD: f64 = 1.9;

fn fitted_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for &(x, y) in points {
        num += (x - mean_x) * (y - mean_y);
        den += (x - mean_x) * (x - mean_x);
    }
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Sweeps a structure family over the given `(n, s, t)` dimension
/// triples, tabulating β statistics and fitting log-log growth slopes.
///
/// Requires at least three distinct values of `n`. The hypothesis flags
/// use fixed slope thresholds (β₂ slope below 0.25 for (a); additionally
/// β₀ slope below 1.9 for (b)) — empirical indicators only, never proofs.
pub fn growth_report(
    dims: &[(usize, usize, usize)],
    family: &StructureFamily,
) -> Result<GrowthReport> {
    let mut distinct: Vec<usize> = dims.iter().map(|d| d.0).collect();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::Domain(format!(
            "growth report needs at least 3 distinct n values, got {}",
            distinct.len()
        )));
    }
    if dims.iter().any(|&(n, _, _)| n == 0) {
        return Err(Error::Domain("n must be positive".into()));
    }

    let mut rows = Vec::with_capacity(dims.len());
    for &(n, s, t) in dims {
        let structure = family.instantiate(s, t)?;
        rows.push(GrowthRow {
            n,
            s,
            t,
            betas: beta_stats(&structure),
        });
    }

    let slope_of = |pick: fn(&BetaStats) -> u64| -> f64 {
        let points: Vec<(f64, f64)> = rows
            .iter()
            .map(|r| {
                let beta = pick(&r.betas).max(1) as f64;
                ((r.n as f64).ln(), beta.ln())
            })
            .collect();
        fitted_slope(&points)
    };
    let slopes = [
        slope_of(|b| b.beta0),
        slope_of(|b| b.beta1),
        slope_of(|b| b.beta2),
        slope_of(|b| b.beta3),
    ];

    let hypothesis_a_ok = slopes[2] < SLOPE_A_THRESHOLD;
    let hypothesis_b_ok = hypothesis_a_ok && slopes[0] < SLOPE_B_THRESHOLD;

    Ok(GrowthReport {
        family: family.to_string(),
        rows,
        slopes,
        hypothesis_a_ok,
        hypothesis_b_ok,
    })
}

/// Scale-free single-size proxies for the two hypotheses, for reports
/// that only see one grid: (a) is flagged when the largest class exceeds
/// `n/4`, (b) additionally when `β₀·β₂` reaches `n²`. Advisory only.
pub fn hypothesis_flags(n: usize, betas: &BetaStats) -> (bool, bool) {
    let a_ok = betas.beta2 <= (n as u64) / 4;
    let b_ok = a_ok && betas.beta0.saturating_mul(betas.beta2) < (n as u64).pow(2);
    (a_ok, b_ok)
}

//! Replicated sampling experiments: draw matrices, record trace
//! statistics per replicate, and aggregate means, covariances, and
//! standardized higher cumulants deterministically.

use num::BigRational;
use rayon::prelude::*;

use crate::cumulants::{estimate_joint_cumulant, CumulantEstimate, SampleMatrix};
use crate::ensembles::{sample_matrix, substream_seed, DependenceStructure, EntryModel};
use crate::montecarlo::config::ExperimentConfig;
use crate::spectra::{build_w, gamma_trace_from_powers, trace_powers};
use crate::{Error, Result};

/// Minimum replicate count for an experiment.
pub const MIN_REPLICATES: usize = 100;

/// Largest tolerated fraction of aborted replicates.
pub const MAX_ABORT_FRACTION: f64 = 0.01;

/// Covariance estimate between two recorded statistics, indexed into the
/// report's statistic list.
#[derive(Clone, Debug)]
pub struct PairCovariance {
    /// Column index of the first statistic.
    pub left: usize,
    /// Column index of the second statistic (`left ≤ right`).
    pub right: usize,
    /// Joint second-cumulant estimate with its standard error.
    pub estimate: CumulantEstimate,
}

/// Aggregated output of [`run_clt_experiment`]: everything is a pure
/// function of the configuration, independent of thread count.
#[derive(Clone, Debug)]
pub struct CltReport {
    /// The configuration that produced this report.
    pub config: ExperimentConfig,
    /// Names of the recorded statistics, in column order: `tr_w_{k}` for
    /// each requested power, then `tr_gamma_{j}` for each requested
    /// polynomial order.
    pub statistic_names: Vec<String>,
    /// Replicates that completed and entered the aggregation.
    pub replicates_used: usize,
    /// Replicates aborted by numeric failures.
    pub replicates_aborted: usize,
    /// Mean of each statistic, with batch-means standard errors.
    pub means: Vec<CumulantEstimate>,
    /// Covariance of every unordered pair of statistics.
    pub covariances: Vec<PairCovariance>,
    /// Third cumulant of each statistic after centering by its sample
    /// mean and scaling by its sample standard deviation (a degenerate
    /// statistic with zero spread standardizes to the zero column).
    pub standardized_third: Vec<CumulantEstimate>,
    /// Fourth cumulant of each standardized statistic.
    pub standardized_fourth: Vec<CumulantEstimate>,
    /// Raw statistic values, one row per completed replicate, in
    /// replicate order.
    pub values_by_replicate: Vec<Vec<f64>>,
}

impl CltReport {
    /// The covariance entry for a pair of statistic columns, in either
    /// order.
    pub fn covariance_between(&self, i: usize, j: usize) -> Option<&PairCovariance> {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        self.covariances
            .iter()
            .find(|pc| pc.left == lo && pc.right == hi)
    }

    /// Column index of a statistic by name.
    pub fn column_of(&self, name: &str) -> Option<usize> {
        self.statistic_names.iter().position(|n| n == name)
    }
}

/// Statistic column names induced by a configuration: powers first, then
/// polynomial orders.
pub fn statistic_names(cfg: &ExperimentConfig) -> Vec<String> {
    let mut names: Vec<String> = cfg.powers.iter().map(|k| format!("tr_w_{k}")).collect();
    names.extend(cfg.gamma_orders.iter().map(|j| format!("tr_gamma_{j}")));
    names
}

/// Runs the replicated experiment: per replicate `r`, samples a data
/// matrix with the seed derived from `(master, r)`, forms the sample
/// covariance matrix, and records `tr(W^k)` for each requested power and
/// the variance-adjusted polynomial traces for each requested order; then
/// estimates means, pairwise covariances, and standardized third and
/// fourth cumulants with standard errors.
///
/// Replicates are processed in parallel but aggregated in replicate
/// order, so the report is a pure function of the configuration.
///
/// # Errors
///
/// [`Error::InsufficientData`] if fewer than [`MIN_REPLICATES`] replicates
/// are requested; [`Error::Config`] if no statistics are requested;
/// [`Error::Numeric`] if more than [`MAX_ABORT_FRACTION`] of replicates
/// abort; configuration errors propagate.
pub fn run_clt_experiment(cfg: &ExperimentConfig) -> Result<CltReport> {
    cfg.validate()?;
    if cfg.replicates < MIN_REPLICATES {
        return Err(Error::InsufficientData(format!(
            "experiment needs at least {MIN_REPLICATES} replicates, got {}",
            cfg.replicates
        )));
    }
    if cfg.powers.is_empty() && cfg.gamma_orders.is_empty() {
        return Err(Error::Config(
            "experiment records no statistics: request powers and/or gamma_orders".into(),
        ));
    }

    let d = cfg.dependence()?;
    let model = cfg.entry_model()?;
    let y = cfg.y();
    let names = statistic_names(cfg);

    let rows: Vec<Result<Vec<f64>>> = (0..cfg.replicates as u64)
        .into_par_iter()
        .map(|r| replicate_row(cfg, &d, &model, &y, r))
        .collect();

    let replicates_aborted = rows.iter().filter(|r| r.is_err()).count();
    if replicates_aborted as f64 > MAX_ABORT_FRACTION * cfg.replicates as f64 {
        return Err(Error::Numeric(format!(
            "{replicates_aborted} of {} replicates aborted (more than {:.0}%)",
            cfg.replicates,
            MAX_ABORT_FRACTION * 100.0
        )));
    }
    let values_by_replicate: Vec<Vec<f64>> = rows.into_iter().flatten().collect();
    let replicates_used = values_by_replicate.len();

    let samples = SampleMatrix::from_rows(&values_by_replicate)?;
    let num_stats = names.len();

    let mut means = Vec::with_capacity(num_stats);
    for i in 0..num_stats {
        means.push(estimate_joint_cumulant(&samples, &[i])?);
    }

    let mut covariances = Vec::new();
    for i in 0..num_stats {
        for j in i..num_stats {
            covariances.push(PairCovariance {
                left: i,
                right: j,
                estimate: estimate_joint_cumulant(&samples, &[i, j])?,
            });
        }
    }

    let standardized = standardize_columns(&values_by_replicate, &means);
    let std_samples = SampleMatrix::from_rows(&standardized)?;
    let mut standardized_third = Vec::with_capacity(num_stats);
    let mut standardized_fourth = Vec::with_capacity(num_stats);
    for i in 0..num_stats {
        standardized_third.push(estimate_joint_cumulant(&std_samples, &[i, i, i])?);
        standardized_fourth.push(estimate_joint_cumulant(&std_samples, &[i, i, i, i])?);
    }

    Ok(CltReport {
        config: cfg.clone(),
        statistic_names: names,
        replicates_used,
        replicates_aborted,
        means,
        covariances,
        standardized_third,
        standardized_fourth,
        values_by_replicate,
    })
}

/// One replicate's statistic row.
fn replicate_row(
    cfg: &ExperimentConfig,
    d: &DependenceStructure,
    model: &EntryModel,
    y: &BigRational,
    r: u64,
) -> Result<Vec<f64>> {
    let seed = substream_seed(cfg.seed, &[r]);
    let matrix = sample_matrix(d, model, seed)?;
    let w = build_w(&matrix, cfg.n);
    let k_max = cfg
        .powers
        .iter()
        .chain(cfg.gamma_orders.iter())
        .copied()
        .max()
        .unwrap_or(0);
    let traces = trace_powers(&w, k_max)?;
    let mut row = Vec::with_capacity(cfg.powers.len() + cfg.gamma_orders.len());
    for &k in &cfg.powers {
        row.push(traces[k - 1]);
    }
    for &j in &cfg.gamma_orders {
        row.push(gamma_trace_from_powers(
            &traces,
            w.s(),
            j,
            y,
            &cfg.sigma_sq,
        ));
    }
    Ok(row)
}

/// Centers each column by its sample mean and scales by its sample
/// standard deviation; a column with zero spread becomes identically
/// zero.
fn standardize_columns(rows: &[Vec<f64>], means: &[CumulantEstimate]) -> Vec<Vec<f64>> {
    let r = rows.len();
    let cols = means.len();
    let mut sds = vec![0.0_f64; cols];
    for (c, sd) in sds.iter_mut().enumerate() {
        let mean = means[c].value;
        let ss: f64 = rows.iter().map(|row| (row[c] - mean).powi(2)).sum();
        *sd = (ss / r as f64).sqrt();
    }
    rows.iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(c, &v)| {
                    if sds[c] > 0.0 {
                        (v - means[c].value) / sds[c]
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect()
}

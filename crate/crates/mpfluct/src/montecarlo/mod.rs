//! Experiment engine: replicated sampling of sample covariance matrices,
//! exact and enumerated values of the limiting covariance functional, and
//! statistical verification of the fluctuation predictions.
//!
//! The module has four layers: [`ExperimentConfig`] describes a run;
//! [`enumerate_mn`] and the `un_*` functions compute exact combinatorial
//! references at tiny scale; [`run_clt_experiment`] samples replicates and
//! aggregates cumulant estimates deterministically; and the check
//! functions compare the two sides and render verdicts.

mod checks;
mod config;
mod experiment;
mod multi_index;
mod un;

pub use checks::{
    covariance_diag_check, mp_moment_check, CheckVerdict, CovDiagEntry, CovDiagReport,
    MpMomentEntry, MpMomentReport, DEFAULT_MOMENT_REL_TOL, MAX_DIAG_ORDER, MAX_MOMENT_POWER,
    OFF_DIAGONAL_ABS_TOL,
};
pub use config::{ExperimentConfig, ModelSpec, StructureSpec};
pub use experiment::{
    run_clt_experiment, statistic_names, CltReport, PairCovariance, MAX_ABORT_FRACTION,
    MIN_REPLICATES,
};
pub use multi_index::{enumerate_mn, MnConstraint, MultiIndex, MAX_MN_CELLS, MAX_MN_POINTS};
pub use un::{
    pair_product_covariance, un_bruteforce, un_bruteforce_parts, un_exact_m1, un_exact_m1_parts,
    UnMethod, UnValue, MAX_BRUTEFORCE_M, MAX_BRUTEFORCE_SIDE,
};

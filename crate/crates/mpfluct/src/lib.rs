//! Fluctuation analysis of sample covariance matrices `W = (1/n) Y Y*` whose
//! entries may be dependent within the classes of an equivalence relation on
//! the index grid.
//!
//! The crate has two halves that check each other:
//!
//! * **Exact combinatorics** — multi-circle set partitions with their
//!   connector/crossing calculus ([`partitions`]), the shifted monic
//!   Chebyshev family that diagonalizes the limiting covariance of trace
//!   statistics ([`chebyshev`]), and exact rational coefficient tables
//!   relating moments of the Marchenko–Pastur law to those polynomials.
//! * **Monte Carlo statistics** — dependence structures and entry models
//!   ([`ensembles`]), spectral trace statistics ([`spectra`]), joint cumulant
//!   estimation ([`cumulants`]), and experiment drivers that compare sampled
//!   fluctuations against the exact finite-size predictions ([`montecarlo`]).
//!
//! Everything that feeds a pass/fail verdict is either exact integer/rational
//! arithmetic or carries a standard error estimated by batch means; sampling
//! is keyed by counters so results are independent of thread schedule.

#![warn(missing_docs)]

mod error;

pub mod chebyshev;
pub mod cumulants;
pub mod ensembles;
pub mod montecarlo;
pub mod partitions;
pub mod spectra;

pub use error::{Error, Result};

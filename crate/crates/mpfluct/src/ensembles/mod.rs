//! Dependence structures, their growth statistics, entry models, and the
//! dependent-matrix sampler.
//!
//! A [`DependenceStructure`] is an equivalence relation on the index grid
//! `[s] × [t]`; entries in distinct classes are independent, entries in
//! the same class follow the joint law of an [`EntryModel`]. The
//! [`beta_stats`] scan measures how fast classes grow, [`growth_report`]
//! sweeps a family of structures across sizes and flags the fluctuation
//! hypotheses, and [`sample_matrix`] draws reproducible matrices from
//! counter-keyed substreams.

mod growth;
mod model;
mod rng;
mod sample;
mod structure;

pub use growth::{growth_report, hypothesis_flags, GrowthReport, GrowthRow, StructureFamily};
pub use model::{EntryModel, EntryModelKind};
pub use rng::{substream_seed, SplitMix64};
pub use sample::{sample_matrix, EntryMatrix};
pub use structure::{beta_stats, BetaStats, DependenceStructure, Provenance, MAX_GRID_CELLS};

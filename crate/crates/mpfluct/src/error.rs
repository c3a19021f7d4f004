//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the combinatorial and statistical routines.
#[derive(Debug, Error)]
pub enum Error {
    /// An enumeration or matrix size exceeded its guard rail.
    #[error("size limit exceeded: {what} = {got}, limit {limit}")]
    SizeLimit {
        /// Which quantity blew the limit.
        what: &'static str,
        /// The offending value.
        got: usize,
        /// The configured maximum.
        limit: usize,
    },

    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A set of blocks does not describe a valid partition of the ground set.
    #[error("invalid partition: {0}")]
    Partition(String),

    /// A partition does not belong to the class required by the operation
    /// (wrong type, stuck reduction, ill-defined initial point, ...).
    #[error("classification error: {0}")]
    Classification(String),

    /// A dot structure does not correspond to any half pair partition.
    #[error("dot bijection error: {0}")]
    Bijection(String),

    /// Too few samples or batches to form the requested estimate.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A numeric computation failed (non-finite values, failed replicates, ...).
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// A configuration file or value could not be used.
    #[error("config error: {0}")]
    Config(String),

    /// Underlying I/O failure (custom relation files, report output).
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

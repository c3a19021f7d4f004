//! Entry models: the within-class joint laws used to fill a dependence
//! structure with centered variance-σ² random variables, together with
//! the closed-form second-order statistics that the exact covariance
//! computations need.
//!
//! The menu spans the hypothesis space: fully independent real and
//! complex Gaussians, a bounded non-Gaussian law, a maximally dependent
//! law (one draw shared by the whole class), and an equicorrelated
//! Gaussian interpolation between the two extremes.

use crate::error::{Error, Result};

/// The available within-class joint laws.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EntryModelKind {
    /// Every entry an independent real `N(0, σ²)` draw (the class
    /// structure is ignored by this law — a product law is a valid
    /// within-class joint distribution).
    GaussianReal,
    /// Every entry an independent complex Gaussian with independent real
    /// and imaginary parts of variance σ²/2, so `E|a|² = σ²` and
    /// `E a² = 0`.
    GaussianComplex,
    /// Every entry an independent symmetric two-point draw `±σ`.
    Rademacher,
    /// All entries of a class equal one shared real `N(0, σ²)` draw.
    ClassConstant,
    /// Entries of a class jointly Gaussian, each `N(0, σ²)`, with
    /// pairwise correlation ρ; requires `1 + (m−1)ρ ≥ 0` for every class
    /// size `m` actually sampled.
    ClassCorrelated {
        /// Pairwise correlation within a class.
        rho: f64,
    },
}

/// A centered entry law with variance σ² and one of the built-in
/// within-class joint distributions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntryModel {
    kind: EntryModelKind,
    sigma_sq: f64,
}

impl EntryModel {
    /// Validates and wraps a model: σ² must be positive and finite, and
    /// an equicorrelation must satisfy `|ρ| ≤ 1`.
    pub fn new(kind: EntryModelKind, sigma_sq: f64) -> Result<Self> {
        if !(sigma_sq.is_finite() && sigma_sq > 0.0) {
            return Err(Error::Domain(format!(
                "entry variance must be positive and finite, got {sigma_sq}"
            )));
        }
        if let EntryModelKind::ClassCorrelated { rho } = kind {
            if !(rho.is_finite() && (-1.0..=1.0).contains(&rho)) {
                return Err(Error::Domain(format!(
                    "within-class correlation must lie in [-1, 1], got {rho}"
                )));
            }
        }
        Ok(EntryModel { kind, sigma_sq })
    }

    /// The within-class joint law.
    pub fn kind(&self) -> EntryModelKind {
        self.kind
    }

    /// The entry variance σ² (`E|a|²`).
    pub fn variance(&self) -> f64 {
        self.sigma_sq
    }

    /// Whether entries are complex-valued.
    pub fn is_complex(&self) -> bool {
        matches!(self.kind, EntryModelKind::GaussianComplex)
    }

    /// Closed-form covariance of squared moduli,
    /// `Cov(|a(p,q)|², |a(p′,q′)|²)`, for two index pairs in the *same*
    /// class: either literally the same entry (`same_entry`) or two
    /// distinct equivalent entries.
    pub fn c2_squared_moduli(&self, same_entry: bool) -> f64 {
        let s4 = self.sigma_sq * self.sigma_sq;
        match self.kind {
            EntryModelKind::GaussianReal => {
                if same_entry {
                    2.0 * s4
                } else {
                    0.0
                }
            }
            EntryModelKind::GaussianComplex => {
                if same_entry {
                    s4
                } else {
                    0.0
                }
            }
            EntryModelKind::Rademacher => 0.0,
            EntryModelKind::ClassConstant => 2.0 * s4,
            EntryModelKind::ClassCorrelated { rho } => {
                if same_entry {
                    2.0 * s4
                } else {
                    2.0 * rho * rho * s4
                }
            }
        }
    }

    /// Closed-form pair expectation `E(a^{ε} b^{ε′})` for two entries in
    /// the same class, where each factor is either plain or conjugated.
    /// (Entries in distinct classes are independent and centered, so
    /// their pair expectation is 0 — callers handle that case.)
    ///
    /// All built-in laws give real values; the complex law has `E a² = 0`
    /// so only same-entry mixed-conjugation products survive.
    pub fn pair_expectation(
        &self,
        same_entry: bool,
        conj_first: bool,
        conj_second: bool,
    ) -> f64 {
        match self.kind {
            EntryModelKind::GaussianReal | EntryModelKind::Rademacher => {
                if same_entry {
                    self.sigma_sq
                } else {
                    0.0
                }
            }
            EntryModelKind::GaussianComplex => {
                if same_entry && conj_first != conj_second {
                    self.sigma_sq
                } else {
                    0.0
                }
            }
            EntryModelKind::ClassConstant => self.sigma_sq,
            EntryModelKind::ClassCorrelated { rho } => {
                if same_entry {
                    self.sigma_sq
                } else {
                    rho * self.sigma_sq
                }
            }
        }
    }
}

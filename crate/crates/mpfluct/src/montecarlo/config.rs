//! Experiment configuration: dimensions, rational shape parameters, the
//! dependence structure and entry model to sample, and the replication plan.

use num::{BigRational, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::ensembles::{DependenceStructure, EntryModel, EntryModelKind};
use crate::spectra::{MAX_GAMMA_TRACE_ORDER, MAX_TRACE_POWER};
use crate::{Error, Result};

/// Serde adapter rendering a rational as the string `"num/den"` (or just
/// `"num"` for integers) and accepting strings or plain JSON integers.
pub(crate) mod rational_string {
    use num::{BigInt, BigRational, Zero};
    use serde::{de, Deserializer, Serializer};
    use std::fmt;
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(value: &BigRational, ser: S) -> Result<S::Ok, S::Error> {
        if value.is_integer() {
            ser.serialize_str(&value.numer().to_string())
        } else {
            ser.serialize_str(&format!("{}/{}", value.numer(), value.denom()))
        }
    }

    pub(crate) fn parse(text: &str) -> Result<BigRational, String> {
        let trimmed = text.trim();
        let (num_text, den_text) = match trimmed.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (trimmed, "1"),
        };
        let num = BigInt::from_str(num_text)
            .map_err(|e| format!("invalid numerator {num_text:?}: {e}"))?;
        let den = BigInt::from_str(den_text)
            .map_err(|e| format!("invalid denominator {den_text:?}: {e}"))?;
        if den.is_zero() {
            return Err(format!("zero denominator in {trimmed:?}"));
        }
        Ok(BigRational::new(num, den))
    }

    struct RationalVisitor;

    impl de::Visitor<'_> for RationalVisitor {
        type Value = BigRational;

        fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "a rational as \"num/den\" or an integer")
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
            parse(v).map_err(E::custom)
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
            Ok(BigRational::from_integer(v.into()))
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
            Ok(BigRational::from_integer(v.into()))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BigRational, D::Error> {
        de.deserialize_any(RationalVisitor)
    }
}

/// Which dependence structure to lay over the index grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureSpec {
    /// Every cell its own class.
    Independent,
    /// Rows split into contiguous column blocks of the given width.
    ColumnBlock {
        /// Number of consecutive columns sharing a class.
        width: usize,
    },
    /// Consecutive row pairs identified columnwise.
    RowPair,
    /// Tiled rectangular patches of identified cells.
    DuplicatePatch {
        /// Patch width (columns).
        width: usize,
        /// Patch height (rows).
        height: usize,
    },
    /// Explicit relation loaded from a whitespace-separated text file.
    CustomFile {
        /// Path of the relation file.
        path: String,
    },
}

impl StructureSpec {
    /// Instantiates the structure on an `s × t` grid.
    ///
    /// # Errors
    ///
    /// Construction errors propagate; [`Error::Io`] if a custom relation
    /// file cannot be read.
    pub fn build(&self, s: usize, t: usize) -> Result<DependenceStructure> {
        match self {
            StructureSpec::Independent => DependenceStructure::independent(s, t),
            StructureSpec::ColumnBlock { width } => DependenceStructure::column_block(s, t, *width),
            StructureSpec::RowPair => DependenceStructure::row_pair(s, t),
            StructureSpec::DuplicatePatch { width, height } => {
                DependenceStructure::duplicate_patch(s, t, *width, *height)
            }
            StructureSpec::CustomFile { path } => {
                let text = std::fs::read_to_string(path)?;
                DependenceStructure::custom_from_text(s, t, &text, path)
            }
        }
    }
}

/// Which law to draw matrix entries from; the variance comes from the
/// enclosing configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelSpec {
    /// Independent real standard Gaussians scaled to variance σ².
    GaussianReal,
    /// Independent circular complex Gaussians of variance σ².
    GaussianComplex,
    /// Independent signs scaled by σ.
    Rademacher,
    /// One Gaussian draw shared by every member of a class.
    ClassConstant,
    /// Jointly Gaussian classes with a common pairwise correlation.
    ClassCorrelated {
        /// Pairwise correlation within a class, in `[-1, 1]`.
        rho: f64,
    },
}

impl ModelSpec {
    /// The entry-model kind this spec names.
    pub fn kind(&self) -> EntryModelKind {
        match self {
            ModelSpec::GaussianReal => EntryModelKind::GaussianReal,
            ModelSpec::GaussianComplex => EntryModelKind::GaussianComplex,
            ModelSpec::Rademacher => EntryModelKind::Rademacher,
            ModelSpec::ClassConstant => EntryModelKind::ClassConstant,
            ModelSpec::ClassCorrelated { rho } => EntryModelKind::ClassCorrelated { rho: *rho },
        }
    }
}

/// Full description of a fluctuation experiment: grid shape, rational shape
/// parameters `(κ, μ, σ²)`, dependence structure, entry model, which trace
/// statistics to record, and the replication plan.
///
/// Dimensions `s` and `t` default to `⌊κn⌋` and `⌊μn⌋` when omitted and must
/// always satisfy `|s/n − κ| ≤ 1/n` and `|t/n − μ| ≤ 1/n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Normalization `n` of `W = (1/n) Y Y*`.
    pub n: usize,
    /// Rows of the data matrix; defaults to `⌊κn⌋`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    /// Columns of the data matrix; defaults to `⌊μn⌋`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    /// Row-dimension ratio `κ` (positive rational, `s ≈ κn`).
    #[serde(with = "rational_string")]
    pub kappa: BigRational,
    /// Column-dimension ratio `μ` (positive rational, `t ≈ μn`).
    #[serde(with = "rational_string")]
    pub mu: BigRational,
    /// Entry variance `σ²` (positive rational).
    #[serde(with = "rational_string")]
    pub sigma_sq: BigRational,
    /// Dependence structure to lay over the grid.
    pub structure: StructureSpec,
    /// Entry model to sample.
    pub model: ModelSpec,
    /// Powers `k` for which `tr(W^k)` is recorded.
    #[serde(default)]
    pub powers: Vec<usize>,
    /// Orders `j` for which the polynomial trace statistic is recorded.
    #[serde(default)]
    pub gamma_orders: Vec<usize>,
    /// Number of Monte Carlo replicates.
    pub replicates: usize,
    /// Master seed; replicate seeds are derived substreams.
    pub seed: u64,
}

impl ExperimentConfig {
    /// Parses a JSON document and validates it.
    ///
    /// # Errors
    ///
    /// [`Error::Config`] on parse or validation failure.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text)
            .map_err(|e| Error::Config(format!("experiment config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Serializes the configuration as pretty JSON; parsing the output
    /// yields an equal configuration.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialization cannot fail")
    }

    /// The resolved row count `s` (explicit or `⌊κn⌋`).
    pub fn resolved_s(&self) -> usize {
        self.s.unwrap_or_else(|| floor_times(&self.kappa, self.n))
    }

    /// The resolved column count `t` (explicit or `⌊μn⌋`).
    pub fn resolved_t(&self) -> usize {
        self.t.unwrap_or_else(|| floor_times(&self.mu, self.n))
    }

    /// The aspect parameter `y = κ/μ` (exact rational).
    pub fn y(&self) -> BigRational {
        &self.kappa / &self.mu
    }

    /// The entry variance as a float.
    pub fn sigma_sq_f64(&self) -> f64 {
        self.sigma_sq.to_f64().expect("variance fits in f64")
    }

    /// Builds the entry model named by the configuration.
    ///
    /// # Errors
    ///
    /// Model validation errors propagate (for example an out-of-range
    /// correlation).
    pub fn entry_model(&self) -> Result<EntryModel> {
        EntryModel::new(self.model.kind(), self.sigma_sq_f64())
    }

    /// Instantiates the dependence structure on the resolved grid.
    ///
    /// # Errors
    ///
    /// Structure construction errors propagate.
    pub fn dependence(&self) -> Result<DependenceStructure> {
        self.structure.build(self.resolved_s(), self.resolved_t())
    }

    /// Checks all invariants: positive dimensions and parameters,
    /// `|s − κn| ≤ 1` and `|t − μn| ≤ 1` (so the ratios are within `1/n`),
    /// statistic orders within their guard rails, and distinct statistics.
    ///
    /// # Errors
    ///
    /// [`Error::Config`] describing the first violated invariant.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Config("n must be at least 1".into()));
        }
        if !self.kappa.is_positive() || !self.mu.is_positive() || !self.sigma_sq.is_positive() {
            return Err(Error::Config(
                "kappa, mu, and sigma_sq must be positive".into(),
            ));
        }
        if self.replicates == 0 {
            return Err(Error::Config("replicates must be at least 1".into()));
        }
        let (s, t) = (self.resolved_s(), self.resolved_t());
        if s == 0 || t == 0 {
            return Err(Error::Config(
                "resolved dimensions s and t must be at least 1".into(),
            ));
        }
        let n_rat = BigRational::from_integer(self.n.into());
        for (name, dim, ratio) in [("s", s, &self.kappa), ("t", t, &self.mu)] {
            let gap = (BigRational::from_integer(dim.into()) - ratio * &n_rat).abs();
            if gap > BigRational::from_integer(1.into()) {
                return Err(Error::Config(format!(
                    "{name} = {dim} is more than 1/n away from its ratio times n = {n}",
                    n = self.n
                )));
            }
        }
        for &k in &self.powers {
            if k == 0 || k > MAX_TRACE_POWER {
                return Err(Error::Config(format!(
                    "power {k} outside 1..={MAX_TRACE_POWER}"
                )));
            }
        }
        for &j in &self.gamma_orders {
            if j == 0 || j > MAX_GAMMA_TRACE_ORDER {
                return Err(Error::Config(format!(
                    "gamma order {j} outside 1..={MAX_GAMMA_TRACE_ORDER}"
                )));
            }
        }
        for (label, list) in [("powers", &self.powers), ("gamma_orders", &self.gamma_orders)] {
            let mut seen = list.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != list.len() {
                return Err(Error::Config(format!("{label} must be distinct")));
            }
        }
        Ok(())
    }
}

/// `⌊ratio · n⌋` for a positive rational ratio.
fn floor_times(ratio: &BigRational, n: usize) -> usize {
    (ratio * BigRational::from_integer(n.into()))
        .floor()
        .to_integer()
        .to_usize()
        .expect("dimension fits in usize")
}

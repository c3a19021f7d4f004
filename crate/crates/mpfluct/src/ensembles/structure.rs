//! Dependence structures: equivalence relations on the index grid
//! `[s] × [t]`, their construction from built-in families or custom
//! files, and the four growth statistics β₀–β₃ that control how much
//! dependence the limit theorems tolerate.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Cap on `s·t` so that class lists and β statistics stay exhaustively
/// computable.
pub const MAX_GRID_CELLS: usize = 1_000_000;

/// How a [`DependenceStructure`] was built; echoed in reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Every index pair is its own class.
    Independent,
    /// Blocks of `b` consecutive columns within each row share a class.
    ColumnBlock(usize),
    /// Consecutive rows are paired; vertically adjacent entries of a pair
    /// share a class.
    RowPair,
    /// Tiles of `w` consecutive columns × `h` consecutive rows share a
    /// class.
    DuplicatePatch(usize, usize),
    /// Loaded from an explicit `p q class` listing; the label names the
    /// source.
    Custom(String),
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::Independent => write!(f, "independent"),
            Provenance::ColumnBlock(b) => write!(f, "column_block({b})"),
            Provenance::RowPair => write!(f, "row_pair"),
            Provenance::DuplicatePatch(w, h) => write!(f, "duplicate_patch({w},{h})"),
            Provenance::Custom(label) => write!(f, "custom({label})"),
        }
    }
}

/// Equivalence relation on the index grid `[s] × [t]`: entries whose
/// index pairs fall in distinct classes are sampled from independent
/// randomness, while same-class entries may be arbitrarily dependent.
///
/// Index pairs `(p, q)` are 1-based throughout. Class identifiers are
/// compact `0..num_classes()`, assigned in row-major order of first
/// appearance, so they are canonical for a given relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependenceStructure {
    s: usize,
    t: usize,
    class_of: Vec<u32>,
    classes: Vec<Vec<(usize, usize)>>,
    provenance: Provenance,
}

/// The four class-growth statistics:
///
/// * `beta0` — ordered triples sharing a class along a column
///   (`(p,q) ∼ (p′,q)`, `p ≠ p′`) or, if larger, along a row;
/// * `beta1` — the worst row (or column) total of class sizes:
///   `max_p Σ_q #class(p,q)` joined with `max_q Σ_p #class(p,q)`;
/// * `beta2` — the largest class size;
/// * `beta3` — the largest number of members any class places in a
///   single row or in a single column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BetaStats {
    /// Same-column (or same-row) ordered coincidence count.
    pub beta0: u64,
    /// Worst directional total of class sizes.
    pub beta1: u64,
    /// Largest class size.
    pub beta2: u64,
    /// Largest single-row or single-column member count of a class.
    pub beta3: u64,
}

impl DependenceStructure {
    fn build(
        s: usize,
        t: usize,
        raw_ids: Vec<u64>,
        provenance: Provenance,
    ) -> Result<Self> {
        if s == 0 || t == 0 {
            return Err(Error::Domain(
                "grid dimensions must be at least 1".into(),
            ));
        }
        let cells = s
            .checked_mul(t)
            .filter(|&c| c <= MAX_GRID_CELLS)
            .ok_or(Error::SizeLimit {
                what: "grid cells",
                got: s.saturating_mul(t),
                limit: MAX_GRID_CELLS,
            })?;
        debug_assert_eq!(raw_ids.len(), cells);

        let mut remap: HashMap<u64, u32> = HashMap::new();
        let mut class_of = Vec::with_capacity(cells);
        let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
        for p in 1..=s {
            for q in 1..=t {
                let raw = raw_ids[(p - 1) * t + (q - 1)];
                let next = classes.len() as u32;
                let id = *remap.entry(raw).or_insert(next);
                if id == next {
                    classes.push(Vec::new());
                }
                class_of.push(id);
                classes[id as usize].push((p, q));
            }
        }
        Ok(DependenceStructure {
            s,
            t,
            class_of,
            classes,
            provenance,
        })
    }

    /// Fully independent entries: every index pair is its own class.
    pub fn independent(s: usize, t: usize) -> Result<Self> {
        let ids = (0..(s.saturating_mul(t)) as u64).collect();
        Self::build(s, t, ids, Provenance::Independent)
    }

    /// Within each row, columns are grouped into blocks of `b`
    /// consecutive indices (a shorter final block if `b ∤ t`); entries in
    /// the same row block share a class.
    pub fn column_block(s: usize, t: usize, b: usize) -> Result<Self> {
        if b == 0 {
            return Err(Error::Domain("column block width must be at least 1".into()));
        }
        let blocks_per_row = t.div_ceil(b) as u64;
        let mut ids = Vec::with_capacity(s.saturating_mul(t));
        for p in 0..s as u64 {
            for q in 0..t {
                ids.push(p * blocks_per_row + (q / b) as u64);
            }
        }
        Self::build(s, t, ids, Provenance::ColumnBlock(b))
    }

    /// Rows are paired consecutively (`1↔2`, `3↔4`, …; a lone final row
    /// if `s` is odd); vertically adjacent entries of a row pair share a
    /// class.
    pub fn row_pair(s: usize, t: usize) -> Result<Self> {
        let mut ids = Vec::with_capacity(s.saturating_mul(t));
        for p in 0..s {
            for q in 0..t as u64 {
                ids.push((p / 2) as u64 * t as u64 + q);
            }
        }
        Self::build(s, t, ids, Provenance::RowPair)
    }

    /// The grid is tiled by patches of `w` consecutive columns and `h`
    /// consecutive rows (shorter edge tiles if the dimensions do not
    /// divide evenly); entries in the same tile share a class.
    pub fn duplicate_patch(s: usize, t: usize, w: usize, h: usize) -> Result<Self> {
        if w == 0 || h == 0 {
            return Err(Error::Domain("patch dimensions must be at least 1".into()));
        }
        let tiles_per_band = t.div_ceil(w) as u64;
        let mut ids = Vec::with_capacity(s.saturating_mul(t));
        for p in 0..s {
            for q in 0..t {
                ids.push(((p / h) as u64) * tiles_per_band + (q / w) as u64);
            }
        }
        Self::build(s, t, ids, Provenance::DuplicatePatch(w, h))
    }

    /// Builds a structure from an explicit class assignment in row-major
    /// order (`class_ids[(p−1)·t + (q−1)]` is the class of `(p,q)`); ids
    /// may be arbitrary and are compacted canonically.
    pub fn from_assignment(
        s: usize,
        t: usize,
        class_ids: &[u64],
        provenance: Provenance,
    ) -> Result<Self> {
        if class_ids.len() != s.saturating_mul(t) {
            return Err(Error::Domain(format!(
                "class assignment has {} entries, expected {}",
                class_ids.len(),
                s.saturating_mul(t)
            )));
        }
        Self::build(s, t, class_ids.to_vec(), provenance)
    }

    /// Parses a custom relation from text: one line `p q class_id` per
    /// grid cell (1-based `p`, `q`; arbitrary integer class ids), `#`
    /// comments and blank lines ignored. Every cell of `[s] × [t]` must
    /// appear exactly once.
    pub fn custom_from_text(s: usize, t: usize, text: &str, label: &str) -> Result<Self> {
        if s == 0 || t == 0 {
            return Err(Error::Domain("grid dimensions must be at least 1".into()));
        }
        if s.saturating_mul(t) > MAX_GRID_CELLS {
            return Err(Error::SizeLimit {
                what: "grid cells",
                got: s.saturating_mul(t),
                limit: MAX_GRID_CELLS,
            });
        }
        let mut ids: Vec<Option<u64>> = vec![None; s * t];
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Config(format!(
                    "{label}:{}: expected `p q class_id`, got {:?}",
                    lineno + 1,
                    line
                )));
            }
            let parse = |what: &str, field: &str| -> Result<u64> {
                field.parse::<u64>().map_err(|_| {
                    Error::Config(format!(
                        "{label}:{}: {what} `{field}` is not a nonnegative integer",
                        lineno + 1
                    ))
                })
            };
            let p = parse("row", fields[0])? as usize;
            let q = parse("column", fields[1])? as usize;
            let cid = parse("class id", fields[2])?;
            if !(1..=s).contains(&p) || !(1..=t).contains(&q) {
                return Err(Error::Config(format!(
                    "{label}:{}: index ({p},{q}) outside [{s}]×[{t}]",
                    lineno + 1
                )));
            }
            let slot = &mut ids[(p - 1) * t + (q - 1)];
            if slot.is_some() {
                return Err(Error::Config(format!(
                    "{label}:{}: index ({p},{q}) listed twice",
                    lineno + 1
                )));
            }
            *slot = Some(cid);
        }
        let mut raw = Vec::with_capacity(s * t);
        for p in 1..=s {
            for q in 1..=t {
                match ids[(p - 1) * t + (q - 1)] {
                    Some(cid) => raw.push(cid),
                    None => {
                        return Err(Error::Config(format!(
                            "{label}: index ({p},{q}) missing — the relation must be total"
                        )))
                    }
                }
            }
        }
        Self::build(s, t, raw, Provenance::Custom(label.to_string()))
    }

    /// Number of rows `s`.
    pub fn s(&self) -> usize {
        self.s
    }

    /// Number of columns `t`.
    pub fn t(&self) -> usize {
        self.t
    }

    /// How this structure was built.
    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Number of equivalence classes.
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Class identifier of the 1-based index pair `(p, q)`.
    ///
    /// # Panics
    ///
    /// Panics if the indices are outside the grid.
    pub fn class_id(&self, p: usize, q: usize) -> usize {
        assert!(
            (1..=self.s).contains(&p) && (1..=self.t).contains(&q),
            "index ({p},{q}) outside [{}]×[{}]",
            self.s,
            self.t
        );
        self.class_of[(p - 1) * self.t + (q - 1)] as usize
    }

    /// Whether two 1-based index pairs are equivalent.
    pub fn same_class(&self, a: (usize, usize), b: (usize, usize)) -> bool {
        self.class_id(a.0, a.1) == self.class_id(b.0, b.1)
    }

    /// Members of a class, sorted row-major.
    ///
    /// # Panics
    ///
    /// Panics if `id ≥ num_classes()`.
    pub fn class_members(&self, id: usize) -> &[(usize, usize)] {
        &self.classes[id]
    }

    /// Size of the class with the given identifier.
    ///
    /// # Panics
    ///
    /// Panics if `id ≥ num_classes()`.
    pub fn class_size(&self, id: usize) -> usize {
        self.classes[id].len()
    }
}

/// Computes the four growth statistics of a structure by one exhaustive
/// grouped scan over its classes.
pub fn beta_stats(d: &DependenceStructure) -> BetaStats {
    let mut beta0_col = 0u64; // (p,q) ~ (p',q), p ≠ p'
    let mut beta0_row = 0u64; // (p,q) ~ (p,q'), q ≠ q'
    let mut beta2 = 0u64;
    let mut beta3_row = 0u64;
    let mut beta3_col = 0u64;

    let mut row_counts: HashMap<usize, u64> = HashMap::new();
    let mut col_counts: HashMap<usize, u64> = HashMap::new();
    for id in 0..d.num_classes() {
        let members = d.class_members(id);
        beta2 = beta2.max(members.len() as u64);
        row_counts.clear();
        col_counts.clear();
        for &(p, q) in members {
            *row_counts.entry(p).or_insert(0) += 1;
            *col_counts.entry(q).or_insert(0) += 1;
        }
        for &c in col_counts.values() {
            beta0_col += c * (c - 1);
            beta3_col = beta3_col.max(c);
        }
        for &c in row_counts.values() {
            beta0_row += c * (c - 1);
            beta3_row = beta3_row.max(c);
        }
    }

    // beta1: for each cell, its class size contributes to its row's and
    // its column's running total; take the worst row and the worst column.
    let mut row_totals = vec![0u64; d.s() + 1];
    let mut col_totals = vec![0u64; d.t() + 1];
    for (p, row_total) in row_totals.iter_mut().enumerate().skip(1) {
        for (q, col_total) in col_totals.iter_mut().enumerate().skip(1) {
            let size = d.class_size(d.class_id(p, q)) as u64;
            *row_total += size;
            *col_total += size;
        }
    }
    let beta1 = row_totals
        .iter()
        .chain(col_totals.iter())
        .copied()
        .max()
        .unwrap_or(0);

    BetaStats {
        beta0: beta0_col.max(beta0_row),
        beta1,
        beta2,
        beta3: beta3_row.max(beta3_col),
    }
}

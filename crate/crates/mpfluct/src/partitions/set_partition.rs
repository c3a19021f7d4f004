//! Set partitions of `{1, ..., n}` in canonical (restricted growth) form.

use crate::{Error, Result};

/// Largest ground set accepted by [`enumerate_set_partitions`].
///
/// Bell(12) = 4 213 597 — still enumerable in memory; Bell numbers grow
/// super-exponentially beyond that.
pub const MAX_GROUND_SIZE: usize = 12;

/// A partition of the ground set `{1, ..., n}` into disjoint nonempty blocks.
///
/// Stored as a restricted growth string `r`: `r[i]` is the block index of
/// element `i + 1`, blocks numbered by first appearance, so `r[0] = 0` and
/// `r[i] <= max(r[0..i]) + 1`. This makes the representation canonical:
/// two partitions are equal iff their strings are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SetPartition {
    rgs: Vec<u32>,
}

impl SetPartition {
    /// The partition of `{1, ..., n}` into singletons.
    pub fn singletons(n: usize) -> Self {
        SetPartition {
            rgs: (0..n as u32).collect(),
        }
    }

    /// Builds a partition from a restricted growth string.
    pub fn from_rgs(rgs: Vec<u32>) -> Result<Self> {
        let mut max_seen: Option<u32> = None;
        for (i, &b) in rgs.iter().enumerate() {
            let bound = max_seen.map_or(0, |m| m + 1);
            if b > bound {
                return Err(Error::Partition(format!(
                    "restricted growth violated at element {}: block {} after max {}",
                    i + 1,
                    b,
                    bound
                )));
            }
            max_seen = Some(max_seen.map_or(b, |m| m.max(b)));
        }
        Ok(SetPartition { rgs })
    }

    /// Builds a partition of `{1, ..., n}` from explicit blocks (1-based
    /// elements). The blocks must cover every element exactly once.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut owner = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Partition(format!("block {b} is empty")));
            }
            for &e in block {
                if e == 0 || e > n {
                    return Err(Error::Partition(format!(
                        "element {e} outside ground set 1..={n}"
                    )));
                }
                if owner[e - 1] != usize::MAX {
                    return Err(Error::Partition(format!("element {e} appears twice")));
                }
                owner[e - 1] = b;
            }
        }
        if let Some(missing) = owner.iter().position(|&b| b == usize::MAX) {
            return Err(Error::Partition(format!(
                "element {} not covered by any block",
                missing + 1
            )));
        }
        // Renumber blocks by first appearance to get the canonical string.
        let mut relabel = vec![u32::MAX; blocks.len()];
        let mut next = 0u32;
        let mut rgs = Vec::with_capacity(n);
        for b in owner {
            if relabel[b] == u32::MAX {
                relabel[b] = next;
                next += 1;
            }
            rgs.push(relabel[b]);
        }
        Ok(SetPartition { rgs })
    }

    /// Number of elements in the ground set.
    pub fn ground_size(&self) -> usize {
        self.rgs.len()
    }

    /// Number of blocks.
    pub fn block_count(&self) -> usize {
        self.rgs.iter().map(|&b| b + 1).max().unwrap_or(0) as usize
    }

    /// Block index (0-based, ordered by first appearance) of a 1-based element.
    pub fn block_id(&self, element: usize) -> usize {
        self.rgs[element - 1] as usize
    }

    /// Whether two 1-based elements lie in the same block.
    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.rgs[a - 1] == self.rgs[b - 1]
    }

    /// The blocks as sorted element lists, ordered by least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (i, &b) in self.rgs.iter().enumerate() {
            blocks[b as usize].push(i + 1);
        }
        blocks
    }

    /// The underlying restricted growth string.
    pub fn rgs(&self) -> &[u32] {
        &self.rgs
    }
}

/// Enumerates every partition of `{1, ..., n}` in lexicographic order of the
/// restricted growth string. `n` is capped at [`MAX_GROUND_SIZE`].
pub fn enumerate_set_partitions(n: usize) -> Result<Vec<SetPartition>> {
    if n == 0 {
        return Err(Error::Domain("ground set must be nonempty".into()));
    }
    if n > MAX_GROUND_SIZE {
        return Err(Error::SizeLimit {
            what: "set partition ground size",
            got: n,
            limit: MAX_GROUND_SIZE,
        });
    }
    let mut out = Vec::new();
    let mut rgs = vec![0u32; n];
    // Depth-first generation of restricted growth strings: position i may
    // take any value up to one past the maximum of the prefix.
    fn rec(rgs: &mut Vec<u32>, pos: usize, max_prefix: u32, out: &mut Vec<SetPartition>) {
        if pos == rgs.len() {
            out.push(SetPartition { rgs: rgs.clone() });
            return;
        }
        for b in 0..=max_prefix + 1 {
            rgs[pos] = b;
            rec(rgs, pos + 1, max_prefix.max(b), out);
        }
    }
    if n == 1 {
        return Ok(vec![SetPartition { rgs }]);
    }
    rgs[0] = 0;
    rec(&mut rgs, 1, 0, &mut out);
    Ok(out)
}

//! Partitions of points arranged on circles.
//!
//! The ground set is a disjoint union of circles: circle `i` carries an even
//! number of cyclically ordered points `(i, 1), ..., (i, 2k_i)`. Such
//! configurations index the closed index walks that appear when a product of
//! matrix traces is expanded — one circle per trace factor, consecutive
//! points sharing a matrix index — and a partition of the points records
//! which entries of the underlying random matrix coincide.
//!
//! The module provides the structural queries this calculus needs:
//!
//! * **connectors** — points equivalent to a point on another circle, the
//!   places where distinct trace factors become statistically coupled;
//! * **connectedness** — whether every bipartition of the circles is bridged
//!   by some equivalent pair (a lone circle bridges nothing and counts as
//!   not connected);
//! * **crossing** — a same-circle equivalent pair separated by a witness
//!   pair that is itself equivalent or consists of two connectors;
//! * **classification** into connected pair partitions ([`PartitionType::Pp1`]),
//!   four-block partitions ([`PartitionType::Pp2`]), and everything else;
//! * **reduction** ([`CirclePartition::reduce_to_hat`]) — iterated removal of
//!   cyclically adjacent same-circle 2-blocks, shrinking the partition to its
//!   all-connector core;
//! * the **initial point** `γ` of a same-circle 2-block and the count of
//!   blocks with even `γ`, which grade the reduced partitions in the
//!   covariance formulas.
//!
//! All operations are pure functions on immutable values.

use std::fmt;

use super::set_partition::SetPartition;
use crate::{Error, Result};

/// Hard cap on the total number of points across all circles.
///
/// Every consumer works with a handful of short circles; the cap keeps the
/// quartic crossing search and exhaustive tests comfortably sub-second.
pub const MAX_CIRCLE_POINTS: usize = 64;

/// A point on a circle: 1-based circle number and 1-based position.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CircleIndex {
    /// Which circle the point lies on (1-based).
    pub circle: usize,
    /// Position on that circle (1-based, cyclic).
    pub position: usize,
}

impl CircleIndex {
    /// Creates the point at `position` on `circle` (both 1-based).
    pub fn new(circle: usize, position: usize) -> Self {
        CircleIndex { circle, position }
    }
}

impl fmt::Display for CircleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.circle, self.position)
    }
}

/// Structural type of a circle partition.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PartitionType {
    /// Connected pair partition: every block has exactly two points and every
    /// bipartition of the circles is bridged.
    Pp1,
    /// Exactly two circles; one block of four points, two on each circle (all
    /// four are then automatically connectors); every other block is a
    /// 2-block lying on a single circle.
    Pp2,
    /// Anything else.
    Other,
}

impl fmt::Display for PartitionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PartitionType::Pp1 => "PP1",
            PartitionType::Pp2 => "PP2",
            PartitionType::Other => "other",
        };
        f.write_str(s)
    }
}

/// Full structural report for a circle partition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Classification {
    /// Whether every bipartition of the circles is bridged by an equivalent pair.
    pub connected: bool,
    /// All connector points, in (circle, position) order.
    pub connectors: Vec<CircleIndex>,
    /// Connectors not equivalent to any other point of their own circle.
    pub simple_connectors: Vec<CircleIndex>,
    /// Whether a crossing witness exists.
    pub crossing: bool,
    /// Structural type.
    pub partition_type: PartitionType,
}

/// A partition of the points of several circles.
///
/// Internally the points are flattened circle by circle into `{1, ..., n}`
/// and stored as a canonical [`SetPartition`], so structural equality of two
/// `CirclePartition`s is partition equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CirclePartition {
    lengths: Vec<usize>,
    offsets: Vec<usize>,
    partition: SetPartition,
}

fn validate_lengths(lengths: &[usize]) -> Result<usize> {
    if lengths.is_empty() {
        return Err(Error::Partition("at least one circle is required".into()));
    }
    let mut total = 0usize;
    for (i, &len) in lengths.iter().enumerate() {
        if len == 0 || len % 2 != 0 {
            return Err(Error::Partition(format!(
                "circle {} has length {}; lengths must be positive and even",
                i + 1,
                len
            )));
        }
        total += len;
    }
    if total > MAX_CIRCLE_POINTS {
        return Err(Error::SizeLimit {
            what: "total points on circles",
            got: total,
            limit: MAX_CIRCLE_POINTS,
        });
    }
    Ok(total)
}

fn offsets_of(lengths: &[usize]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(lengths.len());
    let mut acc = 0;
    for &len in lengths {
        offsets.push(acc);
        acc += len;
    }
    offsets
}

impl CirclePartition {
    /// Builds a partition of the points of circles with the given (even)
    /// `lengths` from explicit blocks. The blocks must cover every point
    /// exactly once.
    pub fn new(lengths: &[usize], blocks: &[Vec<CircleIndex>]) -> Result<Self> {
        let total = validate_lengths(lengths)?;
        let offsets = offsets_of(lengths);
        let mut flat_blocks = Vec::with_capacity(blocks.len());
        for block in blocks {
            let mut flat = Vec::with_capacity(block.len());
            for &p in block {
                if p.circle == 0 || p.circle > lengths.len() {
                    return Err(Error::Partition(format!(
                        "point {p} names circle {} of {}",
                        p.circle,
                        lengths.len()
                    )));
                }
                if p.position == 0 || p.position > lengths[p.circle - 1] {
                    return Err(Error::Partition(format!(
                        "point {p} falls outside its circle of length {}",
                        lengths[p.circle - 1]
                    )));
                }
                flat.push(offsets[p.circle - 1] + p.position);
            }
            flat_blocks.push(flat);
        }
        let partition = SetPartition::from_blocks(total, &flat_blocks)?;
        Ok(CirclePartition {
            lengths: lengths.to_vec(),
            offsets,
            partition,
        })
    }

    /// Wraps an existing partition of the flattened ground set.
    pub fn from_set_partition(lengths: &[usize], partition: SetPartition) -> Result<Self> {
        let total = validate_lengths(lengths)?;
        if partition.ground_size() != total {
            return Err(Error::Partition(format!(
                "partition covers {} points but the circles hold {}",
                partition.ground_size(),
                total
            )));
        }
        Ok(CirclePartition {
            lengths: lengths.to_vec(),
            offsets: offsets_of(lengths),
            partition,
        })
    }

    /// Number of circles.
    pub fn num_circles(&self) -> usize {
        self.lengths.len()
    }

    /// Length of the given circle (1-based).
    ///
    /// # Panics
    /// If `circle` is out of range.
    pub fn circle_length(&self, circle: usize) -> usize {
        self.lengths[circle - 1]
    }

    /// The circle lengths.
    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    /// Total number of points.
    pub fn total_points(&self) -> usize {
        self.partition.ground_size()
    }

    /// The underlying partition of the flattened ground set.
    pub fn set_partition(&self) -> &SetPartition {
        &self.partition
    }

    /// Flat 1-based index of a point.
    ///
    /// # Panics
    /// If the point lies outside the ground set.
    pub fn flat_index(&self, p: CircleIndex) -> usize {
        assert!(
            p.circle >= 1 && p.circle <= self.lengths.len(),
            "point {p} names a nonexistent circle"
        );
        assert!(
            p.position >= 1 && p.position <= self.lengths[p.circle - 1],
            "point {p} falls outside its circle"
        );
        self.offsets[p.circle - 1] + p.position
    }

    /// Point corresponding to a flat 1-based index.
    ///
    /// # Panics
    /// If `flat` is out of range.
    pub fn point_from_flat(&self, flat: usize) -> CircleIndex {
        assert!(flat >= 1 && flat <= self.total_points(), "flat index {flat} out of range");
        let mut circle = 1;
        while circle < self.lengths.len() && flat > self.offsets[circle] {
            circle += 1;
        }
        CircleIndex::new(circle, flat - self.offsets[circle - 1])
    }

    /// Whether two points are equivalent.
    pub fn same_block(&self, a: CircleIndex, b: CircleIndex) -> bool {
        self.partition.same_block(self.flat_index(a), self.flat_index(b))
    }

    /// The blocks as sorted point lists, ordered by least point.
    pub fn blocks(&self) -> Vec<Vec<CircleIndex>> {
        self.partition
            .blocks()
            .into_iter()
            .map(|block| block.into_iter().map(|f| self.point_from_flat(f)).collect())
            .collect()
    }

    /// The block containing `p`.
    pub fn block_of(&self, p: CircleIndex) -> Vec<CircleIndex> {
        let id = self.partition.block_id(self.flat_index(p));
        (1..=self.total_points())
            .filter(|&f| self.partition.block_id(f) == id)
            .map(|f| self.point_from_flat(f))
            .collect()
    }

    /// Whether `p` is equivalent to some point on another circle.
    pub fn is_connector(&self, p: CircleIndex) -> bool {
        let id = self.partition.block_id(self.flat_index(p));
        (1..=self.total_points()).any(|f| {
            self.partition.block_id(f) == id && self.point_from_flat(f).circle != p.circle
        })
    }

    /// Whether `p` is a connector not equivalent to any other point of its
    /// own circle.
    pub fn is_simple_connector(&self, p: CircleIndex) -> bool {
        self.is_connector(p)
            && !(1..=self.circle_length(p.circle)).any(|l| {
                l != p.position && self.same_block(p, CircleIndex::new(p.circle, l))
            })
    }

    /// All points of the ground set, circle by circle.
    pub fn points(&self) -> impl Iterator<Item = CircleIndex> + '_ {
        self.lengths.iter().enumerate().flat_map(|(i, &len)| {
            (1..=len).map(move |l| CircleIndex::new(i + 1, l))
        })
    }

    /// All connectors, in (circle, position) order.
    pub fn connectors(&self) -> Vec<CircleIndex> {
        self.points().filter(|&p| self.is_connector(p)).collect()
    }

    /// All simple connectors, in (circle, position) order.
    pub fn simple_connectors(&self) -> Vec<CircleIndex> {
        self.points().filter(|&p| self.is_simple_connector(p)).collect()
    }

    /// Whether every bipartition of the circles into two nonempty families is
    /// bridged by an equivalent pair. A single circle is not connected:
    /// connectivity is about linking distinct circles, and a lone circle
    /// links nothing.
    pub fn is_connected(&self) -> bool {
        let j = self.num_circles();
        if j < 2 {
            return false;
        }
        // Union circles that share a block; connected iff one component remains.
        let mut parent: Vec<usize> = (0..j).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for block in self.blocks() {
            for window in block.windows(2) {
                let a = root(&mut parent, window[0].circle - 1);
                let b = root(&mut parent, window[1].circle - 1);
                parent[a.max(b)] = a.min(b);
            }
        }
        let first = root(&mut parent, 0);
        (1..j).all(|i| root(&mut parent, i) == first)
    }

    /// Positions strictly between `from` and `to` walking cyclically forward
    /// on `circle`; empty when `to` immediately follows `from`.
    ///
    /// # Panics
    /// If the positions coincide or fall outside the circle.
    pub fn cyclic_open_interval(&self, circle: usize, from: usize, to: usize) -> Vec<usize> {
        let len = self.circle_length(circle);
        assert!(from != to, "open interval needs distinct endpoints");
        assert!(from >= 1 && from <= len && to >= 1 && to <= len);
        let mut out = Vec::new();
        let mut r = from % len + 1;
        while r != to {
            out.push(r);
            r = r % len + 1;
        }
        out
    }

    /// Whether some same-circle equivalent pair `(i,l1) ~ (i,l2)` admits
    /// witnesses `m1` strictly between `l1` and `l2` and `m2` strictly
    /// between `l2` and `l1` such that either `(i,m1) ~ (i,m2)` or both
    /// witnesses are connectors.
    pub fn is_crossing(&self) -> bool {
        let connector: Vec<bool> = (1..=self.total_points())
            .map(|f| self.is_connector(self.point_from_flat(f)))
            .collect();
        for (i, &len) in self.lengths.iter().enumerate() {
            let circle = i + 1;
            let is_conn = |l: usize| connector[self.offsets[i] + l - 1];
            for l1 in 1..=len {
                for l2 in 1..=len {
                    if l1 == l2
                        || !self.same_block(
                            CircleIndex::new(circle, l1),
                            CircleIndex::new(circle, l2),
                        )
                    {
                        continue;
                    }
                    for &m1 in &self.cyclic_open_interval(circle, l1, l2) {
                        for &m2 in &self.cyclic_open_interval(circle, l2, l1) {
                            let equivalent = self.same_block(
                                CircleIndex::new(circle, m1),
                                CircleIndex::new(circle, m2),
                            );
                            if equivalent || (is_conn(m1) && is_conn(m2)) {
                                return true;
                            }
                        }
                    }
                }
            }
        }
        false
    }

    /// Structural type: connected pair partition, four-block partition, or
    /// anything else.
    pub fn partition_type(&self) -> PartitionType {
        let blocks = self.blocks();
        if blocks.iter().all(|b| b.len() == 2) && self.is_connected() {
            return PartitionType::Pp1;
        }
        if self.num_circles() == 2 && blocks.iter().all(|b| b.len() == 2 || b.len() == 4) {
            let fours: Vec<_> = blocks.iter().filter(|b| b.len() == 4).collect();
            if fours.len() == 1 {
                let on_first = fours[0].iter().filter(|p| p.circle == 1).count();
                let pairs_same_circle = blocks
                    .iter()
                    .filter(|b| b.len() == 2)
                    .all(|b| b[0].circle == b[1].circle);
                if on_first == 2 && pairs_same_circle {
                    return PartitionType::Pp2;
                }
            }
        }
        PartitionType::Other
    }

    /// Computes the full structural report.
    pub fn classify(&self) -> Classification {
        Classification {
            connected: self.is_connected(),
            connectors: self.connectors(),
            simple_connectors: self.simple_connectors(),
            crossing: self.is_crossing(),
            partition_type: self.partition_type(),
        }
    }

    /// Initial point of the same-circle 2-block `{a, b}`: the endpoint whose
    /// forward open interval to the other endpoint contains no connectors.
    ///
    /// Errors if the points do not form a same-circle non-connector
    /// equivalent pair, or if the initial point is ambiguous (both intervals
    /// connector-free) or undefined (both intervals contain connectors) —
    /// the latter cannot happen for non-crossing partitions with connectors
    /// on every circle.
    pub fn gamma(&self, a: CircleIndex, b: CircleIndex) -> Result<usize> {
        if a.circle != b.circle || a.position == b.position {
            return Err(Error::Domain(format!(
                "initial point needs two distinct points on one circle, got {a} and {b}"
            )));
        }
        if !self.same_block(a, b) {
            return Err(Error::Domain(format!("{a} and {b} are not equivalent")));
        }
        if self.is_connector(a) || self.is_connector(b) {
            return Err(Error::Domain(format!(
                "initial point is defined for non-connector pairs, got {a} and {b}"
            )));
        }
        let free = |from: usize, to: usize| {
            self.cyclic_open_interval(a.circle, from, to)
                .iter()
                .all(|&m| !self.is_connector(CircleIndex::new(a.circle, m)))
        };
        match (free(a.position, b.position), free(b.position, a.position)) {
            (true, false) => Ok(a.position),
            (false, true) => Ok(b.position),
            (true, true) => Err(Error::Classification(format!(
                "initial point of {{{a},{b}}} is ambiguous: both sides are connector-free"
            ))),
            (false, false) => Err(Error::Classification(format!(
                "initial point of {{{a},{b}}} is undefined: both sides contain connectors"
            ))),
        }
    }

    /// Number of same-circle 2-blocks whose initial point is even.
    pub fn even_count(&self) -> Result<usize> {
        let mut count = 0;
        for block in self.blocks() {
            if block.len() == 2
                && block[0].circle == block[1].circle
                && self.gamma(block[0], block[1])?.is_multiple_of(2)
            {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Cyclically adjacent same-circle 2-blocks, as `(circle, position)` of
    /// the first endpoint, in scan order (circles ascending, positions
    /// ascending, the wrap pair `(2k, 1)` listed at position `2k`).
    pub fn nearest_neighbor_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &len) in self.lengths.iter().enumerate() {
            let circle = i + 1;
            for l in 1..=len {
                if len == 2 && l == 2 {
                    continue; // (2,1) would duplicate the pair listed at l=1
                }
                let a = CircleIndex::new(circle, l);
                let b = CircleIndex::new(circle, l % len + 1);
                if self.same_block(a, b) && self.block_of(a).len() == 2 {
                    out.push((circle, l));
                }
            }
        }
        out
    }

    /// Removes the 2-block `{(circle, l), (circle, l+1)}` (cyclic) and
    /// relabels the remaining points of that circle: for an interior pair
    /// positions below `l` keep their labels and positions from `l+2` up
    /// shift down by two; for the wrap pair `(2k, 1)` position `2` becomes
    /// the new last position `2k-2` and every other position shifts down by
    /// two. Other circles are untouched.
    pub fn eliminate_nearest_neighbor(&self, circle: usize, l: usize) -> Result<CirclePartition> {
        if circle == 0 || circle > self.num_circles() {
            return Err(Error::Domain(format!(
                "circle {circle} out of range 1..={}",
                self.num_circles()
            )));
        }
        let len = self.circle_length(circle);
        if l == 0 || l > len {
            return Err(Error::Domain(format!("position {l} out of range 1..={len}")));
        }
        let a = CircleIndex::new(circle, l);
        let b = CircleIndex::new(circle, l % len + 1);
        if !self.same_block(a, b) || self.block_of(a).len() != 2 {
            return Err(Error::Classification(format!(
                "{{{a},{b}}} is not a 2-block; nothing to eliminate"
            )));
        }
        if len == 2 {
            return Err(Error::Classification(format!(
                "eliminating {{{a},{b}}} would empty circle {circle}"
            )));
        }
        let wrap = l == len;
        let mut lengths = self.lengths.clone();
        lengths[circle - 1] -= 2;
        let relabel = |p: CircleIndex| -> Option<CircleIndex> {
            if p.circle != circle {
                return Some(p);
            }
            if p == a || p == b {
                return None;
            }
            let r = p.position;
            let pos = if wrap {
                // removed positions are 2k and 1
                if r == 2 {
                    len - 2
                } else {
                    r - 2
                }
            } else {
                // removed positions are l and l+1
                if r < l {
                    r
                } else {
                    r - 2
                }
            };
            Some(CircleIndex::new(circle, pos))
        };
        let blocks: Vec<Vec<CircleIndex>> = self
            .blocks()
            .iter()
            .filter_map(|block| {
                let mapped: Vec<CircleIndex> =
                    block.iter().filter_map(|&p| relabel(p)).collect();
                if mapped.is_empty() {
                    None
                } else {
                    Some(mapped)
                }
            })
            .collect();
        CirclePartition::new(&lengths, &blocks)
    }

    /// Iteratively eliminates cyclically adjacent same-circle 2-blocks —
    /// always the first in scan order — until only connectors remain,
    /// returning the reduced partition. The result does not depend on the
    /// elimination order.
    ///
    /// Errors if the partition is not a connected pair partition or
    /// four-block partition on exactly two circles, or if same-circle
    /// 2-blocks remain but none are adjacent (the reduction is stuck, which
    /// happens exactly for crossing inputs).
    pub fn reduce_to_hat(&self) -> Result<CirclePartition> {
        if self.num_circles() != 2 {
            return Err(Error::Classification(format!(
                "reduction is defined on two circles, got {}",
                self.num_circles()
            )));
        }
        if self.partition_type() == PartitionType::Other {
            return Err(Error::Classification(
                "reduction needs a connected pair partition or a four-block partition".into(),
            ));
        }
        let mut cur = self.clone();
        while let Some(&(circle, l)) = cur.nearest_neighbor_pairs().first() {
            cur = cur.eliminate_nearest_neighbor(circle, l)?;
        }
        let leftover = cur
            .blocks()
            .iter()
            .any(|b| b.len() == 2 && b[0].circle == b[1].circle);
        if leftover {
            return Err(Error::Classification(
                "reduction stuck: same-circle 2-blocks remain but none are adjacent".into(),
            ));
        }
        Ok(cur)
    }
}

//! Multi-indices for the trace expansion: assignments of grid cells to the
//! points of a multi-circle ground set, subject to the cyclic consistency
//! conditions, and exhaustive enumeration of the assignments inducing a
//! prescribed partition.

use crate::ensembles::DependenceStructure;
use crate::partitions::CirclePartition;
use crate::{Error, Result};

/// Largest grid (`s·t` cells) accepted by [`enumerate_mn`].
pub const MAX_MN_CELLS: usize = 36;

/// Largest ground set accepted by [`enumerate_mn`].
pub const MAX_MN_POINTS: usize = 8;

/// An assignment of a grid cell `(p, q)` (1-based) to every point of a
/// multi-circle ground set.
///
/// The cyclic consistency condition couples neighbouring points on each
/// circle: writing `P_{i,l} = (p_{i,l}, q_{i,l})` on a circle of length
/// `2k`, it requires `p_{i,2l} = p_{i,2l+1}` and `q_{i,2l-1} = q_{i,2l}`
/// for `l = 1..=k`, with position `2k + 1` cyclically identified with `1`.
/// Odd positions carry plain factors, even positions conjugated ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    pairs: Vec<Vec<(usize, usize)>>,
}

impl MultiIndex {
    /// Builds a multi-index after checking ranges and the cyclic
    /// consistency condition.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] if a circle has odd length, a cell leaves the
    /// `s × t` grid, or the consistency condition fails.
    pub fn new(pairs: Vec<Vec<(usize, usize)>>, s: usize, t: usize) -> Result<Self> {
        for (i, circle) in pairs.iter().enumerate() {
            if circle.is_empty() || circle.len() % 2 != 0 {
                return Err(Error::Domain(format!(
                    "circle {} must have positive even length, got {}",
                    i + 1,
                    circle.len()
                )));
            }
            for &(p, q) in circle {
                if p < 1 || p > s || q < 1 || q > t {
                    return Err(Error::Domain(format!(
                        "cell ({p}, {q}) leaves the {s} × {t} grid"
                    )));
                }
            }
        }
        let index = MultiIndex { pairs };
        if !index.is_consistent() {
            return Err(Error::Domain(
                "assignment violates the cyclic consistency condition".into(),
            ));
        }
        Ok(index)
    }

    /// Number of circles.
    pub fn num_circles(&self) -> usize {
        self.pairs.len()
    }

    /// Length of a circle (1-based).
    pub fn circle_length(&self, circle: usize) -> usize {
        self.pairs[circle - 1].len()
    }

    /// The cell assigned to position `l` on `circle` (both 1-based).
    ///
    /// # Panics
    ///
    /// Panics if the point is out of range.
    pub fn pair(&self, circle: usize, position: usize) -> (usize, usize) {
        self.pairs[circle - 1][position - 1]
    }

    /// Whether the factor at a position enters conjugated (even positions).
    pub fn is_conjugated(position: usize) -> bool {
        position.is_multiple_of(2)
    }

    /// Checks the cyclic consistency condition.
    fn is_consistent(&self) -> bool {
        for circle in &self.pairs {
            let len = circle.len();
            for l in 1..=len / 2 {
                // q_{2l-1} = q_{2l}
                if circle[2 * l - 2].1 != circle[2 * l - 1].1 {
                    return false;
                }
                // p_{2l} = p_{2l+1}, cyclically
                if circle[2 * l - 1].0 != circle[(2 * l) % len].0 {
                    return false;
                }
            }
        }
        true
    }

    /// Restricted-growth labels of the relation induced on the ground set
    /// by mapping each point to the class of its cell (flat order: circle 1
    /// positions first, then circle 2, ...).
    fn induced_labels(&self, d: &DependenceStructure) -> Vec<u32> {
        let mut labels = Vec::with_capacity(self.pairs.iter().map(Vec::len).sum());
        let mut seen: Vec<usize> = Vec::new();
        for circle in &self.pairs {
            for &(p, q) in circle {
                let class = d.class_id(p, q);
                let label = match seen.iter().position(|&c| c == class) {
                    Some(idx) => idx as u32,
                    None => {
                        seen.push(class);
                        (seen.len() - 1) as u32
                    }
                };
                labels.push(label);
            }
        }
        labels
    }

    /// Whether every same-circle pair of points in a common block of `pi`
    /// is assigned exactly equal cells (the stronger within-circle equality
    /// property).
    pub fn has_equal_pairs_within_circles(&self, pi: &CirclePartition) -> bool {
        for block in pi.blocks() {
            for (idx, &a) in block.iter().enumerate() {
                for &b in &block[idx + 1..] {
                    if a.circle == b.circle
                        && self.pair(a.circle, a.position) != self.pair(b.circle, b.position)
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Which elements of the assignment set to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MnConstraint {
    /// All assignments whose induced relation has exactly the blocks of π.
    All,
    /// Additionally require equal cells within every same-circle part of a
    /// block (the subset whose complement is asymptotically negligible).
    PropertyP,
}

/// Exhaustively enumerates the assignments consistent with the cyclic
/// condition whose induced cell-class relation reproduces `pi` exactly.
///
/// Free choices live at the odd positions of each circle (the consistency
/// condition derives the rest), so the search space is `(s·t)^{points/2}`.
///
/// # Errors
///
/// [`Error::SizeLimit`] if the grid exceeds [`MAX_MN_CELLS`] cells or the
/// ground set exceeds [`MAX_MN_POINTS`] points; [`Error::Domain`] if a
/// circle of `pi` has odd length.
pub fn enumerate_mn(
    pi: &CirclePartition,
    d: &DependenceStructure,
    constraint: MnConstraint,
) -> Result<Vec<MultiIndex>> {
    let (s, t) = (d.s(), d.t());
    let cells = s * t;
    if cells > MAX_MN_CELLS {
        return Err(Error::SizeLimit {
            what: "grid cells s·t for assignment enumeration",
            got: cells,
            limit: MAX_MN_CELLS,
        });
    }
    if pi.total_points() > MAX_MN_POINTS {
        return Err(Error::SizeLimit {
            what: "ground-set points for assignment enumeration",
            got: pi.total_points(),
            limit: MAX_MN_POINTS,
        });
    }
    // Circle lengths are even by construction of the partition type.
    let lengths = pi.lengths().to_vec();

    // Target labels of π in flat order, as a restricted growth string.
    let target: Vec<u32> = {
        let sp = pi.set_partition();
        sp.rgs().to_vec()
    };

    let free_slots: usize = lengths.iter().map(|len| len / 2).sum();
    let all_cells: Vec<(usize, usize)> = (1..=s)
        .flat_map(|p| (1..=t).map(move |q| (p, q)))
        .collect();

    let mut found = Vec::new();
    let mut choice = vec![0_usize; free_slots];
    'outer: loop {
        // Materialize the assignment from the free odd-position choices.
        let mut pairs: Vec<Vec<(usize, usize)>> = Vec::with_capacity(lengths.len());
        let mut slot = 0;
        for &len in &lengths {
            let k = len / 2;
            let odd: Vec<(usize, usize)> = (0..k).map(|j| all_cells[choice[slot + j]]).collect();
            slot += k;
            let mut circle = vec![(0, 0); len];
            for (l, &cell) in odd.iter().enumerate() {
                circle[2 * l] = cell; // position 2l+1 (odd)
                circle[2 * l + 1] = (odd[(l + 1) % k].0, cell.1); // position 2l+2
            }
            pairs.push(circle);
        }
        let candidate = MultiIndex { pairs };
        debug_assert!(candidate.is_consistent());
        if candidate.induced_labels(d) == target
            && (constraint == MnConstraint::All
                || candidate.has_equal_pairs_within_circles(pi))
        {
            found.push(candidate);
        }

        // Odometer increment over the free choices.
        for pos in (0..free_slots).rev() {
            choice[pos] += 1;
            if choice[pos] < cells {
                continue 'outer;
            }
            choice[pos] = 0;
        }
        break;
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate_set_partitions, CircleIndex, SetPartition};

    fn circles_2_2(blocks: &[Vec<CircleIndex>]) -> CirclePartition {
        CirclePartition::new(&[2, 2], blocks).expect("valid partition")
    }

    fn ci(circle: usize, position: usize) -> CircleIndex {
        CircleIndex::new(circle, position)
    }

    #[test]
    fn consistency_condition_is_enforced() {
        // Valid: circle (p1,q1),(p2,q1) with p2 closing back to p1.
        assert!(MultiIndex::new(vec![vec![(1, 1), (1, 1)]], 2, 2).is_ok());
        assert!(MultiIndex::new(vec![vec![(1, 2), (1, 2)]], 2, 2).is_ok());
        // q must repeat within the odd/even pair.
        assert!(MultiIndex::new(vec![vec![(1, 1), (1, 2)]], 2, 2).is_err());
        // p must close cyclically.
        assert!(MultiIndex::new(vec![vec![(1, 1), (2, 1)]], 2, 2).is_err());
        // Length 4: (p1,q1),(p2,q1),(p2,q2),(p1,q2).
        assert!(MultiIndex::new(vec![vec![(1, 1), (2, 1), (2, 2), (1, 2)]], 2, 2).is_ok());
        assert!(MultiIndex::new(vec![vec![(1, 1), (2, 1), (2, 2), (2, 2)]], 2, 2).is_err());
        // Odd length and range violations.
        assert!(MultiIndex::new(vec![vec![(1, 1)]], 2, 2).is_err());
        assert!(MultiIndex::new(vec![vec![(3, 1), (3, 1)]], 2, 2).is_err());
    }

    #[test]
    fn four_block_enumeration_has_one_element_per_cell() {
        let d = DependenceStructure::independent(2, 2).expect("grid");
        let four_block = circles_2_2(&[vec![ci(1, 1), ci(1, 2), ci(2, 1), ci(2, 2)]]);
        let found = enumerate_mn(&four_block, &d, MnConstraint::All).expect("enumeration");
        assert_eq!(found.len(), 4);
        for p in &found {
            let cell = p.pair(1, 1);
            assert_eq!(p.pair(1, 2), cell);
            assert_eq!(p.pair(2, 1), cell);
            assert_eq!(p.pair(2, 2), cell);
        }
    }

    #[test]
    fn cross_circle_pairing_is_empty_under_independence() {
        // Pairing (1,1)~(2,1), (1,2)~(2,2) separates the two positions of
        // each circle, but the consistency condition forces them equal.
        let d = DependenceStructure::independent(2, 2).expect("grid");
        let pairing = circles_2_2(&[
            vec![ci(1, 1), ci(2, 1)],
            vec![ci(1, 2), ci(2, 2)],
        ]);
        let found = enumerate_mn(&pairing, &d, MnConstraint::All).expect("enumeration");
        assert!(found.is_empty());
    }

    #[test]
    fn same_circle_pairing_counts_distinct_cell_pairs() {
        let d = DependenceStructure::independent(2, 2).expect("grid");
        let within = circles_2_2(&[
            vec![ci(1, 1), ci(1, 2)],
            vec![ci(2, 1), ci(2, 2)],
        ]);
        let found = enumerate_mn(&within, &d, MnConstraint::All).expect("enumeration");
        // Each circle picks a cell, distinct across circles: st·(st−1).
        assert_eq!(found.len(), 12);
        for p in &found {
            assert_ne!(p.pair(1, 1), p.pair(2, 1));
        }
    }

    #[test]
    fn enumeration_respects_class_semantics() {
        // Column blocks of width 2 on a 2×2 grid: (p,1) ~ (p,2).
        let d = DependenceStructure::column_block(2, 2, 2).expect("grid");
        let four_block = circles_2_2(&[vec![ci(1, 1), ci(1, 2), ci(2, 1), ci(2, 2)]]);
        let found = enumerate_mn(&four_block, &d, MnConstraint::All).expect("enumeration");
        // All four points in one class: pick a row (2 ways) and any columns
        // for the two free slots (2·2), all equivalent: 2·4 = 8.
        assert_eq!(found.len(), 8);
        let strict = enumerate_mn(&four_block, &d, MnConstraint::PropertyP).expect("enumeration");
        // Equal cells within each circle are automatic here (consistency),
        // and the 4-block also spans both circles without forcing equality
        // across them, so the within-circle property keeps all 8.
        assert_eq!(strict.len(), 8);
    }

    #[test]
    fn property_filter_matches_definition_exhaustively() {
        let d = DependenceStructure::column_block(2, 2, 2).expect("grid");
        let lengths = [4_usize, 2];
        for sp in enumerate_set_partitions(6).expect("partitions") {
            let pi = match CirclePartition::from_set_partition(&lengths, sp.clone()) {
                Ok(pi) => pi,
                Err(_) => continue,
            };
            let all = enumerate_mn(&pi, &d, MnConstraint::All).expect("enumeration");
            let strict: Vec<_> = enumerate_mn(&pi, &d, MnConstraint::PropertyP)
                .expect("enumeration");
            for p in &strict {
                assert!(all.contains(p), "filtered set must be a subset");
                assert!(p.has_equal_pairs_within_circles(&pi));
            }
            for p in &all {
                let equal = p.has_equal_pairs_within_circles(&pi);
                assert_eq!(
                    strict.contains(p),
                    equal,
                    "membership in the filtered set must match the equality property"
                );
            }
        }
    }

    #[test]
    fn guards_reject_large_inputs() {
        let big = DependenceStructure::independent(7, 7).expect("grid");
        let four_block = circles_2_2(&[vec![ci(1, 1), ci(1, 2), ci(2, 1), ci(2, 2)]]);
        assert!(matches!(
            enumerate_mn(&four_block, &big, MnConstraint::All),
            Err(Error::SizeLimit { .. })
        ));

        let d = DependenceStructure::independent(2, 2).expect("grid");
        let ten_points = CirclePartition::from_set_partition(
            &[6, 4],
            SetPartition::singletons(10),
        )
        .expect("partition");
        assert!(matches!(
            enumerate_mn(&ten_points, &d, MnConstraint::All),
            Err(Error::SizeLimit { .. })
        ));
    }
}

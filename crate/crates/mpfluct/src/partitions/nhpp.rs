//! Non-crossing half pair partitions and their dot-structure encoding.
//!
//! A *half pair partition* of `{1, ..., n}` (cyclically ordered) consists of
//! 2-blocks and singletons; the singletons are called *open connectors*. It
//! is *non-crossing* when for every 2-block `{l, l'}` and any witnesses `q`
//! strictly between `l` and `l'` and `q'` strictly between `l'` and `l`, the
//! witnesses are not equivalent and at most one of them is an open
//! connector. These objects arise by cutting an all-connector two-circle
//! partition apart: each circle keeps its same-circle 2-blocks, and the
//! severed connector points degenerate into singletons.
//!
//! Every 2-block of a non-crossing half pair partition has a well-defined
//! *initial point* `γ` — the endpoint whose forward open interval to the
//! other endpoint is free of open connectors — provided at least one open
//! connector exists. Grading by the number of 2-blocks with even `γ` splits
//! the family `NHPP(2k, 2m)` (ground `[2k]`, `2m` open connectors) into
//! classes `NHPP(2k, 2m, j)` of cardinality `C(k,j)·C(k,m+j)`.
//!
//! The cardinality follows from an explicit bijection with *dot structures*:
//! colorings of `[2k]` with `j` black dots on odd numbers and `k-(m+j)`
//! black dots on even numbers. Forward, the non-initial endpoint of every
//! 2-block is colored black. Backward, each black dot walks down (cyclically)
//! and connects to the first available white dot, where passing a black dot
//! obliges the walk to skip one additional white dot.

use super::binomial;
use super::set_partition::SetPartition;
use crate::{Error, Result};

/// Hard cap on the ground size of enumerated half pair partitions.
pub const MAX_NHPP_POINTS: usize = 24;

/// A half pair partition: 2-blocks plus singleton open connectors on a
/// cyclically ordered ground set, validated to be non-crossing.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HalfPairPartition {
    partition: SetPartition,
}

/// Positions strictly between `from` and `to`, walking cyclically forward on
/// `{1, ..., n}`.
fn cyclic_between(n: usize, from: usize, to: usize) -> Vec<usize> {
    assert!(from != to && from >= 1 && from <= n && to >= 1 && to <= n);
    let mut out = Vec::new();
    let mut r = from % n + 1;
    while r != to {
        out.push(r);
        r = r % n + 1;
    }
    out
}

impl HalfPairPartition {
    /// Builds a half pair partition of `{1, ..., n}` from explicit blocks,
    /// rejecting blocks of size three or more and crossing configurations.
    pub fn new(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        Self::from_set_partition(SetPartition::from_blocks(n, blocks)?)
    }

    /// Validates an existing partition as a non-crossing half pair partition.
    pub fn from_set_partition(partition: SetPartition) -> Result<Self> {
        let n = partition.ground_size();
        if n == 0 {
            return Err(Error::Partition("ground set must be nonempty".into()));
        }
        let blocks = partition.blocks();
        for block in &blocks {
            if block.len() > 2 {
                return Err(Error::Partition(format!(
                    "half pair partitions admit only pairs and singletons, got a block of {}",
                    block.len()
                )));
            }
        }
        let open: Vec<bool> = {
            let mut open = vec![false; n + 1];
            for block in &blocks {
                if block.len() == 1 {
                    open[block[0]] = true;
                }
            }
            open
        };
        for block in &blocks {
            if let &[l, lp] = block.as_slice() {
                for q in cyclic_between(n, l, lp) {
                    for qp in cyclic_between(n, lp, l) {
                        if partition.same_block(q, qp) {
                            return Err(Error::Partition(format!(
                                "crossing: {{{l},{lp}}} is crossed by the pair {{{q},{qp}}}"
                            )));
                        }
                        if open[q] && open[qp] {
                            return Err(Error::Partition(format!(
                                "crossing: {{{l},{lp}}} separates open connectors {q} and {qp}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(HalfPairPartition { partition })
    }

    /// Ground set size.
    pub fn ground_size(&self) -> usize {
        self.partition.ground_size()
    }

    /// The underlying canonical partition.
    pub fn set_partition(&self) -> &SetPartition {
        &self.partition
    }

    /// The blocks as sorted element lists, ordered by least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.partition.blocks()
    }

    /// The 2-blocks, each as `(smaller, larger)`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.blocks()
            .into_iter()
            .filter(|b| b.len() == 2)
            .map(|b| (b[0], b[1]))
            .collect()
    }

    /// The singleton positions.
    pub fn open_connectors(&self) -> Vec<usize> {
        self.blocks()
            .into_iter()
            .filter(|b| b.len() == 1)
            .map(|b| b[0])
            .collect()
    }

    /// Whether position `l` is a singleton.
    pub fn is_open_connector(&self, l: usize) -> bool {
        let id = self.partition.block_id(l);
        (1..=self.ground_size()).all(|q| q == l || self.partition.block_id(q) != id)
    }

    /// Initial point of the 2-block `{l, l'}`: the endpoint whose forward
    /// open interval to the other endpoint contains no open connectors.
    /// Errors when the endpoints are not a 2-block or when no open connector
    /// exists anywhere (both sides free, so the choice is ambiguous).
    pub fn gamma(&self, l: usize, lp: usize) -> Result<usize> {
        let n = self.ground_size();
        if l == lp || l == 0 || lp == 0 || l > n || lp > n {
            return Err(Error::Domain(format!(
                "initial point needs two distinct positions in 1..={n}, got {l} and {lp}"
            )));
        }
        if !self.partition.same_block(l, lp) {
            return Err(Error::Domain(format!("{l} and {lp} are not paired")));
        }
        let free = |from: usize, to: usize| {
            cyclic_between(n, from, to)
                .iter()
                .all(|&q| !self.is_open_connector(q))
        };
        match (free(l, lp), free(lp, l)) {
            (true, false) => Ok(l),
            (false, true) => Ok(lp),
            (true, true) => Err(Error::Classification(format!(
                "initial point of {{{l},{lp}}} is ambiguous: no open connectors on either side"
            ))),
            (false, false) => Err(Error::Classification(format!(
                "initial point of {{{l},{lp}}} is undefined: open connectors on both sides"
            ))),
        }
    }

    /// Number of 2-blocks whose initial point is even.
    pub fn even_count(&self) -> Result<usize> {
        let mut count = 0;
        for (l, lp) in self.pairs() {
            if self.gamma(l, lp)? % 2 == 0 {
                count += 1;
            }
        }
        Ok(count)
    }
}

/// Dot color.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum DotColor {
    /// Open connectors and initial points.
    White,
    /// Non-initial endpoints of 2-blocks.
    Black,
}

/// A coloring of `{1, ..., 2k}` encoding a non-crossing half pair partition.
///
/// With `j` black dots on odd numbers and `e` black dots on even numbers,
/// the structure corresponds to a partition with `m = k - j - e` pairs of
/// open connectors and `even = j`; colorings with more black dots than that
/// allows (`m < 0`) are rejected.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DotStructure {
    colors: Vec<DotColor>,
}

impl DotStructure {
    /// Validates a coloring: even ground size and a nonnegative implied
    /// number of open connectors.
    pub fn new(colors: Vec<DotColor>) -> Result<Self> {
        let n = colors.len();
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::Bijection(format!(
                "dot structures live on an even ground set, got {n} dots"
            )));
        }
        let d = DotStructure { colors };
        if d.black_count() > d.half_size() {
            return Err(Error::Bijection(
                "more black dots than pairable positions; no consistent matching".into(),
            ));
        }
        Ok(d)
    }

    /// Ground size `2k`.
    pub fn ground_size(&self) -> usize {
        self.colors.len()
    }

    /// `k`, half the ground size.
    pub fn half_size(&self) -> usize {
        self.colors.len() / 2
    }

    /// Color at 1-based position `l`.
    pub fn color(&self, l: usize) -> DotColor {
        self.colors[l - 1]
    }

    /// The colors, position by position.
    pub fn colors(&self) -> &[DotColor] {
        &self.colors
    }

    /// Number of black dots on odd positions (the even-initial-point count
    /// of the encoded partition).
    pub fn black_on_odd(&self) -> usize {
        self.colors
            .iter()
            .enumerate()
            .filter(|(i, &c)| i % 2 == 0 && c == DotColor::Black)
            .count()
    }

    /// Total number of black dots (the number of 2-blocks of the encoded
    /// partition).
    pub fn black_count(&self) -> usize {
        self.colors.iter().filter(|&&c| c == DotColor::Black).count()
    }

    /// Half the number of open connectors of the encoded partition:
    /// `k` minus the number of black dots.
    pub fn open_pairs(&self) -> usize {
        self.half_size() - self.black_count()
    }
}

/// Colors black the non-initial endpoint of every 2-block of `pi`.
///
/// Requires an even ground size and at least one open connector (otherwise
/// initial points are ambiguous).
pub fn dot_bijection(pi: &HalfPairPartition) -> Result<DotStructure> {
    let n = pi.ground_size();
    if !n.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "the dot encoding needs an even ground size, got {n}"
        )));
    }
    let mut colors = vec![DotColor::White; n];
    for (l, lp) in pi.pairs() {
        let gamma = pi.gamma(l, lp)?;
        let black = if gamma == l { lp } else { l };
        colors[black - 1] = DotColor::Black;
    }
    DotStructure::new(colors)
}

/// Reconstructs the partition encoded by a dot structure: each black dot
/// walks cyclically downward and pairs with the first available white dot,
/// where every black dot passed obliges the walk to skip one more white dot.
/// The whites left unpaired become the open connectors.
pub fn dot_bijection_inverse(d: &DotStructure) -> Result<HalfPairPartition> {
    let n = d.ground_size();
    if d.open_pairs() == 0 {
        return Err(Error::Bijection(
            "a structure with no open connectors does not encode a partition".into(),
        ));
    }
    let prev = |l: usize| if l == 1 { n } else { l - 1 };
    let mut claimed = vec![false; n + 1];
    let mut pairs = Vec::new();
    for b in 1..=n {
        if d.color(b) != DotColor::Black {
            continue;
        }
        let mut skip = 0usize;
        let mut q = prev(b);
        let partner = loop {
            if q == b {
                return Err(Error::Bijection(format!(
                    "the walk from black dot {b} found no available white dot"
                )));
            }
            match d.color(q) {
                DotColor::Black => skip += 1,
                DotColor::White if skip == 0 => break q,
                DotColor::White => skip -= 1,
            }
            q = prev(q);
        };
        if claimed[partner] {
            return Err(Error::Bijection(format!(
                "white dot {partner} is claimed twice; no consistent matching"
            )));
        }
        claimed[partner] = true;
        pairs.push((b, partner));
    }
    let mut blocks: Vec<Vec<usize>> = pairs.into_iter().map(|(a, b)| vec![a, b]).collect();
    for (w, &taken) in claimed.iter().enumerate().take(n + 1).skip(1) {
        if d.color(w) == DotColor::White && !taken {
            blocks.push(vec![w]);
        }
    }
    HalfPairPartition::new(n, &blocks)
        .map_err(|e| Error::Bijection(format!("inconsistent dot structure: {e}")))
}

/// `C(k,j) * C(k,m+j)`, the cardinality of `NHPP(2k, 2m, j)`.
pub fn nhpp_count(k: usize, m: usize, j: usize) -> Result<u128> {
    check_nhpp_args(k, m, j)?;
    Ok(binomial(k as u64, j as u64) * binomial(k as u64, (m + j) as u64))
}

fn check_nhpp_args(k: usize, m: usize, j: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Domain("the ground set half-size must be positive".into()));
    }
    if m == 0 || m > k {
        return Err(Error::Domain(format!(
            "the open-connector half-count {m} must lie in 1..={k}"
        )));
    }
    if j > k - m {
        return Err(Error::Domain(format!(
            "the even-pair count {j} must lie in 0..={}",
            k - m
        )));
    }
    Ok(())
}

/// Visits every `r`-subset of `{1, ..., n}` in lexicographic order.
fn for_each_combination(n: usize, r: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if left == 0 {
            f(cur);
            return;
        }
        for v in start..=(n + 1 - left) {
            cur.push(v);
            rec(v + 1, n, left - 1, cur, f);
            cur.pop();
        }
    }
    if r <= n {
        rec(1, n, r, &mut Vec::with_capacity(r), f);
    }
}

/// All non-crossing perfect matchings of a linearly ordered point list.
fn noncrossing_matchings(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if points.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut i = 1;
    // the first point's partner must leave an even number of points inside
    while i < points.len() {
        for inner in noncrossing_matchings(&points[1..i]) {
            for outer in noncrossing_matchings(&points[i + 1..]) {
                let mut m = Vec::with_capacity(points.len() / 2);
                m.push((points[0], points[i]));
                m.extend(inner.iter().copied());
                m.extend(outer.iter().copied());
                out.push(m);
            }
        }
        i += 2;
    }
    out
}

/// Enumerates `NHPP(2k, 2m, j)`: all non-crossing half pair partitions of
/// `{1, ..., 2k}` with `2m` open connectors whose even-initial-point count
/// is `j`. The cardinality is `C(k,j)·C(k,m+j)`.
///
/// No 2-block can span two of the arcs cut out by consecutive open
/// connectors (its two sides would each contain an open connector), so the
/// enumeration places the connectors, skips placements with an odd-length
/// arc, and tiles each arc with linear non-crossing matchings.
pub fn enumerate_nhpp(k: usize, m: usize, j: usize) -> Result<Vec<HalfPairPartition>> {
    check_nhpp_args(k, m, j)?;
    let n = 2 * k;
    if n > MAX_NHPP_POINTS {
        return Err(Error::SizeLimit {
            what: "half pair partition ground size",
            got: n,
            limit: MAX_NHPP_POINTS,
        });
    }
    let mut result = Vec::new();
    for_each_combination(n, 2 * m, &mut |connectors: &[usize]| {
        // points of each arc between cyclically consecutive connectors,
        // in cyclic walk order
        let mut arcs: Vec<Vec<usize>> = Vec::with_capacity(connectors.len());
        for (i, &c) in connectors.iter().enumerate() {
            let next = connectors[(i + 1) % connectors.len()];
            if next == c % n + 1 || (connectors.len() == 1 && c == next) {
                arcs.push(Vec::new());
            } else {
                arcs.push(cyclic_between(n, c, next));
            }
        }
        if arcs.iter().any(|a| a.len() % 2 != 0) {
            return;
        }
        let per_arc: Vec<Vec<Vec<(usize, usize)>>> =
            arcs.iter().map(|a| noncrossing_matchings(a)).collect();
        // odometer over the cartesian product of per-arc matchings
        let mut choice = vec![0usize; per_arc.len()];
        loop {
            let mut blocks: Vec<Vec<usize>> =
                connectors.iter().map(|&c| vec![c]).collect();
            for (arc, &pick) in per_arc.iter().zip(&choice) {
                for &(a, b) in &arc[pick] {
                    blocks.push(vec![a, b]);
                }
            }
            let pi = HalfPairPartition::new(n, &blocks)
                .expect("arc-confined matchings are non-crossing");
            if pi.even_count().expect("open connectors exist") == j {
                result.push(pi);
            }
            // advance the odometer
            let mut pos = 0;
            loop {
                if pos == choice.len() {
                    return;
                }
                choice[pos] += 1;
                if choice[pos] < per_arc[pos].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    });
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn hpp(n: usize, blocks: &[&[usize]]) -> HalfPairPartition {
        let blocks: Vec<Vec<usize>> = blocks.iter().map(|b| b.to_vec()).collect();
        HalfPairPartition::new(n, &blocks).unwrap()
    }

    #[test]
    fn construction_rejects_triples_and_crossings() {
        assert!(HalfPairPartition::new(3, &[vec![1, 2, 3]]).is_err());
        // interleaved pairs
        assert!(HalfPairPartition::new(4, &[vec![1, 3], vec![2, 4]]).is_err());
        // a pair separating two open connectors
        assert!(HalfPairPartition::new(4, &[vec![1, 3], vec![2], vec![4]]).is_err());
        assert!(HalfPairPartition::new(0, &[]).is_err());
    }

    #[test]
    fn gamma_on_four_points() {
        // {1,2} + connectors 3, 4: the free side starts at 1
        assert_eq!(hpp(4, &[&[1, 2], &[3], &[4]]).even_count().unwrap(), 0);
        // {2,3}: the free side starts at 2
        assert_eq!(hpp(4, &[&[2, 3], &[1], &[4]]).even_count().unwrap(), 1);
        // {3,4}: free side starts at 3
        assert_eq!(hpp(4, &[&[3, 4], &[1], &[2]]).even_count().unwrap(), 0);
        // {1,4}: the wrap side ]4,1[ is empty, so 4 is initial
        assert_eq!(hpp(4, &[&[1, 4], &[2], &[3]]).even_count().unwrap(), 1);
    }

    #[test]
    fn gamma_errors_without_open_connectors() {
        let pi = hpp(2, &[&[1, 2]]);
        assert!(pi.gamma(1, 2).is_err());
        assert!(pi.even_count().is_err());
    }

    #[test]
    fn twelve_point_example() {
        let pi = hpp(
            12,
            &[
                &[1, 12],
                &[2, 11],
                &[3],
                &[4],
                &[5, 6],
                &[7],
                &[8, 9],
                &[10],
            ],
        );
        assert_eq!(pi.open_connectors(), vec![3, 4, 7, 10]);
        assert_eq!(pi.even_count().unwrap(), 2);

        let d = dot_bijection(&pi).unwrap();
        let blacks: Vec<usize> = (1..=12).filter(|&l| d.color(l) == DotColor::Black).collect();
        assert_eq!(blacks, vec![1, 2, 6, 9]);
        assert_eq!(d.black_on_odd(), 2);
        assert_eq!(d.open_pairs(), 2);

        assert_eq!(dot_bijection_inverse(&d).unwrap(), pi);
    }

    #[test]
    fn all_white_structure_decodes_to_all_connectors() {
        for k in 1..=5 {
            let d = DotStructure::new(vec![DotColor::White; 2 * k]).unwrap();
            let pi = dot_bijection_inverse(&d).unwrap();
            assert!(pi.pairs().is_empty());
            assert_eq!(pi.open_connectors().len(), 2 * k);
        }
    }

    #[test]
    fn dot_structure_validation() {
        assert!(DotStructure::new(vec![]).is_err());
        assert!(DotStructure::new(vec![DotColor::White; 3]).is_err());
        // two black dots on two positions: more pairs than the ground allows
        assert!(DotStructure::new(vec![DotColor::Black, DotColor::Black]).is_err());
        // k = 1 with one black dot implies no open connectors
        let d = DotStructure::new(vec![DotColor::Black, DotColor::White]).unwrap();
        assert!(dot_bijection_inverse(&d).is_err());
    }

    #[test]
    fn enumerate_smallest_cases() {
        let sets = |items: Vec<HalfPairPartition>| -> HashSet<HalfPairPartition> {
            items.into_iter().collect()
        };
        assert_eq!(
            sets(enumerate_nhpp(2, 1, 0).unwrap()),
            sets(vec![
                hpp(4, &[&[1, 2], &[3], &[4]]),
                hpp(4, &[&[3, 4], &[1], &[2]]),
            ])
        );
        assert_eq!(
            sets(enumerate_nhpp(2, 1, 1).unwrap()),
            sets(vec![
                hpp(4, &[&[2, 3], &[1], &[4]]),
                hpp(4, &[&[1, 4], &[2], &[3]]),
            ])
        );
        let all_connectors = enumerate_nhpp(1, 1, 0).unwrap();
        assert_eq!(all_connectors.len(), 1);
        assert!(all_connectors[0].pairs().is_empty());
    }

    #[test]
    fn enumerate_guards() {
        assert!(enumerate_nhpp(0, 1, 0).is_err());
        assert!(enumerate_nhpp(3, 0, 0).is_err());
        assert!(enumerate_nhpp(3, 4, 0).is_err());
        assert!(enumerate_nhpp(3, 1, 3).is_err());
        assert!(enumerate_nhpp(13, 1, 0).is_err());
        assert!(nhpp_count(3, 1, 3).is_err());
    }

    #[test]
    fn enumeration_matches_the_closed_form() {
        for k in 1..=6 {
            for m in 1..=k {
                for j in 0..=(k - m) {
                    let count = enumerate_nhpp(k, m, j).unwrap().len() as u128;
                    assert_eq!(
                        count,
                        nhpp_count(k, m, j).unwrap(),
                        "count mismatch at k={k} m={m} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn enumeration_is_duplicate_free() {
        for k in 1..=5 {
            for m in 1..=k {
                for j in 0..=(k - m) {
                    let items = enumerate_nhpp(k, m, j).unwrap();
                    let set: HashSet<_> = items.iter().cloned().collect();
                    assert_eq!(set.len(), items.len());
                }
            }
        }
    }

    /// All partitions of `{1, ..., n}` into pairs and singletons.
    fn involutions(n: usize) -> Vec<Vec<Vec<usize>>> {
        fn rec(remaining: &[usize]) -> Vec<Vec<Vec<usize>>> {
            match remaining.split_first() {
                None => vec![Vec::new()],
                Some((&first, rest)) => {
                    let mut out = Vec::new();
                    for mut tail in rec(rest) {
                        tail.push(vec![first]);
                        out.push(tail);
                    }
                    for (i, &partner) in rest.iter().enumerate() {
                        let others: Vec<usize> = rest
                            .iter()
                            .enumerate()
                            .filter(|&(q, _)| q != i)
                            .map(|(_, &v)| v)
                            .collect();
                        for mut tail in rec(&others) {
                            tail.push(vec![first, partner]);
                            out.push(tail);
                        }
                    }
                    out
                }
            }
        }
        rec(&(1..=n).collect::<Vec<_>>())
    }

    #[test]
    fn enumeration_agrees_with_brute_force() {
        // independently filter all pair-and-singleton partitions by the
        // literal non-crossing definition
        for k in 1..=4usize {
            let n = 2 * k;
            for m in 1..=k {
                for j in 0..=(k - m) {
                    let expect: HashSet<HalfPairPartition> = involutions(n)
                        .into_iter()
                        .filter_map(|blocks| HalfPairPartition::new(n, &blocks).ok())
                        .filter(|pi| pi.open_connectors().len() == 2 * m)
                        .filter(|pi| pi.even_count().unwrap() == j)
                        .collect();
                    let got: HashSet<HalfPairPartition> =
                        enumerate_nhpp(k, m, j).unwrap().into_iter().collect();
                    assert_eq!(got, expect, "mismatch at k={k} m={m} j={j}");
                }
            }
        }
    }

    #[test]
    fn pairs_join_odd_and_even_positions() {
        for k in 1..=5 {
            for m in 1..=k {
                for j in 0..=(k - m) {
                    for pi in enumerate_nhpp(k, m, j).unwrap() {
                        for (l, lp) in pi.pairs() {
                            assert_eq!((l + lp) % 2, 1, "pair ({l},{lp}) in {pi:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dot_bijection_round_trips() {
        for k in 1..=6 {
            for m in 1..=k {
                for j in 0..=(k - m) {
                    for pi in enumerate_nhpp(k, m, j).unwrap() {
                        let d = dot_bijection(&pi).unwrap();
                        assert_eq!(d.black_on_odd(), j);
                        assert_eq!(d.open_pairs(), m);
                        assert_eq!(dot_bijection_inverse(&d).unwrap(), pi);
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_bijection_round_trips_over_all_structures() {
        // every coloring of [2k] with at least one open connector pair
        for k in 1..=5usize {
            let n = 2 * k;
            for mask in 0u32..(1 << n) {
                let colors: Vec<DotColor> = (0..n)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            DotColor::Black
                        } else {
                            DotColor::White
                        }
                    })
                    .collect();
                let Ok(d) = DotStructure::new(colors) else {
                    continue;
                };
                if d.open_pairs() == 0 {
                    continue;
                }
                let pi = dot_bijection_inverse(&d).unwrap();
                assert_eq!(dot_bijection(&pi).unwrap(), d);
            }
        }
    }
}

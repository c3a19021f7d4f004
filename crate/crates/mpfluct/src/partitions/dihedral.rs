//! Dihedral permutations and the all-connector partitions they induce.
//!
//! The reduction of a two-circle partition strips away same-circle pairs and
//! leaves `2m` connectors on each circle. The reduced partitions that
//! survive in the limit are exactly those matching neighboring connectors to
//! neighboring connectors — for `m ≥ 2` the matchings `r ↦ g(r)` with `g`
//! in the dihedral group of order `4m` generated by the `2m`-cycle and the
//! reversal `i ↦ 2m+1−i`. For `m = 1` the convention is a one-element
//! "group" containing the identity on two points, whose partition is the
//! single 4-block (on two circles of length two, any two adjacent points are
//! neighbors both ways, so the pair matchings collapse).
//!
//! The coefficient [`a_coefficient`] counts, for any fixed `g`, the
//! two-circle partitions reducing to `π_g` with a prescribed even-pair
//! count; by cutting such a partition apart along its connectors it factors
//! into two half pair partitions, giving a convolution of the
//! `NHPP(2k, 2m, j)` cardinalities that does not depend on `g`.

use std::collections::BTreeSet;

use super::circle::{CircleIndex, CirclePartition};
use super::nhpp::nhpp_count;
use crate::{Error, Result};

/// A permutation of `{1, ..., 2m}`, an element of the dihedral matching
/// group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DihedralElement {
    // images[r - 1] = g(r), a permutation of 1..=2m
    images: Vec<usize>,
}

impl DihedralElement {
    /// Wraps an explicit permutation given by its images (1-based).
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "dihedral elements act on a positive even number of points, got {n}"
            )));
        }
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Domain(format!(
                    "images do not form a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(DihedralElement { images })
    }

    /// The identity on `{1, ..., degree}`.
    pub fn identity(degree: usize) -> Self {
        DihedralElement {
            images: (1..=degree).collect(),
        }
    }

    /// Number of points acted on (`2m`).
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of `r` (1-based).
    ///
    /// # Panics
    /// If `r` is out of range.
    pub fn apply(&self, r: usize) -> usize {
        self.images[r - 1]
    }

    /// The images, in order.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Whether this is the identity.
    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// The composition `self ∘ other` (apply `other` first).
    ///
    /// # Panics
    /// If the degrees differ.
    pub fn compose(&self, other: &DihedralElement) -> DihedralElement {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        DihedralElement {
            images: (1..=self.degree()).map(|r| self.apply(other.apply(r))).collect(),
        }
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> DihedralElement {
        let mut images = vec![0; self.degree()];
        for (r, &v) in self.images.iter().enumerate() {
            images[v - 1] = r + 1;
        }
        DihedralElement { images }
    }
}

/// The dihedral matching group on `2m` points, sorted canonically.
///
/// For `m ≥ 2` this is the order-`4m` group generated by the `2m`-cycle and
/// the reversal; for `m = 1` it is the one-element set holding the identity
/// on two points.
pub fn dihedral_group(m: usize) -> Result<Vec<DihedralElement>> {
    if m == 0 {
        return Err(Error::Domain("the connector half-count must be positive".into()));
    }
    if m == 1 {
        return Ok(vec![DihedralElement::identity(2)]);
    }
    let n = 2 * m;
    let cycle = DihedralElement {
        images: (1..=n).map(|r| r % n + 1).collect(),
    };
    let reversal = DihedralElement {
        images: (1..=n).rev().collect(),
    };
    let mut closed: BTreeSet<DihedralElement> = BTreeSet::new();
    let mut frontier = vec![DihedralElement::identity(n)];
    while let Some(g) = frontier.pop() {
        if !closed.insert(g.clone()) {
            continue;
        }
        frontier.push(g.compose(&cycle));
        frontier.push(g.compose(&reversal));
    }
    Ok(closed.into_iter().collect())
}

/// The all-connector partition induced by `g`: blocks `{(1,r), (2,g(r))}`
/// on two circles of length `degree`, except that on two circles of length
/// two the identity induces the single 4-block.
///
/// Elements of degree two other than the identity are rejected: the
/// matchings on two-point circles all collapse to the same 4-block, and the
/// identity is its designated representative.
pub fn dihedral_partition(g: &DihedralElement) -> Result<CirclePartition> {
    let n = g.degree();
    if n == 2 {
        if !g.is_identity() {
            return Err(Error::Domain(
                "on two points only the identity induces a partition".into(),
            ));
        }
        return CirclePartition::new(
            &[2, 2],
            &[vec![
                CircleIndex::new(1, 1),
                CircleIndex::new(1, 2),
                CircleIndex::new(2, 1),
                CircleIndex::new(2, 2),
            ]],
        );
    }
    let blocks: Vec<Vec<CircleIndex>> = (1..=n)
        .map(|r| vec![CircleIndex::new(1, r), CircleIndex::new(2, g.apply(r))])
        .collect();
    CirclePartition::new(&[n, n], &blocks)
}

/// Finds the dihedral element whose induced partition equals `pi`, if any.
///
/// Returns `None` when the circle shape is not two equal even lengths or
/// when the partition does not match any group element (such partitions are
/// asymptotically negligible in the covariance calculus).
pub fn dihedral_form(pi: &CirclePartition) -> Option<DihedralElement> {
    if pi.num_circles() != 2 || pi.circle_length(1) != pi.circle_length(2) {
        return None;
    }
    let m = pi.circle_length(1) / 2;
    dihedral_group(m)
        .ok()?
        .into_iter()
        .find(|g| dihedral_partition(g).map(|pg| pg == *pi).unwrap_or(false))
}

/// Number of two-circle partitions (circle lengths `2·k1`, `2·k2`) that
/// reduce to `π_g` for a fixed `g` on `2m` points and have even-pair count
/// `j`. By cutting along the connectors this is the convolution
/// `Σ_i |NHPP(2k1, 2m, i)| · |NHPP(2k2, 2m, j−i)|`, independent of `g`.
pub fn a_coefficient(k1: usize, k2: usize, m: usize, j: usize) -> Result<u128> {
    if k1 == 0 || k2 == 0 {
        return Err(Error::Domain("circle half-lengths must be positive".into()));
    }
    if m == 0 || m > k1.min(k2) {
        return Err(Error::Domain(format!(
            "the connector half-count {m} must lie in 1..={}",
            k1.min(k2)
        )));
    }
    if j > k1 + k2 - 2 * m {
        return Err(Error::Domain(format!(
            "the even-pair count {j} must lie in 0..={}",
            k1 + k2 - 2 * m
        )));
    }
    let lo = j.saturating_sub(k2 - m);
    let hi = j.min(k1 - m);
    let mut acc: u128 = 0;
    for i in lo..=hi {
        acc += nhpp_count(k1, m, i)? * nhpp_count(k2, m, j - i)?;
    }
    Ok(acc)
}

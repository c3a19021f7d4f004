//! Partition combinatorics on plain ground sets, on unions of discrete
//! circles, and on the half-open circle variants used by the coefficient
//! identities.
//!
//! The objects here are small and exact: enumeration sizes are guarded, and
//! every count has an independent closed form or oracle in the test suite.

mod circle;
mod dihedral;
mod nhpp;
mod set_partition;

pub use circle::{
    Classification, CircleIndex, CirclePartition, PartitionType, MAX_CIRCLE_POINTS,
};
pub use dihedral::{
    a_coefficient, dihedral_form, dihedral_group, dihedral_partition, DihedralElement,
};
pub use nhpp::{
    dot_bijection, dot_bijection_inverse, enumerate_nhpp, nhpp_count, DotColor, DotStructure,
    HalfPairPartition, MAX_NHPP_POINTS,
};
pub use set_partition::{enumerate_set_partitions, SetPartition, MAX_GROUND_SIZE};

/// Binomial coefficient `C(n, k)` as an exact `u128`.
///
/// Returns 0 when `k > n`. Arguments up to `n = 64` stay well inside `u128`
/// (the largest value used by the coefficient tables is `C(64, 32)`).
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // Multiply before dividing; the intermediate product of a binomial
        // prefix with the next factor is always divisible by i + 1.
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::binomial;

    #[test]
    fn binomial_matches_pascal_triangle() {
        // Oracle: Pascal's recurrence, computed independently.
        let mut row: Vec<u128> = vec![1];
        for n in 0..=64u64 {
            for (k, &v) in row.iter().enumerate() {
                assert_eq!(binomial(n, k as u64), v, "C({n},{k})");
            }
            let mut next = vec![1u128];
            for w in row.windows(2) {
                next.push(w[0] + w[1]);
            }
            next.push(1);
            row = next;
        }
    }

    #[test]
    fn binomial_out_of_range_is_zero() {
        assert_eq!(binomial(5, 6), 0);
        assert_eq!(binomial(0, 1), 0);
    }
}

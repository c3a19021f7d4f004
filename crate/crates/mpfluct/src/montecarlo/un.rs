//! Exact finite-size quadratic functionals of the dependence structure:
//! the class-pair covariance sum that gives the variance of `tr W`, and the
//! tiny-scale brute-force evaluation of its higher-order analogue via
//! dihedral matchings.
//!
//! Both evaluation paths accumulate their sums in exact rational
//! arithmetic (every addend is a float, hence a rational), apply the exact
//! rational prefactor, and round once at the end — so two paths that sum
//! the same multiset of addends return bitwise-identical floats, whatever
//! their enumeration order.

use num::{BigInt, BigRational, ToPrimitive, Zero};

use crate::ensembles::{DependenceStructure, EntryModel};
use crate::montecarlo::config::ExperimentConfig;
use crate::montecarlo::multi_index::{enumerate_mn, MnConstraint, MultiIndex};
use crate::partitions::{dihedral_group, dihedral_partition};
use crate::{Error, Result};

/// Largest matching half-size accepted by [`un_bruteforce`].
pub const MAX_BRUTEFORCE_M: usize = 2;

/// Largest grid side accepted by [`un_bruteforce`].
pub const MAX_BRUTEFORCE_SIDE: usize = 6;

/// How a quadratic functional value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnMethod {
    /// Closed-form class-pair sum (only for `m = 1`).
    ExactM1,
    /// Exhaustive enumeration over dihedral matchings (tiny grids).
    BruteForce,
    /// Monte Carlo estimate (reported by experiment drivers).
    McEstimate,
}

/// The value of the order-`2m` quadratic functional of the dependence
/// structure, with the total power `k` fixing its ratio prefactor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnValue {
    /// Matching half-size `m` (the functional has order `2m`).
    pub m: usize,
    /// Total power `k = k₁ + k₂` fixing the prefactor exponent `k − 2m`.
    pub k_total: usize,
    /// The value.
    pub value: f64,
    /// How the value was computed.
    pub method: UnMethod,
}

/// Exact `m = 1` value: `μ^{k−2}/n² · Σ C₂(|a(p,q)|², |a(p′,q′)|²)` over all
/// ordered pairs of equivalent cells, using the model's closed-form
/// covariance of squared moduli (available for every built-in model).
///
/// # Errors
///
/// [`Error::Domain`] if `k_total < 2`; configuration errors propagate.
pub fn un_exact_m1(cfg: &ExperimentConfig, k_total: usize) -> Result<UnValue> {
    cfg.validate()?;
    let d = cfg.dependence()?;
    let model = cfg.entry_model()?;
    un_exact_m1_parts(&d, &model, &cfg.mu, cfg.n, k_total)
}

/// [`un_exact_m1`] on prebuilt parts, for callers that already hold the
/// structure and model.
///
/// # Errors
///
/// [`Error::Domain`] if `k_total < 2`.
pub fn un_exact_m1_parts(
    d: &DependenceStructure,
    model: &EntryModel,
    mu: &BigRational,
    n: usize,
    k_total: usize,
) -> Result<UnValue> {
    if k_total < 2 {
        return Err(Error::Domain(
            "total power must be at least 2 for the order-2 functional".into(),
        ));
    }
    let same = rational_from_f64(model.c2_squared_moduli(true));
    let cross = rational_from_f64(model.c2_squared_moduli(false));
    let mut cells: u64 = 0;
    let mut ordered_pairs: u64 = 0;
    for id in 0..d.num_classes() {
        let c = d.class_size(id) as u64;
        cells += c;
        ordered_pairs += c * (c - 1);
    }
    let sum = same * BigRational::from_integer(cells.into())
        + cross * BigRational::from_integer(ordered_pairs.into());
    Ok(UnValue {
        m: 1,
        k_total,
        value: scaled_to_f64(mu, k_total as i64 - 2, n, 2, &sum),
        method: UnMethod::ExactM1,
    })
}

/// Brute-force value of the order-`2m` functional on a tiny grid:
/// `μ^{k−2m}/n^{2m} · Σ_g Σ_P Π_l E(a(P_{1,l})^{ε(l)} a(P_{2,g(l)})^{ε(g(l))})`
/// over the dihedral matchings `g` and the assignments consistent with the
/// induced all-connector partition, conjugating factors at even positions.
///
/// For `m = 1` the matching set degenerates to the identity with the single
/// 4-block partition, and each summand is the covariance of squared moduli,
/// so the value agrees exactly with [`un_exact_m1`].
///
/// # Errors
///
/// [`Error::Domain`] if `m` is zero or `k_total < 2m`;
/// [`Error::SizeLimit`] if `m` exceeds [`MAX_BRUTEFORCE_M`] or the grid
/// exceeds [`MAX_BRUTEFORCE_SIDE`] on either side.
pub fn un_bruteforce(m: usize, cfg: &ExperimentConfig, k_total: usize) -> Result<UnValue> {
    cfg.validate()?;
    let d = cfg.dependence()?;
    let model = cfg.entry_model()?;
    un_bruteforce_parts(m, &d, &model, &cfg.mu, cfg.n, k_total)
}

/// [`un_bruteforce`] on prebuilt parts.
///
/// # Errors
///
/// As for [`un_bruteforce`].
pub fn un_bruteforce_parts(
    m: usize,
    d: &DependenceStructure,
    model: &EntryModel,
    mu: &BigRational,
    n: usize,
    k_total: usize,
) -> Result<UnValue> {
    if m == 0 {
        return Err(Error::Domain("matching half-size m must be positive".into()));
    }
    if m > MAX_BRUTEFORCE_M {
        return Err(Error::SizeLimit {
            what: "matching half-size m",
            got: m,
            limit: MAX_BRUTEFORCE_M,
        });
    }
    let side = d.s().max(d.t());
    if side > MAX_BRUTEFORCE_SIDE {
        return Err(Error::SizeLimit {
            what: "grid side for brute-force functional",
            got: side,
            limit: MAX_BRUTEFORCE_SIDE,
        });
    }
    if k_total < 2 * m {
        return Err(Error::Domain(format!(
            "total power {k_total} must be at least 2m = {}",
            2 * m
        )));
    }

    let mut sum = BigRational::zero();
    for g in dihedral_group(m)? {
        let pi_g = dihedral_partition(&g)?;
        for assignment in enumerate_mn(&pi_g, d, MnConstraint::All)? {
            let addend = if m == 1 {
                pair_product_covariance(&assignment, d, model)?
            } else {
                let mut product = 1.0_f64;
                for l in 1..=2 * m {
                    let gl = g.apply(l);
                    let first = assignment.pair(1, l);
                    let second = assignment.pair(2, gl);
                    let same_entry = first == second;
                    product *= model.pair_expectation(
                        same_entry,
                        MultiIndex::is_conjugated(l),
                        MultiIndex::is_conjugated(gl),
                    );
                    if product == 0.0 {
                        break;
                    }
                }
                product
            };
            if addend != 0.0 {
                sum += rational_from_f64(addend);
            }
        }
    }
    Ok(UnValue {
        m,
        k_total,
        value: scaled_to_f64(mu, k_total as i64 - 2 * m as i64, n, 2 * m, &sum),
        method: UnMethod::BruteForce,
    })
}

/// Analytic covariance of the two per-circle products of an assignment on
/// two circles of length two: the consistency condition collapses each
/// circle to a squared modulus, so the covariance is the model's
/// squared-modulus covariance when the two cells are equivalent and exactly
/// zero otherwise (distinct classes are independent).
///
/// # Errors
///
/// [`Error::Domain`] unless the assignment has exactly two circles of
/// length two.
pub fn pair_product_covariance(
    assignment: &MultiIndex,
    d: &DependenceStructure,
    model: &EntryModel,
) -> Result<f64> {
    if assignment.num_circles() != 2
        || assignment.circle_length(1) != 2
        || assignment.circle_length(2) != 2
    {
        return Err(Error::Domain(
            "the analytic product covariance needs two circles of length two".into(),
        ));
    }
    let first = assignment.pair(1, 1);
    let second = assignment.pair(2, 1);
    if !d.same_class(first, second) {
        return Ok(0.0);
    }
    Ok(model.c2_squared_moduli(first == second))
}

/// The exact rational equal to a finite float.
fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("model covariances are finite")
}

/// `ratio^exp · sum / n^n_power` in exact arithmetic, rounded to the
/// nearest float once at the end.
fn scaled_to_f64(ratio: &BigRational, exp: i64, n: usize, n_power: usize, sum: &BigRational) -> f64 {
    let ratio_pow = if exp >= 0 {
        num::pow::pow(ratio.clone(), exp as usize)
    } else {
        num::pow::pow(ratio.recip(), -exp as usize)
    };
    let n_pow = num::pow::pow(BigRational::from_integer(BigInt::from(n)), n_power);
    (ratio_pow * sum / n_pow)
        .to_f64()
        .expect("functional value fits in a float")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::config::{ModelSpec, StructureSpec};
    use approx::assert_relative_eq;
    use num::rational::Ratio;
    use num::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        Ratio::new(BigInt::from(n), BigInt::from(d))
    }

    fn tiny_config(structure: StructureSpec, model: ModelSpec) -> ExperimentConfig {
        ExperimentConfig {
            n: 4,
            s: Some(4),
            t: Some(4),
            kappa: rat(1, 1),
            mu: rat(1, 1),
            sigma_sq: rat(1, 1),
            structure,
            model,
            powers: vec![],
            gamma_orders: vec![],
            replicates: 100,
            seed: 1,
        }
    }

    #[test]
    fn independent_real_gaussian_value_is_doubled_cell_count() {
        let cfg = tiny_config(StructureSpec::Independent, ModelSpec::GaussianReal);
        let un = un_exact_m1(&cfg, 2).expect("value");
        // (st/n²)·Var(a²) with Var(a²) = 2σ⁴.
        assert_relative_eq!(un.value, 16.0 / 16.0 * 2.0, max_relative = 1e-14);
        assert_eq!(un.method, UnMethod::ExactM1);
    }

    #[test]
    fn degenerate_squared_modulus_gives_zero() {
        let cfg = tiny_config(StructureSpec::Independent, ModelSpec::Rademacher);
        let un = un_exact_m1(&cfg, 2).expect("value");
        assert_eq!(un.value, 0.0);
    }

    #[test]
    fn shared_class_draws_count_all_ordered_pairs() {
        let cfg = tiny_config(
            StructureSpec::ColumnBlock { width: 2 },
            ModelSpec::ClassConstant,
        );
        // 4·(4/2) = 8 classes of size 2; each contributes 4 ordered pairs
        // with covariance 2σ⁴: sum = 8·4·2 = 64; prefactor 1/n² = 1/16.
        let un = un_exact_m1(&cfg, 2).expect("value");
        assert_relative_eq!(un.value, 4.0, max_relative = 1e-14);
    }

    #[test]
    fn prefactor_follows_total_power() {
        let mut cfg = tiny_config(StructureSpec::Independent, ModelSpec::GaussianReal);
        cfg.mu = rat(1, 2);
        cfg.t = Some(2);
        let base = un_exact_m1(&cfg, 2).expect("value");
        let shifted = un_exact_m1(&cfg, 4).expect("value");
        assert_relative_eq!(shifted.value, base.value * 0.25, max_relative = 1e-14);
        assert!(matches!(un_exact_m1(&cfg, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn brute_force_agrees_exactly_with_the_closed_form_for_m1() {
        let structures = [
            StructureSpec::Independent,
            StructureSpec::ColumnBlock { width: 2 },
            StructureSpec::RowPair,
            StructureSpec::DuplicatePatch {
                width: 2,
                height: 2,
            },
        ];
        let models = [
            ModelSpec::GaussianReal,
            ModelSpec::GaussianComplex,
            ModelSpec::Rademacher,
            ModelSpec::ClassConstant,
            ModelSpec::ClassCorrelated { rho: 0.5 },
        ];
        for structure in &structures {
            for model in &models {
                let mut cfg = tiny_config(structure.clone(), model.clone());
                cfg.sigma_sq = rat(3, 2);
                for k_total in [2, 3, 5] {
                    let exact = un_exact_m1(&cfg, k_total).expect("closed form");
                    let brute = un_bruteforce(1, &cfg, k_total).expect("brute force");
                    assert_eq!(
                        exact.value, brute.value,
                        "paths disagree for {structure:?}/{model:?}, k={k_total}"
                    );
                }
            }
        }
    }

    #[test]
    fn order_four_brute_force_matches_hand_count_for_singletons() {
        // Independent complex Gaussian on a 2×2 grid with n = 2, k = 4.
        // Under singleton classes each circle of length four must visit
        // four pairwise-distinct cells; by the consistency condition its
        // trajectory alternates column-equal and row-equal steps, so the
        // matching must preserve that alternating edge pattern, which
        // only the identity, the half-turn, and the two edge reflections
        // do. A circularly-symmetric Gaussian kills factors pairing two
        // plain (or two conjugated) entries, leaving the two parity-
        // flipping edge reflections. Each supports 4 assignments (free
        // first cell of circle one, the rest determined) with product 1:
        // sum 8, prefactor 1/n⁴ = 1/16 → 1/2.
        let mut cfg = tiny_config(StructureSpec::Independent, ModelSpec::GaussianComplex);
        cfg.n = 2;
        cfg.s = Some(2);
        cfg.t = Some(2);
        let un = un_bruteforce(2, &cfg, 4).expect("brute force");
        assert_relative_eq!(un.value, 0.5, max_relative = 1e-12);
    }

    #[test]
    fn real_signs_keep_all_pattern_preserving_matchings() {
        // Same grid with Rademacher signs: conjugation is a no-op, so all
        // four pattern-preserving matchings contribute 4 assignments each
        // with product 1: 16/16 = 1. The order-2 functional still
        // vanishes because |a|² is constant.
        let mut cfg = tiny_config(StructureSpec::Independent, ModelSpec::Rademacher);
        cfg.n = 2;
        cfg.s = Some(2);
        cfg.t = Some(2);
        let un = un_bruteforce(2, &cfg, 4).expect("brute force");
        assert_relative_eq!(un.value, 1.0, max_relative = 1e-12);
        let m1 = un_bruteforce(1, &cfg, 2).expect("brute force");
        assert_eq!(m1.value, 0.0);
    }

    #[test]
    fn brute_force_guards() {
        let cfg = tiny_config(StructureSpec::Independent, ModelSpec::GaussianReal);
        assert!(matches!(un_bruteforce(0, &cfg, 2), Err(Error::Domain(_))));
        assert!(matches!(
            un_bruteforce(3, &cfg, 6),
            Err(Error::SizeLimit { .. })
        ));
        assert!(matches!(un_bruteforce(2, &cfg, 2), Err(Error::Domain(_))));
        let mut big = tiny_config(StructureSpec::Independent, ModelSpec::GaussianReal);
        big.n = 8;
        big.s = Some(8);
        big.t = Some(8);
        assert!(matches!(
            un_bruteforce(1, &big, 2),
            Err(Error::SizeLimit { .. })
        ));
    }
}

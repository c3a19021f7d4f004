//! The `selftest` subcommand: every exact-arithmetic and exact-counting
//! invariant of the library, bundled into one fast decided suite — the
//! polynomial and partition identities, the dual-path agreement of the
//! covariance functional, the tiny-grid expansion identity, brute-force
//! verification of the class-growth statistics, the doubled-grid index
//! relation, and a seeded spot check of the block-embedding trace
//! identity.

use crate::identity::{self, IdentityCheck};
use crate::output::CommandOutput;
use mpfluct::ensembles::{
    beta_stats, sample_matrix, BetaStats, DependenceStructure, EntryModel, EntryModelKind,
    Provenance, SplitMix64,
};
use mpfluct::montecarlo::{
    enumerate_mn, pair_product_covariance, un_bruteforce_parts, un_exact_m1_parts, MnConstraint,
};
use mpfluct::partitions::{
    dihedral_group, dihedral_partition, enumerate_set_partitions, CirclePartition,
};
use mpfluct::spectra::{build_w, chiral_embed, induced_chiral_relation, trace_powers};
use mpfluct::Result;
use num::BigRational;
use rand::RngCore;

fn builtin_structures() -> Vec<DependenceStructure> {
    vec![
        DependenceStructure::independent(3, 4).expect("structure"),
        DependenceStructure::column_block(4, 4, 2).expect("structure"),
        DependenceStructure::column_block(5, 6, 3).expect("structure"),
        DependenceStructure::row_pair(4, 3).expect("structure"),
        DependenceStructure::duplicate_patch(4, 4, 2, 2).expect("structure"),
        DependenceStructure::duplicate_patch(6, 6, 3, 2).expect("structure"),
    ]
}

fn builtin_models() -> Vec<EntryModel> {
    vec![
        EntryModel::new(EntryModelKind::GaussianReal, 1.0).expect("model"),
        EntryModel::new(EntryModelKind::GaussianComplex, 1.0).expect("model"),
        EntryModel::new(EntryModelKind::Rademacher, 1.0).expect("model"),
        EntryModel::new(EntryModelKind::ClassConstant, 0.5).expect("model"),
        EntryModel::new(EntryModelKind::ClassCorrelated { rho: 0.6 }, 2.0).expect("model"),
    ]
}

/// The closed-form value of the order-2 covariance functional agrees
/// bitwise with the enumerated 4-block sum on every built-in structure ×
/// model × total power.
fn un_dual_path() -> Result<IdentityCheck> {
    let mu = BigRational::from_integer(1.into());
    let mut cases = 0;
    let mut mismatches = 0;
    for d in &builtin_structures() {
        for model in &builtin_models() {
            for k_total in [2usize, 3] {
                cases += 1;
                let exact = un_exact_m1_parts(d, model, &mu, 4, k_total)?;
                let enumerated = un_bruteforce_parts(1, d, model, &mu, 4, k_total)?;
                if exact.value.to_bits() != enumerated.value.to_bits() {
                    mismatches += 1;
                }
            }
        }
    }
    Ok(IdentityCheck {
        name: "un_dual_path_agreement".into(),
        cases,
        mismatches,
        note: "closed-form class-pair sum vs enumerated 4-block sum, bitwise".into(),
    })
}

/// At `s = t = n = 2` the partition-grouped sum of per-assignment joint
/// cumulants reproduces the closed-form variance of the linear trace to
/// twelve digits.
fn expansion_identity() -> Result<IdentityCheck> {
    let d = DependenceStructure::independent(2, 2)?;
    let n = 2usize;
    let mu = BigRational::from_integer(1.into());
    let partitions: Vec<CirclePartition> = enumerate_set_partitions(4)?
        .into_iter()
        .map(|sp| CirclePartition::from_set_partition(&[2, 2], sp).expect("partition"))
        .collect();
    let mut cases = 0;
    let mut mismatches = 0;
    for model in &builtin_models() {
        cases += 1;
        let mut grouped = 0.0_f64;
        for pi in &partitions {
            for assignment in enumerate_mn(pi, &d, MnConstraint::All)? {
                grouped += pair_product_covariance(&assignment, &d, model)?;
            }
        }
        grouped /= (n as f64).powi(2);
        let exact = un_exact_m1_parts(&d, model, &mu, n, 2)?.value;
        if (grouped - exact).abs() > 1e-12 * exact.abs().max(1.0) {
            mismatches += 1;
        }
    }
    Ok(IdentityCheck {
        name: "expansion_identity_tiny_grid".into(),
        cases,
        mismatches,
        note: "partition-grouped cumulant sum vs closed-form variance at 2×2".into(),
    })
}

/// Literal quadruple-loop evaluation of the class-growth definitions,
/// independent of the grouped scan used by the library.
pub fn beta_brute_force(d: &DependenceStructure) -> BetaStats {
    let (s, t) = (d.s(), d.t());
    let mut beta0 = 0u64;
    for p in 1..=s {
        for pp in 1..=s {
            for q in 1..=t {
                if p != pp && d.same_class((p, q), (pp, q)) {
                    beta0 += 1;
                }
            }
        }
    }
    let mut beta0_row = 0u64;
    for p in 1..=s {
        for q in 1..=t {
            for qq in 1..=t {
                if q != qq && d.same_class((p, q), (p, qq)) {
                    beta0_row += 1;
                }
            }
        }
    }
    beta0 = beta0.max(beta0_row);

    let mut beta1 = 0u64;
    for p in 1..=s {
        let mut count = 0u64;
        for q in 1..=t {
            for pp in 1..=s {
                for qq in 1..=t {
                    if d.same_class((p, q), (pp, qq)) {
                        count += 1;
                    }
                }
            }
        }
        beta1 = beta1.max(count);
    }
    for q in 1..=t {
        let mut count = 0u64;
        for p in 1..=s {
            for pp in 1..=s {
                for qq in 1..=t {
                    if d.same_class((p, q), (pp, qq)) {
                        count += 1;
                    }
                }
            }
        }
        beta1 = beta1.max(count);
    }

    let mut beta2 = 0u64;
    for p in 1..=s {
        for q in 1..=t {
            let mut count = 0u64;
            for pp in 1..=s {
                for qq in 1..=t {
                    if d.same_class((p, q), (pp, qq)) {
                        count += 1;
                    }
                }
            }
            beta2 = beta2.max(count);
        }
    }

    let mut beta3 = 0u64;
    for p in 1..=s {
        for q in 1..=t {
            for pp in 1..=s {
                let mut count = 0u64;
                for qq in 1..=t {
                    if d.same_class((p, q), (pp, qq)) {
                        count += 1;
                    }
                }
                beta3 = beta3.max(count);
            }
            for qq in 1..=t {
                let mut count = 0u64;
                for pp in 1..=s {
                    if d.same_class((p, q), (pp, qq)) {
                        count += 1;
                    }
                }
                beta3 = beta3.max(count);
            }
        }
    }

    BetaStats {
        beta0,
        beta1,
        beta2,
        beta3,
    }
}

/// A uniformly random class assignment on a random grid with sides up to
/// `max_side`.
pub fn random_structure(seed: u64, max_side: usize) -> DependenceStructure {
    let mut rng = SplitMix64::new(seed);
    let s = 1 + (rng.next_u64() as usize) % max_side;
    let t = 1 + (rng.next_u64() as usize) % max_side;
    let classes = 1 + (rng.next_u64() as usize) % (s * t);
    let ids: Vec<u64> = (0..s * t).map(|_| rng.next_u64() % classes as u64).collect();
    DependenceStructure::from_assignment(s, t, &ids, Provenance::Custom("random".into()))
        .expect("assignment has the right length")
}

/// The grouped class-growth scan agrees with the brute-force loops, and
/// the documented inequalities hold, on built-ins and random relations.
fn beta_oracle(random_relations: usize) -> IdentityCheck {
    let mut structures = builtin_structures();
    for i in 0..random_relations {
        structures.push(random_structure(0x5e1f_7e57 + i as u64, 8));
    }
    let mut cases = 0;
    let mut mismatches = 0;
    for d in &structures {
        let fast = beta_stats(d);
        let slow = beta_brute_force(d);
        cases += 1;
        if fast != slow {
            mismatches += 1;
        }
        cases += 1;
        if fast.beta3 > fast.beta2 {
            mismatches += 1;
        }
        cases += 1;
        if fast.beta1 > (d.s().max(d.t()) as u64) * fast.beta2 {
            mismatches += 1;
        }
    }
    IdentityCheck {
        name: "beta_statistics_brute_force".into(),
        cases,
        mismatches,
        note: "grouped scan vs quadruple loops, plus the growth inequalities".into(),
    }
}

/// The relation induced on the doubled grid by the block embedding
/// satisfies the exact size identities against the base statistics.
fn chiral_relation_identities() -> Result<IdentityCheck> {
    let mut structures = builtin_structures();
    for i in 0..5 {
        structures.push(random_structure(0xc41a_0000 + i as u64, 6));
    }
    let mut cases = 0;
    let mut mismatches = 0;
    for d in &structures {
        let betas = beta_stats(d);
        let rel = induced_chiral_relation(d)?;
        cases += 1;
        if rel.alpha2() != 2 * betas.beta2 {
            mismatches += 1;
        }
        cases += 1;
        if rel.alpha0_hat() > 2 * betas.beta0 {
            mismatches += 1;
        }
    }
    Ok(IdentityCheck {
        name: "chiral_relation_size_identities".into(),
        cases,
        mismatches,
        note: "doubled largest class and bounded coincidence count on the doubled grid".into(),
    })
}

/// One seeded sample: even traces of the scaled block embedding are twice
/// the corresponding covariance traces, odd traces vanish.
fn chiral_trace_spot_check() -> Result<IdentityCheck> {
    let n = 16usize;
    let d = DependenceStructure::independent(n, n)?;
    let model = EntryModel::new(EntryModelKind::GaussianReal, 1.0)?;
    let y = sample_matrix(&d, &model, 0xfeed_beef)?;
    let h = chiral_embed(&y);
    let w = build_w(&y, n);
    let k_max = 3usize;
    let h_traces = h.trace_powers(n, 2 * k_max + 1)?;
    let w_traces = trace_powers(&w, k_max)?;
    let norm = h.spectral_norm(n)?;
    let mut cases = 0;
    let mut mismatches = 0;
    for k in 1..=k_max {
        cases += 1;
        let even = h_traces[2 * k - 1];
        let twice = 2.0 * w_traces[k - 1];
        if (even - twice).abs() > 1e-9 * twice.abs() {
            mismatches += 1;
        }
        cases += 1;
        let odd = h_traces[2 * k];
        if odd.abs() > 1e-9 * norm.powi(2 * k as i32 + 1) {
            mismatches += 1;
        }
    }
    Ok(IdentityCheck {
        name: "chiral_trace_spot_check".into(),
        cases,
        mismatches,
        note: "even traces double the covariance traces; odd traces vanish".into(),
    })
}

/// Cross-circle matchings never pair points on the same circle, so the
/// equal-pairs-restricted enumeration equals the full one.
fn cross_circle_enumeration() -> Result<IdentityCheck> {
    let d = DependenceStructure::column_block(4, 4, 2)?;
    let mut cases = 0;
    let mut mismatches = 0;
    for g in dihedral_group(2)? {
        let pi = dihedral_partition(&g)?;
        cases += 1;
        let full = enumerate_mn(&pi, &d, MnConstraint::All)?;
        let restricted = enumerate_mn(&pi, &d, MnConstraint::PropertyP)?;
        if full != restricted {
            mismatches += 1;
        }
    }
    Ok(IdentityCheck {
        name: "cross_circle_enumeration_unrestricted".into(),
        cases,
        mismatches,
        note: "equal-pairs property is vacuous for cross-circle matchings".into(),
    })
}

/// Runs every exact invariant.
///
/// # Errors
///
/// Enumeration or construction failures propagate (none are expected at
/// the fixed scales used here).
pub fn run() -> Result<CommandOutput> {
    let mut checks = identity::standard_suite();
    checks.push(un_dual_path()?);
    checks.push(expansion_identity()?);
    checks.push(beta_oracle(20));
    checks.push(chiral_relation_identities()?);
    checks.push(chiral_trace_spot_check()?);
    checks.push(cross_circle_enumeration()?);

    let mut output = CommandOutput::new("selftest");
    output.rows = checks.iter().map(super::identity_row).collect();
    output.tables = serde_json::json!({
        "total_cases": checks.iter().map(|c| c.cases).sum::<u64>(),
        "checks": checks.len(),
    });
    Ok(output)
}

//! Exact-arithmetic identity suites over the polynomial and partition
//! layers: every check compares rational values for literal equality and
//! reports how many cases were examined and how many mismatched.

use mpfluct::chebyshev::{
    chebyshev_t, coeff_triangles, g_closed_form, gamma_poly, gamma_scaled, RationalPoly,
};
use mpfluct::partitions::{dot_bijection, dot_bijection_inverse, enumerate_nhpp, nhpp_count};
use num::{BigRational, One, Zero};

/// Outcome of one exact identity check.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    /// Stable machine-readable name.
    pub name: String,
    /// Number of individual equalities examined.
    pub cases: u64,
    /// Number of equalities that failed (zero for a passing check).
    pub mismatches: u64,
    /// Human-readable description of what was compared.
    pub note: String,
}

impl IdentityCheck {
    /// Whether every examined case held.
    pub fn ok(&self) -> bool {
        self.mismatches == 0
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// The binomial-sum closed form of the inverse-triangle entries equals
/// the entry obtained by exact matrix inversion, for all `k ≤ order`,
/// `m ≤ k`.
pub fn closed_form_matches_inversion(order: usize, y: &BigRational) -> IdentityCheck {
    let (_, inverse) = coeff_triangles(order, y);
    let mut cases = 0;
    let mut mismatches = 0;
    for k in 0..=order {
        for m in 0..=k {
            cases += 1;
            if g_closed_form(k, m, y) != inverse.entry(k, m) {
                mismatches += 1;
            }
        }
    }
    IdentityCheck {
        name: format!("closed_form_vs_inversion_order_{order}_y_{y}"),
        cases,
        mismatches,
        note: "binomial-sum closed form vs exact triangular inversion".into(),
    }
}

/// Three-term recurrence of the monic Chebyshev family:
/// `x·T_k = T_{k+1} + (1+δ_{k,1})·T_{k−1}` for `k ≤ order`.
pub fn monic_recurrence(order: usize) -> IdentityCheck {
    let x = RationalPoly::x();
    let mut cases = 0;
    let mut mismatches = 0;
    for k in 0..=order as i64 {
        cases += 1;
        let mut back = chebyshev_t(k - 1);
        if k == 1 {
            back = back.scale(&rat(2, 1));
        }
        let lhs = x.mul(&chebyshev_t(k));
        let rhs = chebyshev_t(k + 1).add(&back);
        if lhs != rhs {
            mismatches += 1;
        }
    }
    IdentityCheck {
        name: format!("monic_recurrence_order_{order}"),
        cases,
        mismatches,
        note: "x·T_k = T_{k+1} + (1+δ_{k,1})·T_{k−1}".into(),
    }
}

/// Three-term recurrence of the centered family:
/// `x·Γ_k = Γ_{k+1} + (1+y)·Γ_k + (1+δ_{k,1})·y·Γ_{k−1}` for `k ≤ order`.
pub fn centered_recurrence(order: usize, y: &BigRational) -> IdentityCheck {
    let x = RationalPoly::x();
    let mut cases = 0;
    let mut mismatches = 0;
    for k in 0..=order {
        cases += 1;
        let gamma_k = gamma_poly(k, y);
        let lhs = x.mul(&gamma_k);
        let mut back = if k == 0 {
            RationalPoly::zero()
        } else {
            gamma_poly(k - 1, y).scale(y)
        };
        if k == 1 {
            back = back.scale(&rat(2, 1));
        }
        let rhs = gamma_poly(k + 1, y)
            .add(&gamma_k.scale(&(BigRational::one() + y)))
            .add(&back);
        if lhs != rhs {
            mismatches += 1;
        }
    }
    IdentityCheck {
        name: format!("centered_recurrence_order_{order}_y_{y}"),
        cases,
        mismatches,
        note: "x·Γ_k = Γ_{k+1} + (1+y)·Γ_k + (1+δ_{k,1})·y·Γ_{k−1}".into(),
    }
}

/// Definitional link between the centered and monic families: when
/// `y = q²` is a perfect rational square, `Γ_k(q·u + (1+y)) = q^k·T_k(u)`
/// as polynomials in `u`, verified by evaluation at `k + 1` rational
/// points.
pub fn centered_from_monic(order: usize, sqrt_y: &BigRational) -> IdentityCheck {
    let y = sqrt_y * sqrt_y;
    let mut cases = 0;
    let mut mismatches = 0;
    for k in 0..=order {
        let gamma_k = gamma_poly(k, &y);
        let t_k = chebyshev_t(k as i64);
        let scale = num::pow::pow(sqrt_y.clone(), k);
        for point in 0..=k as i64 {
            cases += 1;
            let u = rat(point, 1);
            let x = sqrt_y * &u + (BigRational::one() + &y);
            if gamma_k.eval_rational(&x) != &scale * t_k.eval_rational(&u) {
                mismatches += 1;
            }
        }
    }
    IdentityCheck {
        name: format!("centered_from_monic_order_{order}_sqrt_y_{sqrt_y}"),
        cases,
        mismatches,
        note: "Γ_k(√y·u + (1+y)) = (√y)^k·T_k(u) at k+1 evaluation points".into(),
    }
}

/// Entry recurrences of the inverse triangle:
/// `g_{k+1,m} = g_{k,m−1} + (1+y)·g_{k,m} + y·g_{k,m+1}` for `m ≥ 1` and
/// `g_{k+1,0} = (1+y)·g_{k,0} + 2y·g_{k,1}`, with the initial entries
/// `g_{1,0} = 1+y` and `g_{1,1} = 1`.
pub fn triangle_recurrences(order: usize, y: &BigRational) -> IdentityCheck {
    let (_, inverse) = coeff_triangles(order, y);
    let mut cases = 2;
    let mut mismatches = 0;
    if inverse.entry(1, 0) != BigRational::one() + y {
        mismatches += 1;
    }
    if inverse.entry(1, 1) != BigRational::one() {
        mismatches += 1;
    }
    for k in 1..order {
        cases += 1;
        let edge = (BigRational::one() + y) * inverse.entry(k, 0)
            + rat(2, 1) * y * inverse.entry(k, 1);
        if inverse.entry(k + 1, 0) != edge {
            mismatches += 1;
        }
        for m in 1..=k + 1 {
            cases += 1;
            let interior = inverse.entry(k, m - 1)
                + (BigRational::one() + y) * inverse.entry(k, m)
                + y * inverse.entry(k, m + 1);
            if inverse.entry(k + 1, m) != interior {
                mismatches += 1;
            }
        }
    }
    IdentityCheck {
        name: format!("triangle_recurrences_order_{order}_y_{y}"),
        cases,
        mismatches,
        note: "interior and edge recurrences of the inverse triangle, plus initial entries".into(),
    }
}

/// The two triangles are exact inverses: `Σ_k g′_{m,k}·g_{k,p} = δ_{m,p}`
/// for all `m, p ≤ order`.
pub fn triangle_inversion_delta(order: usize, y: &BigRational) -> IdentityCheck {
    let (gamma, inverse) = coeff_triangles(order, y);
    let mut cases = 0;
    let mut mismatches = 0;
    for m in 0..=order {
        for p in 0..=order {
            cases += 1;
            let mut acc = BigRational::zero();
            for k in p..=m {
                acc = &acc + &(gamma.entry(m, k) * inverse.entry(k, p));
            }
            let expected = if m == p {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            if acc != expected {
                mismatches += 1;
            }
        }
    }
    IdentityCheck {
        name: format!("triangle_inversion_delta_order_{order}_y_{y}"),
        cases,
        mismatches,
        note: "product of the coefficient triangle with its inverse is the identity".into(),
    }
}

/// Variance scaling of the polynomial family: the coefficient of `x^m`
/// in the scaled degree-`k` polynomial is `σ^{2(k−m)}` times the centered
/// coefficient.
pub fn scaled_coefficients(
    order: usize,
    y: &BigRational,
    sigma_sq: &BigRational,
) -> IdentityCheck {
    let mut cases = 0;
    let mut mismatches = 0;
    for k in 0..=order {
        let base = gamma_poly(k, y);
        let scaled = gamma_scaled(k, y, sigma_sq);
        for m in 0..=k {
            cases += 1;
            if scaled.coeff(m) != num::pow::pow(sigma_sq.clone(), k - m) * base.coeff(m) {
                mismatches += 1;
            }
        }
    }
    IdentityCheck {
        name: format!("scaled_coefficients_order_{order}"),
        cases,
        mismatches,
        note: "σ-rescaled coefficients are σ^{2(k−m)} times the centered ones".into(),
    }
}

/// The dot encoding round-trips on every enumerated half pair partition
/// with ground size up to `max_ground`.
pub fn bijection_round_trip(max_ground: usize) -> IdentityCheck {
    let mut cases = 0;
    let mut mismatches = 0;
    for k in 1..=max_ground / 2 {
        for m in 1..=k {
            for j in 0..=k - m {
                let family = enumerate_nhpp(k, m, j).expect("in-range enumeration");
                for pi in &family {
                    cases += 1;
                    let encoded = match dot_bijection(pi) {
                        Ok(d) => d,
                        Err(_) => {
                            mismatches += 1;
                            continue;
                        }
                    };
                    match dot_bijection_inverse(&encoded) {
                        Ok(back) if back == *pi => {}
                        _ => mismatches += 1,
                    }
                }
            }
        }
    }
    IdentityCheck {
        name: format!("dot_bijection_round_trip_ground_{max_ground}"),
        cases,
        mismatches,
        note: "encode-decode identity on every enumerated half pair partition".into(),
    }
}

/// Enumerated family sizes match the binomial-product counting formula
/// for every ground size up to `max_ground`.
pub fn bijection_counts(max_ground: usize) -> IdentityCheck {
    let mut cases = 0;
    let mut mismatches = 0;
    for k in 1..=max_ground / 2 {
        for m in 1..=k {
            for j in 0..=k - m {
                cases += 1;
                let enumerated = enumerate_nhpp(k, m, j).expect("in-range enumeration").len();
                let counted = nhpp_count(k, m, j).expect("in-range count");
                if enumerated as u128 != counted {
                    mismatches += 1;
                }
            }
        }
    }
    IdentityCheck {
        name: format!("enumeration_counts_ground_{max_ground}"),
        cases,
        mismatches,
        note: "enumerated family sizes vs the binomial product".into(),
    }
}

/// The full exact suite at its documented scales: closed form vs
/// inversion to order 16 over four aspect ratios, all recurrences and the
/// inversion identity to order 32, the definitional link at three square
/// ratios, variance scaling, and the dot bijection to ground size 12.
pub fn standard_suite() -> Vec<IdentityCheck> {
    let ys = [rat(1, 2), rat(1, 1), rat(2, 1), rat(7, 3)];
    let mut checks = Vec::new();
    for y in &ys {
        checks.push(closed_form_matches_inversion(16, y));
    }
    checks.push(monic_recurrence(32));
    for y in &ys {
        checks.push(centered_recurrence(32, y));
        checks.push(triangle_recurrences(32, y));
        checks.push(triangle_inversion_delta(32, y));
    }
    for sqrt_y in [rat(1, 1), rat(2, 1), rat(1, 2)] {
        checks.push(centered_from_monic(16, &sqrt_y));
    }
    checks.push(scaled_coefficients(12, &rat(7, 3), &rat(3, 2)));
    checks.push(bijection_round_trip(12));
    checks.push(bijection_counts(12));
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_standard_suite_passes_and_is_nonempty() {
        let checks = standard_suite();
        assert!(checks.len() >= 10);
        for check in &checks {
            assert!(check.cases > 0, "{} examined nothing", check.name);
            assert!(
                check.ok(),
                "{} failed {}/{} cases",
                check.name,
                check.mismatches,
                check.cases
            );
        }
    }

    #[test]
    fn check_names_are_unique() {
        let checks = standard_suite();
        let mut names: Vec<&str> = checks.iter().map(|c| c.name.as_str()).collect();
        names.sort_unstable();
        let before = names.len();
        names.dedup();
        assert_eq!(before, names.len());
    }
}

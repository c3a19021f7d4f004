//! The `combinatorics` subcommand: runs the exact polynomial and
//! partition identity suite at a requested triangle order and aspect
//! ratio, and emits both coefficient triangles as exact rational tables.

use crate::identity;
use crate::output::CommandOutput;
use mpfluct::chebyshev::{coeff_triangles, CoeffTriangle, MAX_TRIANGLE_ORDER};
use mpfluct::{Error, Result};
use num::{BigRational, Zero};
use std::fmt::Write as _;

/// Ground size of the encoding round-trip included in the suite.
const BIJECTION_GROUND: usize = 12;

/// Renders a coefficient triangle as CSV with exact rational entries,
/// one row per `(k, m)` with `m ≤ k`.
fn triangle_csv(triangle: &CoeffTriangle) -> String {
    let mut out = String::from("k,m,numerator,denominator\r\n");
    for k in 0..=triangle.order() {
        for m in 0..=k {
            let entry = triangle.entry(k, m);
            let _ = write!(out, "{k},{m},{},{}\r\n", entry.numer(), entry.denom());
        }
    }
    out
}

/// Runs the identity suite at the given order and ratio.
///
/// # Errors
///
/// [`Error::Domain`] if the order is zero or the ratio is not positive;
/// [`Error::SizeLimit`] if the order exceeds the triangle cap.
pub fn run(order: usize, y: &BigRational) -> Result<CommandOutput> {
    if order == 0 {
        return Err(Error::Domain("triangle order must be at least 1".into()));
    }
    if order > MAX_TRIANGLE_ORDER {
        return Err(Error::SizeLimit {
            what: "triangle order",
            got: order,
            limit: MAX_TRIANGLE_ORDER,
        });
    }
    if *y <= BigRational::zero() {
        return Err(Error::Domain(format!("aspect ratio must be positive, got {y}")));
    }

    let checks = [
        identity::closed_form_matches_inversion(order, y),
        identity::monic_recurrence(order),
        identity::centered_recurrence(order, y),
        identity::triangle_recurrences(order, y),
        identity::triangle_inversion_delta(order, y),
        identity::scaled_coefficients(order.min(16), y, &BigRational::new(3.into(), 2.into())),
        identity::bijection_round_trip(BIJECTION_GROUND),
        identity::bijection_counts(BIJECTION_GROUND),
    ];

    let mut output = CommandOutput::new("combinatorics");
    output.rows = checks.iter().map(super::identity_row).collect();

    let (gamma, inverse) = coeff_triangles(order, y);
    output
        .extra_files
        .push(("triangle_g.csv".into(), triangle_csv(&inverse)));
    output
        .extra_files
        .push(("triangle_g_prime.csv".into(), triangle_csv(&gamma)));
    output.tables = serde_json::json!({
        "order": order,
        "y": y.to_string(),
        "triangle_files": ["triangle_g.csv", "triangle_g_prime.csv"],
    });
    Ok(output)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::output::Verdict;

    #[test]
    fn small_order_suite_passes_and_emits_triangles() {
        let y = BigRational::new(1.into(), 2.into());
        let output = run(6, &y).unwrap();
        assert!(output.rows.iter().all(|r| r.verdict == Verdict::Pass));
        assert_eq!(output.extra_files.len(), 2);
        let g = &output.extra_files[0].1;
        assert!(g.starts_with("k,m,numerator,denominator\r\n"));
        // k = 1 rows of the inverse triangle: g_{1,0} = 1 + y = 3/2 and
        // g_{1,1} = 1.
        assert!(g.contains("1,0,3,2\r\n"));
        assert!(g.contains("1,1,1,1\r\n"));
        // The leading coefficient is 1 at every order.
        assert!(g.contains("6,6,1,1\r\n"));
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        let y = BigRational::new(1.into(), 2.into());
        assert!(run(0, &y).is_err());
        assert!(run(65, &y).is_err());
        assert!(run(4, &BigRational::zero()).is_err());
    }
}

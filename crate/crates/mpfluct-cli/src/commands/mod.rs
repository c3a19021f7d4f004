//! Subcommand implementations. Each `run` function is a pure library
//! entry point returning a [`CommandOutput`](crate::output::CommandOutput);
//! the binary adds argument parsing, artifact emission, and the exit-code
//! decision on top.

pub mod betas;
pub mod clt;
pub mod combinatorics;
pub mod covdiag;
pub mod moments;
pub mod selftest;

use crate::identity::IdentityCheck;
use crate::output::{ResultRow, Verdict};
use mpfluct::ensembles::BetaStats;

/// Renders an exact identity check as a result row: the estimate is the
/// mismatch count, the reference is zero, and the verdict is decided.
pub(crate) fn identity_row(check: &IdentityCheck) -> ResultRow {
    ResultRow::new(
        check.name.clone(),
        Some(check.mismatches as f64),
        None,
        Some(0.0),
        if check.ok() { Verdict::Pass } else { Verdict::Fail },
        format!("{} ({} cases)", check.note, check.cases),
    )
}

/// Advisory rows reporting the two single-size hypothesis proxies; a
/// violated proxy yields a flagged row, never a failure.
pub(crate) fn hypothesis_rows(n: usize, betas: &BetaStats) -> (bool, bool, Vec<ResultRow>) {
    let (a_ok, b_ok) = mpfluct::ensembles::hypothesis_flags(n, betas);
    let verdict = |ok: bool| if ok { Verdict::Pass } else { Verdict::Flagged };
    let rows = vec![
        ResultRow::new(
            "hypothesis_subpolynomial_classes",
            Some(betas.beta2 as f64),
            None,
            Some((n as f64) / 4.0),
            verdict(a_ok),
            "largest class size vs the n/4 single-size proxy budget",
        ),
        ResultRow::new(
            "hypothesis_coincidence_budget",
            Some(betas.beta0 as f64 * betas.beta2 as f64),
            None,
            Some((n as f64) * (n as f64)),
            verdict(b_ok),
            "coincidence-count product vs the n² single-size proxy budget",
        ),
    ];
    (a_ok, b_ok, rows)
}

//! The `betas` subcommand: class-growth statistics. Without a
//! configuration it sweeps every parametric structure family over a
//! default dimension ladder; with one it reports the configured structure
//! at its resolved size (plus a sweep when the structure is parametric).

use crate::output::{CommandOutput, ResultRow, Verdict};
use mpfluct::ensembles::{beta_stats, growth_report, GrowthReport, StructureFamily};
use mpfluct::montecarlo::{ExperimentConfig, StructureSpec};
use mpfluct::Result;
use std::fmt::Write as _;

/// Default dimension ladder `(n, s, t)` for family sweeps.
const DEFAULT_DIMS: [(usize, usize, usize); 4] =
    [(8, 8, 8), (16, 16, 16), (32, 32, 32), (64, 64, 64)];

/// Largest grid side a config-derived sweep is allowed to reach.
const MAX_SWEEP_SIDE: usize = 512;

fn family_slug(family: &StructureFamily) -> String {
    match family {
        StructureFamily::Independent => "independent".into(),
        StructureFamily::ColumnBlock(b) => format!("column_block_{b}"),
        StructureFamily::RowPair => "row_pair".into(),
        StructureFamily::DuplicatePatch(w, h) => format!("duplicate_patch_{w}x{h}"),
    }
}

/// Renders the per-size β table of one sweep.
fn sweep_csv(report: &GrowthReport) -> String {
    let mut out = String::from("n,beta0,beta1,beta2,beta3\r\n");
    for row in &report.rows {
        let b = row.betas;
        let _ = write!(
            out,
            "{},{},{},{},{}\r\n",
            row.n, b.beta0, b.beta1, b.beta2, b.beta3
        );
    }
    out
}

fn sweep_rows(slug: &str, report: &GrowthReport) -> Vec<ResultRow> {
    let mut rows = Vec::new();
    for (i, slope) in report.slopes.iter().enumerate() {
        rows.push(ResultRow::info(
            format!("slope_beta{i}_{slug}"),
            *slope,
            "least-squares log-log growth slope over the sweep",
        ));
    }
    rows.push(ResultRow::new(
        format!("hypotheses_{slug}"),
        Some(report.slopes[2]),
        None,
        None,
        if report.hypothesis_b_ok {
            Verdict::Pass
        } else {
            Verdict::Flagged
        },
        "advisory growth-hypothesis verdict from the fitted slopes",
    ));
    rows
}

/// The structure family behind a parametric spec, when one exists.
fn family_of(spec: &StructureSpec) -> Option<StructureFamily> {
    match spec {
        StructureSpec::Independent => Some(StructureFamily::Independent),
        StructureSpec::ColumnBlock { width } => Some(StructureFamily::ColumnBlock(*width)),
        StructureSpec::RowPair => Some(StructureFamily::RowPair),
        StructureSpec::DuplicatePatch { width, height } => {
            Some(StructureFamily::DuplicatePatch(*width, *height))
        }
        StructureSpec::CustomFile { .. } => None,
    }
}

/// Runs the growth report.
///
/// # Errors
///
/// Structure construction errors propagate (for a custom relation file,
/// that includes I/O and parse failures).
pub fn run(config: Option<&ExperimentConfig>) -> Result<CommandOutput> {
    let mut output = CommandOutput::new("betas");
    match config {
        None => {
            let families = [
                StructureFamily::Independent,
                StructureFamily::ColumnBlock(2),
                StructureFamily::RowPair,
                StructureFamily::DuplicatePatch(2, 2),
            ];
            let mut table = serde_json::Map::new();
            for family in &families {
                let slug = family_slug(family);
                let report = growth_report(&DEFAULT_DIMS, family)?;
                output.rows.extend(sweep_rows(&slug, &report));
                output
                    .extra_files
                    .push((format!("betas_{slug}.csv"), sweep_csv(&report)));
                table.insert(
                    slug,
                    serde_json::json!({
                        "slopes": report.slopes,
                        "hypothesis_a_ok": report.hypothesis_a_ok,
                        "hypothesis_b_ok": report.hypothesis_b_ok,
                    }),
                );
            }
            output.tables = serde_json::Value::Object(table);
        }
        Some(cfg) => {
            cfg.validate()?;
            let (s, t) = (cfg.resolved_s(), cfg.resolved_t());
            let structure = cfg.structure.build(s, t)?;
            let betas = beta_stats(&structure);
            for (name, value) in [
                ("beta0", betas.beta0),
                ("beta1", betas.beta1),
                ("beta2", betas.beta2),
                ("beta3", betas.beta3),
            ] {
                output.rows.push(ResultRow::info(
                    name,
                    value as f64,
                    format!("{} at the resolved {s}×{t} grid", structure.provenance()),
                ));
            }
            let (_, _, hyp_rows) = super::hypothesis_rows(cfg.n, &betas);
            output.rows.extend(hyp_rows);

            if let Some(family) = family_of(&cfg.structure) {
                if 4 * s.max(t) <= MAX_SWEEP_SIDE {
                    let dims = [
                        (cfg.n, s, t),
                        (2 * cfg.n, 2 * s, 2 * t),
                        (4 * cfg.n, 4 * s, 4 * t),
                    ];
                    let slug = family_slug(&family);
                    let report = growth_report(&dims, &family)?;
                    output.rows.extend(sweep_rows(&slug, &report));
                    output
                        .extra_files
                        .push((format!("betas_{slug}.csv"), sweep_csv(&report)));
                }
            }
            output.config = Some(cfg.clone());
        }
    }
    Ok(output)
}

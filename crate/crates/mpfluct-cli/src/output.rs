//! Artifact emission shared by every subcommand: a fixed-schema CSV of
//! result rows, a JSON report embedding the configuration echo, optional
//! extra files, and a manifest written last that lists every emitted file
//! with its SHA-256 hash.

use mpfluct::montecarlo::ExperimentConfig;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::path::Path;

/// Name of the fixed-schema row table.
pub const RESULTS_CSV: &str = "results.csv";
/// Name of the JSON report.
pub const RESULTS_JSON: &str = "results.json";
/// Name of the manifest, always written last.
pub const MANIFEST_JSON: &str = "manifest.json";

/// Classification of a result row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// A decided check that held.
    Pass,
    /// A decided check that failed; drives a nonzero exit code.
    Fail,
    /// A plain measurement with nothing to decide.
    Info,
    /// Compared against a reference without pass/fail semantics.
    ReferenceOnly,
    /// An advisory condition worth surfacing that does not fail the run.
    Flagged,
}

impl Verdict {
    /// Stable lowercase token used in the CSV column.
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Info => "info",
            Verdict::ReferenceOnly => "reference_only",
            Verdict::Flagged => "flagged",
        }
    }
}

/// One row of the results table.
#[derive(Clone, Debug, Serialize)]
pub struct ResultRow {
    /// Statistic or check name (stable, machine readable).
    pub statistic: String,
    /// Point estimate or measured value, when one exists.
    pub estimate: Option<f64>,
    /// Standard error of the estimate, when one exists.
    pub std_error: Option<f64>,
    /// Reference value the estimate is compared against, when one exists.
    pub reference: Option<f64>,
    /// Row classification.
    pub verdict: Verdict,
    /// Free-form context (JSON report only; not part of the CSV schema).
    pub note: String,
}

impl ResultRow {
    /// A decided or advisory row with full numeric columns.
    pub fn new(
        statistic: impl Into<String>,
        estimate: Option<f64>,
        std_error: Option<f64>,
        reference: Option<f64>,
        verdict: Verdict,
        note: impl Into<String>,
    ) -> Self {
        ResultRow {
            statistic: statistic.into(),
            estimate,
            std_error,
            reference,
            verdict,
            note: note.into(),
        }
    }

    /// A measurement row carrying only an estimate.
    pub fn info(statistic: impl Into<String>, estimate: f64, note: impl Into<String>) -> Self {
        ResultRow::new(statistic, Some(estimate), None, None, Verdict::Info, note)
    }
}

/// Everything a subcommand produced, ready to be written to disk.
#[derive(Clone, Debug)]
pub struct CommandOutput {
    /// Subcommand name recorded in the report and manifest.
    pub subcommand: &'static str,
    /// Configuration echo, when the subcommand consumed one.
    pub config: Option<ExperimentConfig>,
    /// Result rows in emission order.
    pub rows: Vec<ResultRow>,
    /// Additional files to emit verbatim, as `(name, content)` pairs.
    pub extra_files: Vec<(String, String)>,
    /// Subcommand-specific structured extras for the JSON report.
    pub tables: serde_json::Value,
}

impl CommandOutput {
    /// An output shell for the named subcommand.
    pub fn new(subcommand: &'static str) -> Self {
        CommandOutput {
            subcommand,
            config: None,
            rows: Vec::new(),
            extra_files: Vec::new(),
            tables: serde_json::Value::Null,
        }
    }
}

/// Tally of row verdicts, used for the manifest and the exit decision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerdictCounts {
    /// Decided rows that held.
    pub pass: u64,
    /// Decided rows that failed.
    pub fail: u64,
    /// Plain measurements.
    pub info: u64,
    /// Reference comparisons without pass/fail semantics.
    pub reference_only: u64,
    /// Advisory rows.
    pub flagged: u64,
}

impl VerdictCounts {
    /// Tallies the rows of an output.
    pub fn tally(rows: &[ResultRow]) -> Self {
        let mut counts = VerdictCounts::default();
        for row in rows {
            match row.verdict {
                Verdict::Pass => counts.pass += 1,
                Verdict::Fail => counts.fail += 1,
                Verdict::Info => counts.info += 1,
                Verdict::ReferenceOnly => counts.reference_only += 1,
                Verdict::Flagged => counts.flagged += 1,
            }
        }
        counts
    }

    /// Whether any decided row failed.
    pub fn any_fail(&self) -> bool {
        self.fail > 0
    }
}

/// Formats a float with 17 significant digits, enough to reproduce the
/// exact binary value on re-parse.
fn format_float(value: f64) -> String {
    format!("{value:.16e}")
}

/// Quotes a CSV field when it contains a separator, quote, or newline.
fn quote_csv(field: &str) -> String {
    if field.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Renders the fixed-schema results table.
///
/// The output is a pure function of the rows: header
/// `statistic,estimate,std_error,reference,verdict`, CRLF line endings,
/// floats at 17 significant digits, empty fields for absent values.
pub fn csv_string(rows: &[ResultRow]) -> String {
    let mut out = String::from("statistic,estimate,std_error,reference,verdict\r\n");
    for row in rows {
        let fmt = |v: Option<f64>| v.map(format_float).unwrap_or_default();
        let _ = write!(
            out,
            "{},{},{},{},{}\r\n",
            quote_csv(&row.statistic),
            fmt(row.estimate),
            fmt(row.std_error),
            fmt(row.reference),
            row.verdict.as_str()
        );
    }
    out
}

#[derive(Serialize)]
struct JsonReport<'a> {
    artifact: &'static str,
    version: &'static str,
    subcommand: &'static str,
    config: &'a Option<ExperimentConfig>,
    rows: &'a [ResultRow],
    tables: &'a serde_json::Value,
}

/// Renders the JSON report with the configuration echo.
///
/// The echoed `config` re-parses to a configuration equal to the input.
pub fn json_string(output: &CommandOutput) -> String {
    let report = JsonReport {
        artifact: "mpfluct",
        version: env!("CARGO_PKG_VERSION"),
        subcommand: output.subcommand,
        config: &output.config,
        rows: &output.rows,
        tables: &output.tables,
    };
    let mut text = serde_json::to_string_pretty(&report).expect("report serialization");
    text.push('\n');
    text
}

fn sha256_hex(content: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(content.as_bytes());
    let digest = hasher.finalize();
    let mut hex = String::with_capacity(64);
    for byte in digest {
        let _ = write!(hex, "{byte:02x}");
    }
    hex
}

#[derive(Serialize)]
struct ManifestFile {
    name: String,
    sha256: String,
}

#[derive(Serialize)]
struct Manifest<'a> {
    artifact: &'static str,
    version: &'static str,
    subcommand: &'static str,
    unix_time_seconds: u64,
    duration_seconds: f64,
    config: &'a Option<ExperimentConfig>,
    verdicts: std::collections::BTreeMap<&'static str, VerdictCounts>,
    files: Vec<ManifestFile>,
}

/// Writes all artifacts of a subcommand into `out_dir` and returns the
/// verdict tally.
///
/// Emission order: `results.csv`, `results.json`, every extra file, and
/// finally `manifest.json` listing each previously written file with its
/// SHA-256 content hash.
///
/// # Errors
///
/// Any directory-creation or file-write failure.
pub fn emit(
    out_dir: &Path,
    output: &CommandOutput,
    duration_seconds: f64,
) -> std::io::Result<VerdictCounts> {
    std::fs::create_dir_all(out_dir)?;
    let mut files = Vec::new();
    let mut write_file = |name: &str, content: &str| -> std::io::Result<()> {
        std::fs::write(out_dir.join(name), content)?;
        files.push(ManifestFile {
            name: name.to_string(),
            sha256: sha256_hex(content),
        });
        Ok(())
    };
    write_file(RESULTS_CSV, &csv_string(&output.rows))?;
    write_file(RESULTS_JSON, &json_string(output))?;
    for (name, content) in &output.extra_files {
        write_file(name, content)?;
    }

    let counts = VerdictCounts::tally(&output.rows);
    let unix_time_seconds = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let manifest = Manifest {
        artifact: "mpfluct",
        version: env!("CARGO_PKG_VERSION"),
        subcommand: output.subcommand,
        unix_time_seconds,
        duration_seconds,
        config: &output.config,
        verdicts: std::collections::BTreeMap::from([(output.subcommand, counts)]),
        files,
    };
    let mut manifest_text =
        serde_json::to_string_pretty(&manifest).expect("manifest serialization");
    manifest_text.push('\n');
    std::fs::write(out_dir.join(MANIFEST_JSON), manifest_text)?;
    Ok(counts)
}

/// Prints a one-line-per-row human summary followed by the tally.
pub fn print_summary(output: &CommandOutput, counts: &VerdictCounts) {
    for row in &output.rows {
        let mut line = format!("{:<14} {}", row.verdict.as_str(), row.statistic);
        if let Some(v) = row.estimate {
            let _ = write!(line, " = {v:.6e}");
        }
        if let Some(r) = row.reference {
            let _ = write!(line, " (reference {r:.6e})");
        }
        if !row.note.is_empty() {
            let _ = write!(line, "  [{}]", row.note);
        }
        println!("{line}");
    }
    println!(
        "{}: {} pass, {} fail, {} info, {} reference_only, {} flagged",
        output.subcommand, counts.pass, counts.fail, counts.info, counts.reference_only,
        counts.flagged
    );
}

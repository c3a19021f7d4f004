//! Batch front door: parses arguments, loads and validates the JSON
//! configuration, dispatches to the subcommand implementations, emits
//! artifacts, and maps outcomes to exit codes.

use clap::{Parser, Subcommand};
use mpfluct::montecarlo::ExperimentConfig;
use mpfluct_cli::output::{emit, print_summary, CommandOutput};
use mpfluct_cli::{commands, exit_code_for, rational, EXIT_BAD_CONFIG, EXIT_OK, EXIT_VERDICT_FAIL};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "mpfluct",
    version,
    about = "Sample-covariance trace fluctuations: exact combinatorial identities and Monte Carlo checks"
)]
struct Cli {
    /// Output directory for emitted artifacts (default: $MPFLUCT_OUT, then the working directory)
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker-thread hint; results are byte-identical for every value
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact polynomial/partition identity suite plus coefficient-triangle tables
    Combinatorics {
        /// Triangle order (1..=64)
        #[arg(long, default_value_t = 16)]
        order: usize,

        /// Aspect ratio y as an exact rational, e.g. `1/2`
        #[arg(long, default_value = "1")]
        y: String,
    },

    /// Class-growth statistics: family sweeps, or the configured structure
    Betas {
        /// Experiment configuration (JSON); omit to sweep the built-in families
        #[arg(long)]
        config: Option<PathBuf>,
    },

    /// Monte Carlo spectral moments vs the limiting formula
    Moments {
        /// Experiment configuration (JSON)
        #[arg(long)]
        config: PathBuf,

        /// Master-seed override
        #[arg(long)]
        seed: Option<u64>,
    },

    /// Replicated trace experiment: means, covariances, standardized cumulants
    Clt {
        /// Experiment configuration (JSON)
        #[arg(long)]
        config: PathBuf,

        /// Master-seed override
        #[arg(long)]
        seed: Option<u64>,
    },

    /// Covariance diagonalization check of the polynomial trace statistics
    Covdiag {
        /// Experiment configuration (JSON)
        #[arg(long)]
        config: PathBuf,

        /// Master-seed override
        #[arg(long)]
        seed: Option<u64>,
    },

    /// All exact-arithmetic and exact-counting invariants
    Selftest,
}

fn load_config(path: &Path, seed: Option<u64>) -> mpfluct::Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| mpfluct::Error::Config(format!("{}: {e}", path.display())))?;
    let mut cfg = ExperimentConfig::from_json_str(&text)
        .map_err(|e| mpfluct::Error::Config(format!("{}: {e}", path.display())))?;
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn run_command(command: &Command) -> mpfluct::Result<CommandOutput> {
    match command {
        Command::Combinatorics { order, y } => {
            let ratio = rational::parse_positive_rational(y)
                .map_err(|msg| mpfluct::Error::Config(format!("--y: {msg}")))?;
            commands::combinatorics::run(*order, &ratio)
        }
        Command::Betas { config } => {
            let cfg = config
                .as_deref()
                .map(|path| load_config(path, None))
                .transpose()?;
            commands::betas::run(cfg.as_ref())
        }
        Command::Moments { config, seed } => {
            commands::moments::run(&load_config(config, *seed)?)
        }
        Command::Clt { config, seed } => commands::clt::run(&load_config(config, *seed)?),
        Command::Covdiag { config, seed } => {
            commands::covdiag::run(&load_config(config, *seed)?)
        }
        Command::Selftest => commands::selftest::run(),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads: must be at least 1");
            std::process::exit(EXIT_BAD_CONFIG);
        }
        // A hint only: the aggregation is order-preserving, so results do
        // not depend on the pool size. Ignore failures from a pool that
        // is already initialized.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let out_dir = cli
        .out
        .or_else(|| std::env::var_os("MPFLUCT_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));

    let started = std::time::Instant::now();
    match run_command(&cli.command) {
        Ok(output) => {
            let counts = match emit(&out_dir, &output, started.elapsed().as_secs_f64()) {
                Ok(counts) => counts,
                Err(e) => {
                    eprintln!("error: writing artifacts to {}: {e}", out_dir.display());
                    std::process::exit(exit_code_for(&mpfluct::Error::Io(e)));
                }
            };
            print_summary(&output, &counts);
            std::process::exit(if counts.any_fail() {
                EXIT_VERDICT_FAIL
            } else {
                EXIT_OK
            });
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code_for(&e));
        }
    }
}

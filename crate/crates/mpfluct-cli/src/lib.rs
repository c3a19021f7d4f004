//! Library side of the batch front door: the exact identity suites, the
//! result-table plumbing (CSV / JSON / manifest emission), and one
//! function per subcommand. The binary in `main.rs` only parses arguments,
//! dispatches here, and maps outcomes to exit codes.

#![warn(missing_docs)]

pub mod commands;
pub mod identity;
pub mod output;
pub mod rational;

/// Exit code for a run whose decided verdicts all passed.
pub const EXIT_OK: i32 = 0;
/// Exit code for a run that completed but had failing verdicts.
pub const EXIT_VERDICT_FAIL: i32 = 1;
/// Exit code for unusable input: malformed or unsatisfiable
/// configuration, bad flag values, out-of-range requests.
pub const EXIT_BAD_CONFIG: i32 = 2;
/// Exit code for runtime failures: numeric breakdown, I/O errors.
pub const EXIT_RUNTIME: i32 = 3;

/// Maps a library error to the exit code contract: configuration-shaped
/// problems (including domain and size-guard violations, which mean the
/// request cannot be served as stated) exit 2, runtime failures exit 3.
pub fn exit_code_for(err: &mpfluct::Error) -> i32 {
    use mpfluct::Error;
    match err {
        Error::Config(_)
        | Error::Domain(_)
        | Error::SizeLimit { .. }
        | Error::InsufficientData(_)
        | Error::Partition(_)
        | Error::Classification(_)
        | Error::Bijection(_) => EXIT_BAD_CONFIG,
        Error::Numeric(_) | Error::Io(_) => EXIT_RUNTIME,
    }
}

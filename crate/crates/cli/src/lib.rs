//! Library half of the `fopt` command-line tool: the JSON report types, the
//! subcommand implementations and the verification battery. `main.rs` only
//! parses arguments and maps errors to exit codes.

pub mod commands;
pub mod report;
pub mod verify;

use fopt_core::Error;
use report::ErrorReport;

/// Exit code for a successful run.
pub const EXIT_OK: i32 = 0;
/// Some verification check failed.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Malformed input or an argument out of range.
pub const EXIT_USAGE: i32 = 2;
/// Input parsed, but the candidate is not admissible (zero polynomial,
/// vanishing denominator, `g(0) = 0`, infeasible configuration).
pub const EXIT_INFEASIBLE: i32 = 3;
/// Every optimizer start ended at an infeasible candidate.
pub const EXIT_OPTIMIZATION: i32 = 4;

/// A failed command: the exit code and a machine-readable description.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub report: ErrorReport,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, report: ErrorReport { error: "usage".into(), message: message.into() } }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::Parse(_) => (EXIT_USAGE, "parse"),
            Error::OutOfRange { .. } => (EXIT_USAGE, "out_of_range"),
            Error::IdenticallyZero => (EXIT_INFEASIBLE, "identically_zero"),
            Error::ZeroDenominator => (EXIT_INFEASIBLE, "zero_denominator"),
            Error::GZeroNotPositive => (EXIT_INFEASIBLE, "g_zero_not_positive"),
            Error::Infeasible { .. } => (EXIT_INFEASIBLE, "infeasible"),
            Error::NoFeasibleCandidate => (EXIT_OPTIMIZATION, "no_feasible_candidate"),
        };
        CliError { code, report: ErrorReport { error: kind.into(), message: e.to_string() } }
    }
}

pub type CliResult<T> = Result<T, CliError>;

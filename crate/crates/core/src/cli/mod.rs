//! Command front end: configuration parsing, subcommands and deterministic
//! CSV reports with a hashed manifest.
//!
//! Exit codes: 0 success, 2 configuration or domain error, 3 non-convergence,
//! 4 hypothesis-audit failure, 1 any other failure.

mod args;
mod commands;
mod config;
mod output;

pub use args::{main_with_args, Cli, Command};
pub use commands::{
    cmd_audit, cmd_convergence, cmd_density, cmd_eigen, cmd_ml, cmd_sweep, DensityArgs, MlArgs, Outcome,
};
pub use config::{parse_field, parse_time_fn, sha256_hex, RunConfig};
pub use output::{format_float, Cell, ReportWriter};

use crate::error::Error;

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Domain(_) | Error::Aliasing { .. } | Error::Data(_) | Error::Unsupported(_) => 2,
        Error::NonConvergence { .. } => 3,
        Error::AuditUnavailable(_) | Error::Degenerate { .. } => 4,
        Error::Accuracy { .. } | Error::Range { .. } | Error::Io(_) => 1,
    }
}

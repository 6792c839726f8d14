//! Command-line front end: verification suites over the catalog and the
//! classifier, parallel-family sweeps, machine-readable reports.

// `!(x > tol)` is used on purpose so that NaN takes the failure branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod report;

use std::ffi::OsString;

use clap::Parser;

use config::{CatalogAction, Cli, Command};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("invalid specification: {0}")]
    Spec(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Runs the CLI on `args` (including the program name), writing to stdout
/// and stderr, and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let result = match &cli.command {
        Command::Verify(a) => config::resolve(a).and_then(|c| commands::run_verify(&c)),
        Command::Classify(a) => config::resolve(a).and_then(|c| commands::run_classify(&c)),
        Command::Parallel(a) => config::resolve(a).and_then(|c| commands::run_parallel(&c)),
        Command::Catalog {
            action: CatalogAction::List(a),
        } => config::resolve(a).and_then(|c| commands::run_catalog_list(&c)),
    };
    match result {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if outcome.pass {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            eprintln!("isoparam: {e}");
            EXIT_USAGE
        }
    }
}

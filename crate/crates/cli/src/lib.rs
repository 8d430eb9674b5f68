//! Command-line front end for `cmr-core`: `verify`, `simulate` and `show`.

pub mod args;
pub mod error;
pub mod report;
pub mod show;
pub mod simulate;
pub mod verify;

use std::process::ExitCode;

use args::{Cli, Command};
use error::CliError;
use report::write_json;

/// Runs one parsed command, printing the human summary to stdout and the
/// structured report to `--out` when given. Returns whether every check passed.
pub fn run(cli: &Cli) -> Result<bool, CliError> {
    match &cli.command {
        Command::Verify(a) => {
            let report = verify::run_verify(a)?;
            print!("{}", verify::render(&report));
            if let Some(path) = &a.out {
                write_json(&report, path)?;
            }
            Ok(report.pass)
        }
        Command::Simulate(a) => {
            let report = simulate::run_simulate(a)?;
            print!("{}", simulate::render(&report, a.exact));
            if let Some(path) = &a.out {
                write_json(&report, path)?;
            }
            Ok(report.pass)
        }
        Command::Show(a) => {
            let report = show::run_show(a)?;
            print!("{}", show::render(&report));
            if let Some(path) = &a.out {
                write_json(&report, path)?;
            }
            Ok(true)
        }
    }
}

/// Maps the outcome of [`run`] to the process exit code.
pub fn exit_code(result: &Result<bool, CliError>) -> ExitCode {
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => e.exit_code(),
    }
}

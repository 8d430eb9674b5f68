use std::process::ExitCode;

use clap::Parser;

use cmr_cli::args::Cli;

fn main() -> ExitCode {
    // clap exits with status 2 on malformed arguments
    let cli = Cli::parse();
    let result = cmr_cli::run(&cli);
    if let Err(e) = &result {
        eprintln!("{e}");
    }
    cmr_cli::exit_code(&result)
}

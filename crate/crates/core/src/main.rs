use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = revolving::cli::Cli::parse();
    ExitCode::from(revolving::cli::run(cli))
}

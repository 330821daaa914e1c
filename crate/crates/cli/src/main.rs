//! `xformlab`: exact X-formability checks and certificates from JSON input.

mod args;
mod run;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    let outcome = run::run(&cli.command);
    println!("{}", outcome.body);
    ExitCode::from(outcome.code)
}

use std::process::ExitCode;

use clap::Parser;
use kgsys::cli::Cli;

fn main() -> ExitCode {
    ExitCode::from(kgsys::execute(&Cli::parse()))
}

//! File formats and the `kgsys` command-line front end for
//! [`kgsys_core`].
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for
//! usage errors and malformed input, 3 when the induced dimension exceeds
//! `--guard`.

pub mod cli;
pub mod commands;
pub mod format;

use std::io::Write;

use cli::{Cli, Command};
use commands::{Failure, Outcome, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Sympow(args) => commands::sympow(args),
        Command::Gamma(args) => commands::gamma(args),
        Command::Verify(args) => commands::verify(args),
        Command::Build(args) => commands::build(args),
    }
}

fn out_path(cli: &Cli) -> Option<&std::path::Path> {
    match &cli.command {
        Command::Sympow(a) | Command::Gamma(a) => a.output.out.as_deref(),
        Command::Verify(a) => a.output.out.as_deref(),
        Command::Build(a) => a.output.out.as_deref(),
    }
}

/// Runs the command, writes its output and returns the exit code.
pub fn execute(cli: &Cli) -> u8 {
    let outcome = match run(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("kgsys: {e}");
            return e.exit_code();
        }
    };
    let written = match out_path(cli) {
        Some(path) => std::fs::write(path, &outcome.text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(outcome.text.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("kgsys: {e}");
        return EXIT_USAGE;
    }
    if outcome.passed {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

//! Command-line front-end: argument parsing, the six subcommands, and CSV/JSON output.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod error;
mod output;

pub use args::Cli;
pub use error::CliError;

use args::Command;

/// Runs one invocation and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match &cli.command {
        Command::Eval(a) => commands::eval(a).map(|d| (d, &a.output)),
        Command::Normscan(a) => commands::normscan(a).map(|d| (d, &a.output)),
        Command::Sum(a) => commands::sum(a).map(|d| (d, &a.output)),
        Command::Witness(a) => commands::witness(a).map(|d| (d, &a.output)),
        Command::CantorLebesgue(a) => commands::cantor(a).map(|d| (d, &a.output)),
        Command::Critical(a) => commands::critical(a).map(|d| (d, &a.output)),
    };
    let outcome = result.and_then(|((doc, default), out)| {
        doc.write(out, default)?;
        match doc.failure {
            Some(f) => Err(CliError::Numerical(f)),
            None => Ok(()),
        }
    });
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("summa: {e}");
            e.exit_code()
        }
    }
}

//! Single binary exposing every library operation. CSV payloads by
//! default, a JSON envelope with the resolved parameter set behind
//! `--format json`.
//!
//! Exit codes: 0 success, 2 validation or input errors (one machine-parsable
//! line on stderr), 64 unknown command, 65 malformed model JSON.

mod commands;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use crate::commands::Cli;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    ExitCode::SUCCESS
                }
                ErrorKind::InvalidSubcommand => {
                    eprintln!("hyperdecay: error[UnknownCommand] {}", first_line(&e));
                    ExitCode::from(64)
                }
                _ => {
                    eprintln!("hyperdecay: error[UsageError] {}", first_line(&e));
                    ExitCode::from(2)
                }
            };
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn first_line(e: &clap::Error) -> String {
    e.to_string()
        .lines()
        .find(|l| !l.trim().is_empty())
        .unwrap_or("invalid usage")
        .trim()
        .to_string()
}

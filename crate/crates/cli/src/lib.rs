//! Command-line front end for `opuc_core`.
//!
//! [`run`] parses arguments, dispatches to a command and maps the outcome to
//! an exit code: 0 success, 1 failed assertion, 2 bad input, 3 numerical
//! failure.

pub mod args;
pub mod commands;
pub mod error;
pub mod manifest;
pub mod output;
pub mod parse;
pub mod suites;

use std::io::Write;

use clap::Parser;

use crate::args::Cli;
use crate::commands::{dispatch, Context};
use crate::error::{EXIT_INPUT, EXIT_OK};

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let rest = argv.get(1..).unwrap_or(&[]);
    let mut ctx = Context { argv: rest, out, err };
    match dispatch(&mut ctx, &cli.command) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.err, "opuc {}: {e}", cli.command.name());
            e.exit_code()
        }
    }
}

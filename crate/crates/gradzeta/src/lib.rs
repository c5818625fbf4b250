//! Batch front end for `gradzeta-core`.

pub mod args;
pub mod commands;
pub mod exec;
pub mod output;

use std::io::Write;

use anyhow::Result;
use clap::Parser;
use gradzeta_core::Error as CoreError;

use crate::args::{Cli, Command};
use crate::commands::Usage;
use crate::exec::{Checkpoint, Runner};
use crate::output::Status;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Exit code for an error that stopped a command.
pub fn exit_code(e: &anyhow::Error) -> i32 {
    if e.downcast_ref::<Usage>().is_some() {
        return EXIT_USAGE;
    }
    match e.downcast_ref::<CoreError>() {
        Some(CoreError::BudgetExceeded { .. }) => EXIT_BUDGET,
        Some(_) => EXIT_USAGE,
        None => EXIT_MISMATCH,
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<Status> {
    let threads = cli.threads.unwrap_or(1);
    if threads == 0 {
        return Err(Usage("--threads must be positive".into()).into());
    }
    let checkpoint = cli
        .checkpoint
        .as_deref()
        .map(Checkpoint::open)
        .transpose()
        .map_err(|e| Usage(format!("{e:#}")))?;
    let runner = Runner {
        threads,
        budget: cli.budget as u128,
        checkpoint,
        progress: !cli.quiet,
    };
    let report = match &cli.command {
        Command::Zeta(a) => commands::zeta(a, &runner, cli.budget, cli.quiet)?,
        Command::Coeff(a) => commands::coeff(a, &runner, cli.budget, cli.quiet)?,
        Command::Gamma(a) => commands::gamma(a)?,
        Command::Scan(a) => commands::scan_cmd(a, &runner, cli.budget, cli.quiet)?,
        Command::Verify(a) => commands::verify(a, cli.budget)?,
        Command::Algebra(a) => commands::algebra_cmd(a)?,
    };
    report.write(cli.format, out)?;
    Ok(report.status)
}

/// Parses the arguments, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(Status::Ok) => EXIT_OK,
        Ok(Status::Mismatch) => EXIT_MISMATCH,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}

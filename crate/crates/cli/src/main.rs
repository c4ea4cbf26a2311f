//! `numrad` command-line tool.
//!
//! Exit status: 0 when the command succeeds and the decided property holds,
//! 1 when it does not, 2 on any usage error.

mod args;
mod commands;
mod config;
mod report;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

const USAGE: u8 = 2;

fn run(cli: Cli) -> anyhow::Result<u8> {
    match &cli.command {
        Command::Radius { common, matrix } => commands::radius(common, matrix.as_ref()),
        Command::Check { relation, common, operands, sweep } => commands::check(*relation, common, operands, *sweep),
        Command::Verify { id, seed, report, config } => commands::verify(id, *seed, report.as_ref(), config.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(code)) => ExitCode::from(code),
        Ok(Err(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
        // the panic message has already been printed by the default hook
        Err(_) => ExitCode::from(USAGE),
    }
}

mod commands;
mod config;
mod error;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;

use crate::config::{Cli, RunConfig};
use crate::error::CliError;

fn main() -> ExitCode {
    let cfg: RunConfig = Cli::parse().into();
    match execute(&cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn execute(cfg: &RunConfig) -> Result<(), CliError> {
    let outcome = commands::run(cfg)?;
    match &cfg.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            outcome.table.write(&mut w, cfg.format, cfg)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            outcome.table.write(&mut w, cfg.format, cfg)?;
            w.flush()?;
        }
    }
    match outcome.inconsistency {
        Some(msg) => Err(CliError::Consistency(msg)),
        None => Ok(()),
    }
}

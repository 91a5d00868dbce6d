//! `denergy`: command-line front end for the distance-energy library.
//!
//! Exit codes: 0 success, 2 bad arguments or unreadable input, 3 capacity
//! exceeded, 4 domain or pole errors. Failures print one line to stderr:
//! `error kind=<kind> reason="<text>"`.

mod cache;
mod commands;
mod config;
mod error;
mod input;
mod output;

use std::fs::File;
use std::io::{self, BufWriter};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use config::{Cli, Command, OutputFormat, RunConfig};
use error::CliError;
use output::Cell;

fn execute(config: &RunConfig) -> Result<(), CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| CliError::usage(format!("cannot start {} workers: {e}", config.workers)))?;
    let mut table = pool.install(|| commands::run(config))?;
    if matches!(config.command, Command::Energy { .. }) {
        table.meta.push(("seed", Cell::int(config.seed)));
    }
    match &config.output {
        Some(path) => {
            let w = BufWriter::new(File::create(path)?);
            match config.format {
                OutputFormat::Csv => table.write_csv(w)?,
                OutputFormat::Json => table.write_json(w)?,
            }
        }
        None => {
            let w = io::stdout().lock();
            match config.format {
                OutputFormat::Csv => table.write_csv(w)?,
                OutputFormat::Json => table.write_json(w)?,
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            let reason = first.strip_prefix("error: ").unwrap_or(first);
            eprintln!("{}", CliError::usage(reason));
            return ExitCode::from(2);
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|config| execute(&config));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.kind.exit_code())
        }
    }
}

//! `dlwave` command-line front end.
//!
//! Exit codes: 0 success, 2 usage error, 3 domain or regime error,
//! 4 numerical failure.

mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{splice_config, Cli, Command};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(dlwave_core::Error),
    Io(std::io::Error),
}

impl From<dlwave_core::Error> for CliError {
    fn from(e: dlwave_core::Error) -> Self {
        match e {
            dlwave_core::Error::InvalidParameter(msg) => CliError::Usage(msg),
            e => CliError::Core(e),
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) if e.is_numerical() => 4,
            CliError::Core(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let table = match &cli.command {
        Command::Classify(a) => commands::classify(a),
        Command::Melnikov(a) => commands::melnikov(a),
        Command::Speed(a) => commands::speed(a),
        Command::Wave(a) => commands::wave(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Splitting(a) => commands::splitting(a),
    }?;
    let mut buf = Vec::new();
    table.write(&mut buf, cli.format).map_err(CliError::Io)?;
    match &cli.output {
        Some(path) => std::fs::write(path, buf).map_err(CliError::Io),
        None => std::io::stdout().lock().write_all(&buf).map_err(CliError::Io),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let argv = match splice_config(std::env::args().collect()) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

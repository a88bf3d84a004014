//! `fraclat`: export fractional lattice Laplacian elements, matrices,
//! dispersion tables and continuum kernels, and run the verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.

mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Format};
use commands::Outcome;

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("FRACLAT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("FRACLAT_THREADS must be a non-negative integer, got '{raw}'"))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| format!("cannot configure thread pool: {e}"))?;
    }
    Ok(())
}

fn write_output(text: &str, path: &str) -> Result<(), String> {
    if path == "-" {
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes()).map_err(|e| format!("cannot write output: {e}"))?;
        out.flush().map_err(|e| format!("cannot write output: {e}"))
    } else {
        std::fs::write(path, text).map_err(|e| format!("cannot write {path}: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let (format, output) = cli.command.io();
    let Outcome { record, passed } = match commands::run(&cli.command) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let text = match format {
        Format::Csv => record.to_csv(),
        Format::Json => record.to_json() + "\n",
    };
    if let Err(msg) = write_output(&text, &output) {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        eprintln!("verification failed");
        ExitCode::from(1)
    }
}

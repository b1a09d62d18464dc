//! `iqconc` command-line driver.
//!
//! Parses flags (optionally merged over a `key = value` config file),
//! validates them against the library's preconditions, runs the command on a
//! rayon pool of `--workers` threads and writes CSV, JSON or text.
//!
//! Exit codes: 0 success, 1 argument error, 2 verification failure, 3 I/O
//! error.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::ffi::OsString;
use std::time::Instant;

pub use config::{parse_args, Job, RunConfig};
pub use error::CliError;

/// Runs a parsed configuration and returns the rendered output plus any
/// verification failure.
pub fn execute(cfg: &RunConfig) -> Result<(String, Option<String>), CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.workers {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {:?} workers: {e}", cfg.workers)))?;
    let start = Instant::now();
    let done = pool.install(|| commands::dispatch(cfg))?;
    let elapsed = start.elapsed().as_millis() as u64;
    let text = output::render(cfg, &done.payload, elapsed)?;
    Ok((text, done.failure))
}

fn write_output(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.output_path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

/// Full command-line entry point; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    // help and version are not errors
    if let Err(e) = config::cli_command_for_help().try_get_matches_from(&argv) {
        use clap::error::ErrorKind;
        if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
            let _ = e.print();
            return 0;
        }
    }
    let result = parse_args(argv).and_then(|cfg| {
        let (text, failure) = execute(&cfg)?;
        write_output(&cfg, &text)?;
        match failure {
            Some(msg) => Err(CliError::Verification(msg)),
            None => Ok(()),
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let msg = e.to_string();
            if msg.starts_with("error:") {
                eprintln!("{msg}");
            } else {
                eprintln!("iqconc: {msg}");
            }
            e.exit_code()
        }
    }
}

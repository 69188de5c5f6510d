//! Command line driver for `qtopo-core`: TOML configuration, CSV and JSON
//! outputs, and exit codes (0 success, 1 failed numerical check, 2 bad input).

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod io;
pub mod parse;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::Parser;

use cli::{Cli, Resolved};
use commands::Outcome;
use config::{Config, OUT_DIR_ENV};
pub use error::CliError;

/// Runs the command line `args` (program name first) and returns the exit
/// code. Diagnostics go to stderr, the one-line summary to stdout.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("qtopo: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    if cli.show_defaults {
        print!("{}", Config::defaults_toml());
        return Ok(());
    }
    let Some(cmd) = &cli.command else {
        return Err(CliError::Input("no subcommand given (see --help)".into()));
    };
    let base = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let resolved = cli::resolve(cmd, base);
    let out_dir = cli
        .out_dir
        .clone()
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    let stem = cli.stem.clone().unwrap_or_else(|| resolved.name().to_string());
    let name = resolved.name();
    let (outcome, config_value) = dispatch(&resolved)?;
    let (csv, json) = io::write_outputs(&out_dir, &stem, name, &config_value, &outcome.csv, &outcome.result)?;
    println!("{name}: {}", outcome.summary);
    println!("wrote {} and {}", csv.display(), json.display());
    for (ext, text) in &outcome.extra {
        let path = out_dir.join(format!("{stem}.{ext}"));
        io::write_atomic(&path, text)?;
        println!("wrote {}", path.display());
    }
    match outcome.failure {
        Some(m) => Err(CliError::Numerical(m)),
        None => Ok(()),
    }
}

fn dispatch(r: &Resolved) -> Result<(Outcome, toml::Value), CliError> {
    fn cfg<T: serde::Serialize>(c: &T) -> toml::Value {
        toml::Value::try_from(c).expect("configuration values serialize to TOML")
    }
    Ok(match r {
        Resolved::Spectrum(c) => (commands::spectrum(c)?, cfg(c)),
        Resolved::Classify(c) => (commands::classify(c)?, cfg(c)),
        Resolved::Weyl(c) => (commands::weyl(c)?, cfg(c)),
        Resolved::Distance(c) => (commands::distance(c)?, cfg(c)),
        Resolved::Depth(c) => (commands::depth(c)?, cfg(c)),
        Resolved::Rough(c) => (commands::rough(c)?, cfg(c)),
        Resolved::Evolve(c) => (commands::evolve_cmd(c)?, cfg(c)),
        Resolved::Joint(c) => (commands::joint(c)?, cfg(c)),
        Resolved::Fuzzy(c) => (commands::fuzzy(c)?, cfg(c)),
    })
}

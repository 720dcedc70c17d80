//! Command-line surface for computing witness threshold tables, reproducing
//! the published values, and certifying measured witness values.

mod certify_cmd;
mod config;
mod manifest;
mod output;
mod reproduce;
mod thresholds;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Exit status for numeric or convergence failures.
pub const EXIT_NUMERIC: u8 = 1;
/// Exit status for usage errors.
pub const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "stellar",
    version,
    about = "Stellar-rank lower bounds from expectation and variance witnesses"
)]
struct Cli {
    /// Worker threads for grid evaluation (default: STELLAR_THREADS or all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// TOML file with optimizer settings; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a threshold table for one witness family.
    Thresholds(thresholds::ThresholdsArgs),
    /// Recompute every published table cell and report the differences.
    Reproduce(reproduce::ReproduceArgs),
    /// Certify a measured witness value against a threshold table.
    Certify(certify_cmd::CertifyArgs),
}

fn init_threads(requested: Option<usize>) -> anyhow::Result<()> {
    let threads = match requested {
        Some(n) => Some(n),
        None => match std::env::var("STELLAR_THREADS") {
            Ok(v) => Some(v.parse().map_err(|_| {
                anyhow::anyhow!("STELLAR_THREADS must be a positive integer, got {v:?}")
            })?),
            Err(_) => None,
        },
    };
    if let Some(n) = threads {
        if n == 0 {
            anyhow::bail!("thread count must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    if let Err(e) = init_threads(cli.threads) {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    let overrides = match config::FileConfig::load(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let outcome = match cli.command {
        Command::Thresholds(args) => thresholds::run(args, &overrides),
        Command::Reproduce(args) => reproduce::run(args, &overrides),
        Command::Certify(args) => certify_cmd::run(args, &overrides),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_NUMERIC)
        }
    }
}

use clap::{Parser, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use schottky_resonances::cli::{self, RawConfig};
use schottky_resonances::Error;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    /// Check Schottky data and print the validity report.
    Validate,
    /// Evaluate Z on a rectangular grid (CSV for phase plots).
    ZetaGrid,
    /// Locate zeros of Z in the search window (CSV).
    Resonances,
    /// Dump the symbolic length spectrum (CSV).
    Lengths,
    /// Cross-check the determinant against the periodic-orbit expansion.
    Compare,
}

impl From<Cmd> for cli::Command {
    fn from(c: Cmd) -> cli::Command {
        match c {
            Cmd::Validate => cli::Command::Validate,
            Cmd::ZetaGrid => cli::Command::ZetaGrid,
            Cmd::Resonances => cli::Command::Resonances,
            Cmd::Lengths => cli::Command::Lengths,
            Cmd::Compare => cli::Command::Compare,
        }
    }
}

/// Selberg zeta computations on Schottky surfaces.
///
/// Exit codes: 0 success, 1 invalid config or invalid Schottky data,
/// 2 computation error, 3 comparison failure.
#[derive(Parser)]
#[command(name = "schottky-resonances", version)]
struct Args {
    #[arg(value_enum)]
    command: Cmd,
    /// Flat `key = value` configuration file.
    config: PathBuf,
    /// Override single keys, e.g. --set disc.N=32 (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

fn init_threads() {
    if let Ok(v) = std::env::var("RESONANCE_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    init_threads();
    let cfg = match load_config(&args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(1);
        }
    };
    match cli::run(args.command.into(), &cfg) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e @ Error::Config(_)) => {
            eprintln!("config error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("computation error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load_config(args: &Args) -> schottky_resonances::Result<cli::RunConfig> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", args.config.display())))?;
    let mut raw = RawConfig::parse(&text)?;
    raw.apply_overrides(&args.set)?;
    raw.into_config()
}

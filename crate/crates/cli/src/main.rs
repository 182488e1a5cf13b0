//! `steermach`: figure data and single-shot computations for
//! steering-assisted thermal machines.

mod commands;
mod config;
mod error;
mod output;
mod state;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::RunConfig;
use crate::error::CliResult;

#[derive(Parser, Debug)]
#[command(name = "steermach", version, about, allow_negative_numbers = true)]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Command,
}

/// Every flag overrides the same key of `--config`.
#[derive(Args, Debug, Default)]
struct Flags {
    /// TOML file with any of the keys below.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    omega0: Option<f64>,
    /// Comma-separated η values.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    eta: Option<Vec<f64>>,
    #[arg(long, global = true)]
    p_steps: Option<usize>,
    #[arg(long, global = true)]
    eta_steps: Option<usize>,
    #[arg(long, global = true)]
    frontier_steps: Option<usize>,
    #[arg(long, global = true)]
    grid_n: Option<usize>,
    /// Two directions, e.g. `x,z` or `x,0.6:0:0.8`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    measurements: Option<String>,
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory for CSV files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Demon work for the general and Pauli-restricted schemes over p and η.
    Figure2,
    /// Work and unsteerable bound, normalized by the p = 1 work.
    Figure4,
    /// Hidden-state correlation frontier against the unit quarter circle.
    Frontier,
    /// Steering verdict for `family P ETA`, `matrix PATH` or `random`.
    #[command(allow_negative_numbers = true)]
    SteerCheck {
        #[arg(required = true, num_args = 1..)]
        state: Vec<String>,
    },
    /// Demon work for a state; `--dir` adds measurement directions.
    #[command(allow_negative_numbers = true)]
    Work {
        #[arg(required = true, num_args = 1..)]
        state: Vec<String>,
        #[arg(long = "dir", allow_hyphen_values = true)]
        directions: Vec<String>,
    },
    /// Preparable entanglement with and without the demon.
    #[command(allow_negative_numbers = true)]
    Concurrence {
        #[arg(required = true, num_args = 1..)]
        state: Vec<String>,
        #[arg(long = "dir", allow_hyphen_values = true)]
        directions: Vec<String>,
    },
}

fn resolve(flags: &Flags) -> CliResult<RunConfig> {
    let mut cfg = match &flags.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    macro_rules! apply {
        ($($field:ident),*) => { $( if let Some(v) = &flags.$field { cfg.$field = v.clone().into(); } )* };
    }
    apply!(omega0, p_steps, eta_steps, frontier_steps, grid_n, measurements, tolerance, seed, out);
    if let Some(eta) = &flags.eta {
        cfg.eta = Some(eta.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

/// A closed pipe (`steermach ... | head`) is not an error worth reporting.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn print_json(v: &serde_json::Value) {
    emit(&serde_json::to_string_pretty(v).expect("json serializes"));
}

fn run(cli: Cli) -> CliResult<()> {
    let cfg = resolve(&cli.flags)?;
    let state = |args: &[String]| state::parse_state(args, cfg.seed);
    match &cli.command {
        Command::Figure2 => emit(&commands::figure2(&cfg)?.display().to_string()),
        Command::Figure4 => emit(&commands::figure4(&cfg)?.display().to_string()),
        Command::Frontier => emit(&commands::frontier(&cfg)?.display().to_string()),
        Command::SteerCheck { state: spec } => {
            let (rho, desc) = state(spec)?;
            print_json(&commands::steer_check(&cfg, &rho, &desc)?);
        }
        Command::Work { state: spec, directions } => {
            let (rho, desc) = state(spec)?;
            print_json(&commands::work(&cfg, &rho, &desc, directions)?);
        }
        Command::Concurrence { state: spec, directions } => {
            let (rho, desc) = state(spec)?;
            print_json(&commands::concurrence_cmd(&cfg, &rho, &desc, directions)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

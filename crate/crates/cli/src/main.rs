//! `padelab`: run Padé table, ray, window and overconvergence experiments
//! from a TOML config and write deterministic CSV/JSON artifacts.

mod commands;
mod config;
mod error;
mod manifest;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::Context;
use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::Artifacts;

pub const TOOL: &str = "padelab";

#[derive(Parser)]
#[command(name = "padelab", version, about = "Exact Padé approximation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (overrides `run.out`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Working precision in bits (overrides `run.precision`).
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Worker threads for table entries and grid evaluation.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, short, global = true)]
    verbose: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Rectangular Padé table with block structure.
    Table,
    /// Close-to-row ray: lead coefficients, A_n and difference identities.
    Ray,
    /// Gap, decay and stationary windows plus the ψ window search.
    Windows,
    /// Sup errors on grids, fitted rates and the overconvergence scan.
    Overconv,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Table => "table",
            Command::Ray => "ray",
            Command::Windows => "windows",
            Command::Overconv => "overconv",
        }
    }
}

fn load(cli: &Cli) -> Result<RunConfig, CliError> {
    let path = cli.config.as_ref().ok_or_else(|| CliError::Config("--config <path> is required".into()))?;
    let mut cfg = RunConfig::load(path)?;
    if let Some(p) = cli.precision {
        cfg.run.precision = p;
    }
    if let Some(o) = &cli.out {
        cfg.run.out = Some(o.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = load(cli)?;
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Config("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(format!("--threads: {e}")))?;
    }
    let dir = cfg.run.out.clone().unwrap_or_else(|| PathBuf::from("padelab-out"));
    let out = Artifacts::create(&dir)?;
    let mut ctx = Context::new(&cfg, cli.command.name(), out)?;
    let outcome = match cli.command {
        Command::Table => commands::table::run(&mut ctx),
        Command::Ray => commands::ray::run(&mut ctx),
        Command::Windows => commands::windows::run(&mut ctx),
        Command::Overconv => commands::overconv::run(&mut ctx),
    };
    let Context { manifest, out, .. } = ctx;
    manifest.finish(&out, &outcome)?;
    outcome
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::new()
        .filter_level(if cli.verbose { log::LevelFilter::Info } else { log::LevelFilter::Warn })
        .parse_default_env()
        .init();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("padelab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

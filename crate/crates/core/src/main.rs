//! Command-line runner for the experiment configurations.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use uembed::experiments::{run, write_tables, ExperimentConfig, ExperimentKind};
use uembed::Error;

#[derive(Parser)]
#[command(
    name = "uembed",
    version,
    about = "Run randomized-embedding experiments and write CSV results"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Embedding distance against the designed distance map.
    DesignSim(Common),
    /// Quantized maps against their unquantized curves.
    QuantSim(Common),
    /// Binary universal embeddings over steps and dimensions.
    Scatter(Common),
    /// Nearest-neighbour retrieval in the embedded domain.
    Retrieve(Common),
    /// Probability bound sweeps.
    Bounds(Common),
    /// Distance-map curve and spectrum of one map.
    MapEval(Common),
}

#[derive(Args)]
struct Common {
    /// `key = value` configuration file; defaults are used when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (overrides `out` in the config).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed (overrides `seed` in the config).
    #[arg(long)]
    seed: Option<u64>,
}

fn load(kind: ExperimentKind, args: &Common) -> Result<ExperimentConfig, Error> {
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::from_path(path, Some(kind))?,
        None => ExperimentConfig::defaults(kind),
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &args.out {
        cfg.out = Some(out.clone());
    }
    Ok(cfg)
}

fn is_config_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Config { .. }
            | Error::ConfigValue(_)
            | Error::UnknownMap(_)
            | Error::InvalidParameter { .. }
            | Error::DegenerateDataset(_)
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = match &cli.command {
        Command::DesignSim(a) => (ExperimentKind::DesignSim, a),
        Command::QuantSim(a) => (ExperimentKind::QuantizationSim, a),
        Command::Scatter(a) => (ExperimentKind::UniversalScatter, a),
        Command::Retrieve(a) => (ExperimentKind::Retrieval, a),
        Command::Bounds(a) => (ExperimentKind::BoundsSweep, a),
        Command::MapEval(a) => (ExperimentKind::MapEval, a),
    };
    if let Some(threads) = std::env::var("UEMBED_THREADS").ok().and_then(|v| v.parse().ok()) {
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let cfg = match load(kind, args).and_then(|c| c.validate().map(|_| c)) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let out = cfg
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("results").join(kind.name()));
    match run(&cfg).and_then(|t| write_tables(&out, &t)) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_config_error(&e) { 2 } else { 3 })
        }
    }
}

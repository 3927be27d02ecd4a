use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hybrid_trust_cli::commands;
use hybrid_trust_cli::{CliError, CliResult, ModelChoice, ScenarioConfig};

#[derive(Debug, Parser)]
#[command(
    name = "hybrid-trust",
    version,
    about = "Hybrid trust model for inter-domain routing"
)]
struct Cli {
    /// Master seed; overrides the sweep and grid seeds of the scenario.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Scenario file (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for the sweep (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
    /// More log output on standard error (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Costs of the A→H paths in the built-in eight-AS example.
    ExamplePaths {
        #[arg(long, value_enum, default_value = "both")]
        model: ModelChoice,
    },
    /// Path costs as first-hop trust falls and downstream trust grows.
    TrustVariation,
    /// Detection failure over alpha and average degree on random grids.
    AlphaSweep,
    /// Generate or check topology files.
    Topology {
        #[command(subcommand)]
        action: TopologyAction,
    },
    /// Evaluate the trust tree from the scenario's [trust] section.
    TrustTree,
}

#[derive(Debug, Subcommand)]
enum TopologyAction {
    /// Write a thinned grid world with roles and direct trust.
    Generate {
        #[arg(long)]
        rows: Option<u32>,
        #[arg(long)]
        cols: Option<u32>,
        #[arg(long)]
        distrusted_fraction: Option<f64>,
        #[arg(long)]
        target_degree: Option<f64>,
    },
    /// Parse a topology file and report every invalid line.
    Validate { file: PathBuf },
}

fn output(path: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).map_err(|e| {
                CliError::Runtime(format!("cannot create {}: {e}", p.display()))
            })?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> CliResult<()> {
    let mut cfg = match &cli.config {
        Some(p) => ScenarioConfig::load(p)?,
        None => ScenarioConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.sweep.master_seed = seed;
        cfg.grid.seed = seed;
    }
    let out = output(&cli.out)?;
    match cli.command {
        Command::ExamplePaths { model } => commands::example_paths(model, out),
        Command::TrustVariation => commands::trust_variation(&cfg, out),
        Command::AlphaSweep => commands::alpha_sweep(&cfg, cli.workers.map(|w| w as usize), out),
        Command::Topology { action } => match action {
            TopologyAction::Generate {
                rows,
                cols,
                distrusted_fraction,
                target_degree,
            } => {
                let g = &mut cfg.grid;
                g.rows = rows.unwrap_or(g.rows);
                g.cols = cols.unwrap_or(g.cols);
                g.distrusted_fraction = distrusted_fraction.unwrap_or(g.distrusted_fraction);
                g.target_avg_degree = target_degree.unwrap_or(g.target_avg_degree);
                cfg.grid_config()
                    .validate()
                    .map_err(|e| CliError::Config(e.to_string()))?;
                commands::topology_generate(&cfg, out)
            }
            TopologyAction::Validate { file } => commands::topology_validate(&file, out),
        },
        Command::TrustTree => commands::trust_tree(&cfg, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

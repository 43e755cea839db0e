//! `storm`: assess modality views by class-entropy imbalance, build a
//! cascade for a rare class, and apply it.
//!
//! Exit codes: 0 success, 2 input or configuration error, 3 internal error.
//! `STORM_LOG` (error, warn, info, debug) sets stderr verbosity.

mod commands;
mod config;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use log::info;
use storm_core::{Execution, StormError};

use commands::{AssessArgs, GenerateSource, SelectArgs, VerifyArgs, PRESETS};

#[derive(Parser)]
#[command(
    name = "storm",
    version,
    about = "Entropy-guided modality selection for rare classes"
)]
struct Cli {
    /// Worker threads for data-parallel steps (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank machines by entropy-imbalance gain over a raw view.
    Assess {
        #[arg(long)]
        dataset: PathBuf,
        /// JSON array of machine specs.
        #[arg(long)]
        specs: PathBuf,
        /// Baseline view (default: the first view in the dataset).
        #[arg(long)]
        raw_view: Option<String>,
        #[arg(long)]
        rare_class: Option<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Density neighbour count, overriding the config file.
        #[arg(long)]
        k: Option<usize>,
        /// JSON report path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a cascade; writes <out> and <out stem>.report.json.
    Select {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        specs: PathBuf,
        /// Target class (default: the least frequent label).
        #[arg(long)]
        rare_class: Option<String>,
        #[arg(long)]
        raw_view: Option<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Split seed, overriding the config file.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Label every instance of a dataset with a cascade.
    Predict {
        #[arg(long)]
        cascade: PathBuf,
        #[arg(long)]
        dataset: PathBuf,
        /// Labels CSV: id,label,score,overridden,coarse.
        #[arg(long)]
        out: PathBuf,
    },
    /// Rare-vs-rest metrics of a cascade on a labeled dataset.
    Evaluate {
        #[arg(long)]
        cascade: PathBuf,
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the entropy metrics and greedy selection against brute force.
    Verify {
        #[arg(long, default_value_t = 100)]
        datasets: usize,
        #[arg(long, default_value_t = 50)]
        max_n: usize,
        /// Planted instances for the greedy-vs-exhaustive comparison.
        #[arg(long, default_value_t = 20)]
        instances: usize,
        #[arg(long, default_value_t = 0.05)]
        gap: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a synthetic dataset CSV from a spec file or a named preset.
    Generate {
        /// Synthetic dataset spec (JSON).
        #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
        spec: Option<PathBuf>,
        #[arg(long, value_parser = PRESETS)]
        preset: Option<String>,
        /// Overrides the spec's seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), StormError> {
    let exec = match cli.threads {
        Some(1) => Execution::Sequential,
        _ => Execution::Parallel,
    };
    #[cfg(feature = "parallel")]
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(StormError::Config("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| StormError::Config(format!("thread pool: {e}")))?;
    }
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Assess {
            dataset,
            specs,
            raw_view,
            rare_class,
            config,
            k,
            out: json,
        } => commands::assess_cmd(
            &AssessArgs {
                dataset: &dataset,
                specs: &specs,
                raw_view: raw_view.as_deref(),
                rare_class: rare_class.as_deref(),
                config: config.as_deref(),
                k,
                out: json.as_deref(),
            },
            &mut out,
        ),
        Command::Select {
            dataset,
            specs,
            rare_class,
            raw_view,
            config,
            seed,
            out: path,
        } => commands::select_cmd(
            &SelectArgs {
                dataset: &dataset,
                specs: &specs,
                rare_class: rare_class.as_deref(),
                raw_view: raw_view.as_deref(),
                config: config.as_deref(),
                seed,
                out: &path,
            },
            exec,
            &mut out,
        ),
        Command::Predict {
            cascade,
            dataset,
            out: path,
        } => {
            let n = commands::predict_cmd(&cascade, &dataset, &path, exec)?;
            writeln!(out, "labeled {n} instances -> {}", path.display())?;
            Ok(())
        }
        Command::Evaluate {
            cascade,
            dataset,
            out: json,
        } => commands::evaluate_cmd(&cascade, &dataset, json.as_deref(), &mut out).map(|_| ()),
        Command::Verify {
            datasets,
            max_n,
            instances,
            gap,
            seed,
            out: json,
        } => {
            let summary = commands::verify(
                &VerifyArgs {
                    datasets,
                    max_n,
                    instances,
                    gap,
                    seed,
                },
                exec,
            )?;
            writeln!(out, "{}", summary.line())?;
            if let Some(path) = json {
                storm_core::io::write_json(path, &summary)?;
            }
            Ok(())
        }
        Command::Generate {
            spec,
            preset,
            seed,
            out: path,
        } => {
            let source = match (&spec, &preset) {
                (Some(p), _) => GenerateSource::Spec(p),
                (None, Some(name)) => GenerateSource::Preset(name),
                (None, None) => unreachable!("clap requires one of --spec, --preset"),
            };
            let n = commands::generate_cmd(source, seed, &path)?;
            info!("generated {n} instances");
            writeln!(out, "wrote {n} instances -> {}", path.display())?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("STORM_LOG", "warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 3 } else { 2 })
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use gradmine::experiment::{Algorithm, ExperimentSpec, Overrides};
use gradmine::io::load_csv;
use gradmine::report::{emit_csv, emit_json, write_atomic, ReportFormat};
use gradmine::runner::{run_experiments, run_once};
use gradmine_core::graank::maximal_only;

/// Gradual pattern mining toolkit: classical and population-based miners
/// over one numeric data model, plus a benchmark harness.
#[derive(Parser)]
#[command(name = "gradmine", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mine one dataset with one algorithm and print the patterns.
    Mine(MineArgs),
    /// Run an experiment matrix from a spec file and write a report.
    Bench(BenchArgs),
}

#[derive(Args)]
struct MineArgs {
    /// CSV dataset (header row, numeric columns).
    #[arg(long, value_name = "PATH")]
    input: PathBuf,
    /// Treat the first column as a row id and drop it.
    #[arg(long)]
    id_column: bool,
    /// Algorithm: graank, paraminer, aco-graank, aco-paraminer, ga, pso.
    #[arg(long)]
    algo: String,
    /// Minimum support threshold in (0, 1].
    #[arg(long, value_name = "SIGMA")]
    min_sup: f64,
    /// RNG seed for the stochastic miners.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Iteration / generation budget override.
    #[arg(long)]
    max_iter: Option<u64>,
    /// Evaporation coefficient override (colony miners).
    #[arg(long)]
    rho: Option<f64>,
    /// Proportion of children per generation (GA).
    #[arg(long)]
    pc: Option<f64>,
    /// Personal-best attraction coefficient (PSO).
    #[arg(long)]
    c1: Option<f64>,
    /// Global-best attraction coefficient (PSO).
    #[arg(long)]
    c2: Option<f64>,
    /// Population size (GA/PSO).
    #[arg(long)]
    pop_size: Option<usize>,
    /// Keep only patterns with no emitted strict superset.
    #[arg(long)]
    maximal_only: bool,
    /// Write the result as JSON here instead of printing text.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Experiment spec (TOML).
    #[arg(long, value_name = "PATH")]
    spec: PathBuf,
    /// Report destination; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Report format: json or csv.
    #[arg(long, default_value = "json")]
    format: String,
    /// Override the spec's repeat count.
    #[arg(long)]
    repeats: Option<u32>,
    /// Override the spec's seed base.
    #[arg(long)]
    seed: Option<u64>,
    /// Zero the wall-time fields so identical specs emit identical bytes.
    #[arg(long)]
    zero_timing: bool,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Mine(args) => match mine(args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::FAILURE
            }
        },
        Command::Bench(args) => match bench(args) {
            Ok(code) => code,
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::FAILURE
            }
        },
    }
}

fn mine(args: MineArgs) -> Result<()> {
    let algo = Algorithm::from_str(&args.algo)?;
    let d = load_csv(&args.input, args.id_column)?;
    let ov = Overrides {
        max_iter: args.max_iter,
        rho: args.rho,
        pc: args.pc,
        c1: args.c1,
        c2: args.c2,
        pop_size: args.pop_size,
        ..Default::default()
    };
    let mut result = run_once(algo, &d, args.min_sup, args.seed, &ov)
        .map_err(anyhow::Error::msg)
        .with_context(|| format!("mining with {algo}"))?;
    if args.maximal_only {
        result.patterns = maximal_only(&result.patterns);
    }

    if let Some(path) = &args.out {
        let json = serde_json::to_string_pretty(&result)?;
        write_atomic(path, &format!("{json}\n"))
            .with_context(|| format!("writing {}", path.display()))?;
        return Ok(());
    }

    println!(
        "{} on {} (sigma {}, seed {})",
        algo,
        args.input.display(),
        args.min_sup,
        args.seed
    );
    for sp in &result.patterns {
        let rendered: Vec<String> = sp
            .pattern
            .items()
            .iter()
            .map(|i| format!("{}{}", d.attribute_name(i.attribute), i.variation))
            .collect();
        println!("  {{{}}}  support {:.4}", rendered.join(","), sp.support);
    }
    println!(
        "{} patterns, {} iterations, {} candidates evaluated, {} bytes tracked",
        result.patterns.len(),
        result.iterations,
        result.candidates_evaluated,
        result.peak_tracked_bytes
    );
    Ok(())
}

fn bench(args: BenchArgs) -> Result<ExitCode> {
    let mut spec = ExperimentSpec::load(&args.spec)?;
    if let Some(r) = args.repeats {
        spec.repeats = r;
    }
    if let Some(s) = args.seed {
        spec.seed_base = s;
    }
    let format = ReportFormat::from_str(&args.format).map_err(anyhow::Error::msg)?;
    let report = run_experiments(&spec, args.zero_timing);

    let rendered = match format {
        ReportFormat::Json => emit_json(&report),
        ReportFormat::Csv => emit_csv(&report),
    };
    match &args.out {
        Some(path) => write_atomic(path, &rendered)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{rendered}"),
    }

    let failures: Vec<_> = report.cells.iter().filter(|c| c.error.is_some()).collect();
    if failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        for cell in &failures {
            eprintln!(
                "cell failed: {} / {} / sigma {}: {}",
                cell.dataset,
                cell.algorithm,
                cell.sigma,
                cell.error.as_deref().unwrap_or("unknown")
            );
        }
        eprintln!("{} of {} cells failed", failures.len(), report.cells.len());
        Ok(ExitCode::FAILURE)
    }
}

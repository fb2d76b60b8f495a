//! Runs experiment matrices: every (dataset, algorithm, sigma) cell is
//! repeated with consecutive seeds, timed, soundness-checked, and folded
//! into the report. A failing cell is recorded and the matrix moves on.

use std::path::Path;
use std::time::Instant;

use gradmine_core::aco::{mine_aco_graank, mine_aco_paraminer, AcoConfig};
use gradmine_core::evo::{mine_ga, mine_pso, EvoConfig};
use gradmine_core::graank::{mine_graank, GraankConfig};
use gradmine_core::oracle::bruteforce_support;
use gradmine_core::transactional::mine_paraminer;
use gradmine_core::{MiningResult, NumericDataset};

use crate::experiment::{Algorithm, ExperimentSpec, Overrides};
use crate::io::load_csv;
use crate::report::{aggregate, CellReport, Report, RunRecord};

pub const DEFAULT_WORK_LIMIT: u64 = 5_000_000;

/// Runs one miner once. The seed is ignored by the deterministic miners.
pub fn run_once(
    algo: Algorithm,
    d: &NumericDataset,
    sigma: f64,
    seed: u64,
    ov: &Overrides,
) -> Result<MiningResult, String> {
    match algo {
        Algorithm::Graank => {
            let mut cfg = GraankConfig::new(sigma);
            if let Some(cap) = ov.candidate_cap {
                cfg.max_candidates_per_level = cap;
            }
            mine_graank(d, &cfg).map_err(|e| e.to_string())
        }
        Algorithm::Paraminer => {
            let limit = ov.work_limit.unwrap_or(DEFAULT_WORK_LIMIT);
            mine_paraminer(d, sigma, limit).map_err(|e| e.to_string())
        }
        Algorithm::AcoGraank | Algorithm::AcoParaminer => {
            let mut cfg = AcoConfig::new(sigma, seed);
            if let Some(v) = ov.max_iter {
                cfg.max_iter = v;
            }
            if let Some(v) = ov.rho {
                cfg.rho = v;
            }
            if let Some(v) = ov.alpha {
                cfg.alpha = v;
            }
            if let Some(v) = ov.tau_min {
                cfg.tau_min = v;
            }
            if let Some(v) = ov.tau_max {
                cfg.tau_max = v;
            }
            if let Some(v) = ov.stall_window {
                cfg.stall_window = v;
            }
            if let Some(v) = ov.node_budget {
                cfg.node_budget = v;
            }
            Ok(match algo {
                Algorithm::AcoGraank => mine_aco_graank(d, &cfg),
                _ => mine_aco_paraminer(d, &cfg),
            })
        }
        Algorithm::Ga | Algorithm::Pso => {
            let mut cfg = EvoConfig::new(sigma, seed);
            if let Some(v) = ov.max_iter {
                cfg.max_iter = v;
            }
            if let Some(v) = ov.pop_size {
                cfg.pop_size = v;
            }
            if let Some(v) = ov.pc {
                cfg.pc = v;
            }
            if let Some(v) = ov.mutation_rate {
                cfg.mutation_rate = Some(v);
            }
            if let Some(v) = ov.c1 {
                cfg.c1 = v;
            }
            if let Some(v) = ov.c2 {
                cfg.c2 = v;
            }
            if let Some(v) = ov.inertia {
                cfg.inertia = v;
            }
            Ok(match algo {
                Algorithm::Ga => mine_ga(d, &cfg),
                _ => mine_pso(d, &cfg),
            })
        }
    }
}

/// Independent recheck: every emitted pattern must clear sigma by direct
/// pair counting (never through the bitmap kernel).
pub fn recheck_soundness(
    d: &NumericDataset,
    result: &MiningResult,
    sigma: f64,
) -> Result<(), String> {
    for sp in &result.patterns {
        let recomputed = bruteforce_support(d, &sp.pattern);
        if recomputed < sigma {
            return Err(format!(
                "soundness violation: {} recomputed support {recomputed} < {sigma}",
                sp.pattern
            ));
        }
    }
    Ok(())
}

/// Runs the whole matrix. `zero_timing` zeroes wall-clock fields so two runs
/// of the same spec emit byte-identical reports.
pub fn run_experiments(spec: &ExperimentSpec, zero_timing: bool) -> Report {
    let mut cells = Vec::new();
    for dataset_path in &spec.datasets {
        let loaded = load_csv(Path::new(dataset_path), spec.id_column);
        for &algo in &spec.algorithms {
            let ov = spec.overrides_for(algo);
            for &sigma in &spec.sigmas {
                let mut cell = CellReport {
                    dataset: dataset_path.clone(),
                    algorithm: algo,
                    sigma,
                    runs: Vec::new(),
                    aggregates: None,
                    error: None,
                };
                let d = match &loaded {
                    Ok(d) => d,
                    Err(e) => {
                        cell.error = Some(e.to_string());
                        cells.push(cell);
                        continue;
                    }
                };
                for run_index in 0..spec.repeats {
                    let seed = spec.seed_base + run_index as u64;
                    let started = Instant::now();
                    match run_once(algo, d, sigma, seed, &ov) {
                        Ok(result) => {
                            let elapsed = started.elapsed().as_secs_f64();
                            if let Err(e) = recheck_soundness(d, &result, sigma) {
                                cell.error = Some(e);
                                break;
                            }
                            cell.runs.push(RunRecord {
                                seed,
                                wall_time_secs: if zero_timing { 0.0 } else { elapsed },
                                pattern_count: result.patterns.len() as u64,
                                peak_tracked_bytes: result.peak_tracked_bytes,
                                iterations: result.iterations,
                                candidates_generated: result.candidates_generated,
                                candidates_evaluated: result.candidates_evaluated,
                            });
                        }
                        Err(e) => {
                            cell.error = Some(e);
                            break;
                        }
                    }
                }
                if cell.error.is_none() {
                    cell.aggregates = aggregate(&cell.runs);
                }
                cells.push(cell);
            }
        }
    }
    Report { cells }
}

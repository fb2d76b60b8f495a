//! The result record every miner returns.

use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::pattern::SupportedPattern;

/// Outcome of one miner run.
///
/// Everything here is a pure function of `(dataset, config, seed)`: rerunning
/// with identical inputs serializes byte-identically. Wall-clock time is
/// deliberately not part of this record; the benchmark harness measures it
/// around the call.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MiningResult {
    /// Distinct canonical patterns found, sorted, each with measured support.
    pub patterns: Vec<SupportedPattern>,
    /// Iterations (levels, generations or colony steps) actually run.
    pub iterations: u64,
    /// Candidates produced by the generator (joins, samples, individuals).
    pub candidates_generated: u64,
    /// Candidates whose support was actually measured against the data.
    pub candidates_evaluated: u64,
    /// Peak tracked-allocation bytes (see [`crate::track`]).
    pub peak_tracked_bytes: u64,
    /// RNG seed the run was driven by; 0 for the deterministic miners.
    pub seed: u64,
    /// Best cost after each iteration; populated by the GA/PSO miners only.
    pub best_cost_trajectory: Vec<f64>,
}

impl MiningResult {
    pub fn pattern_count(&self) -> usize {
        self.patterns.len()
    }
}

//! Breadth-first level-wise miner over binary order matrices.
//!
//! Level k holds every frequent canonical k-item pattern together with its
//! order matrix; level k+1 candidates come from joining patterns that share
//! a (k-1)-prefix, and a candidate's matrix is the AND of its parents'.

use alloc::vec::Vec;
use core::fmt;

use crate::dataset::NumericDataset;
use crate::order::OrderMatrix;
use crate::pattern::{GradualItem, GradualPattern, SupportedPattern, Variation};
use crate::result::MiningResult;
use crate::track::MemTracker;

/// One level of the search: all surviving k-item patterns.
#[derive(Debug, Clone)]
pub struct Level {
    pub k: usize,
    pub entries: Vec<LevelEntry>,
}

#[derive(Debug, Clone)]
pub struct LevelEntry {
    pub pattern: GradualPattern,
    pub matrix: OrderMatrix,
    pub support: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GraankError {
    SigmaOutOfRange(f64),
    /// The per-level candidate cap was hit; mirrors the out-of-memory regime
    /// of unbounded level-wise search without crashing.
    CandidateCapExceeded { level: usize, cap: usize },
}

impl fmt::Display for GraankError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraankError::SigmaOutOfRange(s) => {
                write!(f, "minimum support must lie in (0, 1], got {s}")
            }
            GraankError::CandidateCapExceeded { level, cap } => {
                write!(f, "candidate cap {cap} exceeded while building level {level}")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct GraankConfig {
    pub sigma: f64,
    /// Abort with a distinct error when one level would exceed this many
    /// candidates.
    pub max_candidates_per_level: usize,
}

impl GraankConfig {
    pub fn new(sigma: f64) -> Self {
        GraankConfig { sigma, max_candidates_per_level: 1_000_000 }
    }
}

/// Apriori-style join of a level's patterns.
///
/// Two patterns sharing their first k-1 items join into a (k+1)-candidate;
/// joins that would put an attribute in both orientations are rejected, and
/// only canonical candidates (first item `Up`) are kept so each complement
/// pair is generated once. The candidate's matrix is the AND of its parents'.
pub fn join_candidates(level: &Level) -> Vec<(GradualPattern, OrderMatrix)> {
    let mut out = Vec::new();
    let entries = &level.entries;
    for i in 0..entries.len() {
        for j in (i + 1)..entries.len() {
            let (p, q) = (&entries[i], &entries[j]);
            let (pi, qi) = (p.pattern.items(), q.pattern.items());
            if pi[..pi.len() - 1] != qi[..qi.len() - 1] {
                continue;
            }
            let (last_p, last_q) = (pi[pi.len() - 1], qi[qi.len() - 1]);
            if last_p.attribute == last_q.attribute {
                // Same attribute in both orientations: complement guard.
                continue;
            }
            let candidate = match p.pattern.with_item(last_q) {
                Some(c) => c,
                None => continue,
            };
            if !candidate.is_canonical() {
                continue;
            }
            match p.matrix.and(&q.matrix) {
                Ok(m) => out.push((candidate, m)),
                Err(_) => continue,
            }
        }
    }
    out
}

/// Mines every frequent canonical pattern with at least two items.
///
/// Deterministic: identical input yields an identical result. Each emitted
/// support is the popcount of the pattern's order matrix over `n(n-1)/2`.
pub fn mine_graank(
    d: &NumericDataset,
    cfg: &GraankConfig,
) -> Result<MiningResult, GraankError> {
    if !(cfg.sigma > 0.0 && cfg.sigma <= 1.0) {
        return Err(GraankError::SigmaOutOfRange(cfg.sigma));
    }
    let mut tracker = MemTracker::new();
    let mut generated = 0u64;
    let mut evaluated = 0u64;
    let mut results: Vec<SupportedPattern> = Vec::new();

    // Level 1: both orientations of every attribute whose singleton support
    // clears sigma (ties are the only thing that can lower it).
    let mut entries = Vec::new();
    for attr in 0..d.n_attrs() {
        for v in [Variation::Up, Variation::Down] {
            let item = GradualItem::new(attr, v);
            let matrix = OrderMatrix::for_item(d, item).expect("attr in range");
            tracker.alloc(matrix.byte_size());
            let support = matrix.support();
            if support >= cfg.sigma {
                let pattern = GradualPattern::new([item].to_vec()).expect("single item");
                entries.push(LevelEntry { pattern, matrix, support });
            } else {
                tracker.free(matrix.byte_size());
            }
        }
    }
    let mut level = Level { k: 1, entries };
    let mut iterations = 0u64;

    while level.entries.len() >= 2 {
        iterations += 1;
        let candidates = join_candidates(&level);
        if candidates.len() > cfg.max_candidates_per_level {
            return Err(GraankError::CandidateCapExceeded {
                level: level.k + 1,
                cap: cfg.max_candidates_per_level,
            });
        }
        let mut next = Vec::new();
        for (pattern, matrix) in candidates {
            tracker.alloc(matrix.byte_size());
            generated += 1;
            evaluated += 1;
            let support = matrix.support();
            if support >= cfg.sigma {
                results.push(SupportedPattern { pattern: pattern.clone(), support });
                next.push(LevelEntry { pattern, matrix, support });
            } else {
                tracker.free(matrix.byte_size());
            }
        }
        for e in &level.entries {
            tracker.free(e.matrix.byte_size());
        }
        level = Level { k: level.k + 1, entries: next };
    }

    results.sort_by(|a, b| a.pattern.cmp(&b.pattern));
    Ok(MiningResult {
        patterns: results,
        iterations,
        candidates_generated: generated,
        candidates_evaluated: evaluated,
        peak_tracked_bytes: tracker.peak(),
        seed: 0,
        best_cost_trajectory: Vec::new(),
    })
}

/// Keeps only patterns with no strict superset in the result set, treating a
/// pattern and its complement as the same correlation.
pub fn maximal_only(patterns: &[SupportedPattern]) -> Vec<SupportedPattern> {
    patterns
        .iter()
        .filter(|p| {
            !patterns.iter().any(|q| {
                q.pattern.len() > p.pattern.len() && q.pattern.has_class_subset(&p.pattern)
            })
        })
        .cloned()
        .collect()
}

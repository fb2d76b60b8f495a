//! The two ant-colony miners.
//!
//! ACO-GRAANK replaces level-wise candidate joins with stochastic draws from
//! a per-attribute pheromone matrix: each attribute independently picks
//! increase, decrease or stay-out in proportion to its pheromone row, valid
//! candidates deposit pheromone, and the whole matrix evaporates each
//! iteration with MAX-MIN clamping.
//!
//! ACO-ParaMiner replaces the depth-first recursion with pheromone- and
//! cost-guided sampling of row couples: couples that frequently co-occur in
//! the reduced transactional encoding are cheap, sampled node sets select
//! the items covering them, and tid-list intersections that clear the length
//! threshold become patterns.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dataset::NumericDataset;
use crate::order::OrderMatrix;
use crate::pattern::{GradualItem, GradualPattern, SupportedPattern, Variation};
use crate::result::MiningResult;
use crate::track::{vec_bytes, MemTracker};
use crate::transactional::{
    encode_transactions, min_tid_len_for, pair_index, pair_rows, reduce_dataset,
    ReducedDataset,
};

/// Shared knobs for both colony miners.
#[derive(Debug, Clone)]
pub struct AcoConfig {
    pub sigma: f64,
    pub max_iter: u64,
    /// Evaporation coefficient: intensities scale by `1 - rho`.
    pub rho: f64,
    /// Optional exponent on pheromone terms; 1 leaves the proportion rule
    /// untouched.
    pub alpha: f64,
    /// MAX-MIN clamp bounds.
    pub tau_min: f64,
    pub tau_max: f64,
    /// Consecutive iterations without anything new before stopping.
    pub stall_window: u64,
    /// Couples drawn per ACO-ParaMiner iteration.
    pub node_budget: usize,
    pub seed: u64,
}

impl AcoConfig {
    pub fn new(sigma: f64, seed: u64) -> Self {
        AcoConfig {
            sigma,
            max_iter: 100,
            rho: 0.5,
            alpha: 1.0,
            tau_min: 1.0,
            tau_max: 1e6,
            stall_window: 5,
            node_budget: 2,
            seed,
        }
    }
}

/// Pheromone proportions of the three gradual options per attribute.
///
/// Column 0 is increase, 1 is decrease, 2 is stay-out; all entries start at
/// 1 and stay inside the MAX-MIN clamp bounds.
#[derive(Debug, Clone)]
pub struct PheromoneMatrix3 {
    rows: Vec<[f64; 3]>,
    tau_min: f64,
    tau_max: f64,
}

pub const OPT_UP: usize = 0;
pub const OPT_DOWN: usize = 1;
pub const OPT_OUT: usize = 2;

impl PheromoneMatrix3 {
    pub fn new(attrs: usize, tau_min: f64, tau_max: f64) -> Self {
        PheromoneMatrix3 {
            rows: alloc::vec![[1.0; 3]; attrs],
            tau_min,
            tau_max,
        }
    }

    pub fn attrs(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, attr: usize, option: usize) -> f64 {
        self.rows[attr][option]
    }

    pub fn set(&mut self, attr: usize, option: usize, value: f64) {
        self.rows[attr][option] = value.clamp(self.tau_min, self.tau_max);
    }

    /// Raw row override for tests and fixtures; no clamping.
    pub fn set_row_raw(&mut self, attr: usize, row: [f64; 3]) {
        self.rows[attr] = row;
    }

    /// Per-option draw probabilities of one attribute: each pheromone (taken
    /// to the `alpha` power) over the row total. Rows sum to 1.
    pub fn probabilities(&self, attr: usize, alpha: f64) -> [f64; 3] {
        let row = &self.rows[attr];
        let mut w = [0.0; 3];
        for k in 0..3 {
            w[k] = pow_alpha(row[k], alpha);
        }
        let total: f64 = w.iter().sum();
        if total <= 0.0 {
            return [1.0 / 3.0; 3];
        }
        [w[0] / total, w[1] / total, w[2] / total]
    }

    /// Scales every entry by `1 - rho`, clamped to the floor.
    pub fn evaporate(&mut self, rho: f64) {
        for row in &mut self.rows {
            for v in row.iter_mut() {
                *v = (*v * (1.0 - rho)).clamp(self.tau_min, self.tau_max);
            }
        }
    }

    /// Adds one unit on `(attribute, variation)` for every item of a valid
    /// pattern, clamped to the ceiling.
    pub fn deposit(&mut self, pattern: &GradualPattern) {
        for item in pattern.items() {
            let col = match item.variation {
                Variation::Up => OPT_UP,
                Variation::Down => OPT_DOWN,
            };
            let v = &mut self.rows[item.attribute][col];
            *v = (*v + 1.0).clamp(self.tau_min, self.tau_max);
        }
    }

    pub fn byte_size(&self) -> u64 {
        vec_bytes(&self.rows)
    }
}

fn pow_alpha(base: f64, alpha: f64) -> f64 {
    if alpha == 1.0 {
        base
    } else {
        libm::pow(base, alpha)
    }
}

/// One per-iteration pheromone update: matrix-wide evaporation followed by a
/// deposit for each valid pattern, everything clamped to `[tau_min, tau_max]`.
pub fn update_pheromones_bfs(
    matrix: &mut PheromoneMatrix3,
    valid: &[GradualPattern],
    rho: f64,
) {
    matrix.evaporate(rho);
    for p in valid {
        matrix.deposit(p);
    }
}

/// Canonical patterns already measured infrequent; any superset of an entry
/// is infrequent too and never re-evaluated.
#[derive(Debug, Clone, Default)]
pub struct RejectedStore {
    entries: BTreeSet<GradualPattern>,
}

impl RejectedStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, pattern: GradualPattern) {
        self.entries.insert(pattern.canonicalize());
    }

    /// True when `candidate` contains a stored pattern (in either
    /// orientation of the complement pair).
    pub fn rejects(&self, candidate: &GradualPattern) -> bool {
        self.entries.iter().any(|e| candidate.has_class_subset(e))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn byte_size(&self) -> u64 {
        self.entries
            .iter()
            .map(|p| (p.len() * core::mem::size_of::<GradualItem>()) as u64 + 24)
            .sum()
    }
}

/// The sampler ran out of retries: the colony keeps proposing item sets that
/// are too small or already known infrequent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stagnation;

impl fmt::Display for Stagnation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sampler retry budget exhausted")
    }
}

const SAMPLE_RETRIES: u32 = 64;

/// Draws one canonical candidate pattern from the pheromone matrix.
///
/// Each attribute independently picks increase, decrease or stay-out with
/// its row proportions; draws with fewer than two items or covering a
/// rejected pattern are retried up to a fixed budget. Returns the canonical
/// form and the number of raw draws taken.
pub fn sample_pattern(
    matrix: &PheromoneMatrix3,
    alpha: f64,
    rng: &mut ChaCha8Rng,
    rejected: &RejectedStore,
) -> Result<(GradualPattern, u32), Stagnation> {
    for attempt in 1..=SAMPLE_RETRIES {
        let mut items = Vec::new();
        for attr in 0..matrix.attrs() {
            let p = matrix.probabilities(attr, alpha);
            let roll: f64 = rng.gen();
            if roll < p[OPT_UP] {
                items.push(GradualItem::up(attr));
            } else if roll < p[OPT_UP] + p[OPT_DOWN] {
                items.push(GradualItem::down(attr));
            }
        }
        if items.len() < 2 {
            continue;
        }
        let pattern = GradualPattern::new(items)
            .expect("one draw per attribute")
            .canonicalize();
        if rejected.rejects(&pattern) {
            continue;
        }
        return Ok((pattern, attempt));
    }
    Err(Stagnation)
}

/// Measures a candidate against the data: the supported pattern when its
/// support clears `sigma`, otherwise a `RejectedStore` entry and `None`.
pub fn evaluate_pattern(
    d: &NumericDataset,
    pattern: &GradualPattern,
    sigma: f64,
    rejected: &mut RejectedStore,
) -> Option<SupportedPattern> {
    assert!(pattern.len() >= 2, "candidate patterns need at least two items");
    let matrix = OrderMatrix::for_pattern(d, pattern).expect("attributes in range");
    let support = matrix.support();
    if support >= sigma {
        Some(SupportedPattern { pattern: pattern.canonicalize(), support })
    } else {
        rejected.insert(pattern.clone());
        None
    }
}

/// Precomputed singleton order matrices, one per oriented item.
struct ItemBins {
    up: Vec<OrderMatrix>,
    down: Vec<OrderMatrix>,
}

impl ItemBins {
    fn build(d: &NumericDataset, tracker: &mut MemTracker) -> Self {
        let mut up = Vec::with_capacity(d.n_attrs());
        let mut down = Vec::with_capacity(d.n_attrs());
        for attr in 0..d.n_attrs() {
            let u = OrderMatrix::for_item(d, GradualItem::up(attr)).expect("in range");
            let w = OrderMatrix::for_item(d, GradualItem::down(attr)).expect("in range");
            tracker.alloc(u.byte_size() + w.byte_size());
            up.push(u);
            down.push(w);
        }
        ItemBins { up, down }
    }

    fn of(&self, item: GradualItem) -> &OrderMatrix {
        match item.variation {
            Variation::Up => &self.up[item.attribute],
            Variation::Down => &self.down[item.attribute],
        }
    }
}

/// Largest frequent head of the sampled candidate.
///
/// Walks the items in attribute order, keeping each item whose conjunction
/// stays at or above `sigma`; a walk that strands a single item restarts one
/// item later. Dropping any item proves the full candidate infrequent by
/// anti-monotonicity.
fn extract_frequent(
    bins: &ItemBins,
    candidate: &GradualPattern,
    sigma: f64,
) -> Option<SupportedPattern> {
    let items = candidate.items();
    for start in 0..items.len() {
        if items.len() - start < 2 {
            break;
        }
        let mut acc = bins.of(items[start]).clone();
        let mut kept = alloc::vec![items[start]];
        for &item in &items[start + 1..] {
            let next = acc.and(bins.of(item)).expect("same dimension");
            if next.support() >= sigma {
                acc = next;
                kept.push(item);
            }
        }
        if kept.len() >= 2 {
            let pattern =
                GradualPattern::new(kept).expect("distinct attrs").canonicalize();
            return Some(SupportedPattern { pattern, support: acc.support() });
        }
    }
    None
}

/// Pheromone-guided breadth-style miner.
///
/// Each iteration draws one candidate from the pheromone matrix, trims it to
/// its largest frequent head, deposits on success and evaporates the matrix
/// either way. Stops after `max_iter` iterations or once `stall_window`
/// consecutive iterations produce only already-seen candidates.
pub fn mine_aco_graank(d: &NumericDataset, cfg: &AcoConfig) -> MiningResult {
    assert!(cfg.sigma > 0.0 && cfg.sigma <= 1.0, "sigma must lie in (0, 1]");
    let mut tracker = MemTracker::new();
    let bins = ItemBins::build(d, &mut tracker);
    let mut pheromones = PheromoneMatrix3::new(d.n_attrs(), cfg.tau_min, cfg.tau_max);
    tracker.alloc(pheromones.byte_size());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rejected = RejectedStore::new();
    let mut seen: BTreeSet<GradualPattern> = BTreeSet::new();
    let mut found: BTreeSet<GradualPattern> = BTreeSet::new();
    let mut patterns: Vec<SupportedPattern> = Vec::new();

    let mut generated = 0u64;
    let mut evaluated = 0u64;
    let mut iterations = 0u64;
    let mut stall = 0u64;

    for _ in 0..cfg.max_iter {
        iterations += 1;
        let (candidate, draws) =
            match sample_pattern(&pheromones, cfg.alpha, &mut rng, &rejected) {
                Ok(x) => x,
                Err(Stagnation) => break,
            };
        generated += draws as u64;
        let fresh = seen.insert(candidate.clone());

        evaluated += 1;
        let valid = extract_frequent(&bins, &candidate, cfg.sigma);

        pheromones.evaporate(cfg.rho);
        match &valid {
            Some(sp) => {
                pheromones.deposit(&sp.pattern);
                if found.insert(sp.pattern.clone()) {
                    patterns.push(sp.clone());
                }
            }
            None => rejected.insert(candidate.clone()),
        }

        if fresh {
            stall = 0;
        } else {
            stall += 1;
            if stall >= cfg.stall_window {
                break;
            }
        }
    }

    tracker.alloc(rejected.byte_size());
    patterns.sort_by(|a, b| a.pattern.cmp(&b.pattern));
    MiningResult {
        patterns,
        iterations,
        candidates_generated: generated,
        candidates_evaluated: evaluated,
        peak_tracked_bytes: tracker.peak(),
        seed: cfg.seed,
        best_cost_trajectory: Vec::new(),
    }
}

/// Couple costs: `C(i,j) = 1 / (1 + occurrence count of the couple across
/// the reduced encoding's tid lists)`; unobserved couples stay at 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    n: usize,
    cells: Vec<f64>,
}

impl CostMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.cells[i * self.n + j]
    }

    pub fn byte_size(&self) -> u64 {
        vec_bytes(&self.cells)
    }
}

/// Builds the couple cost matrix of a reduced transactional dataset. Costs
/// live in the upper triangle; every other cell keeps the initialization
/// value 1.
pub fn build_cost_matrix(reduced: &ReducedDataset) -> CostMatrix {
    let n = reduced.n_rows;
    let mut counts = alloc::vec![0u32; n * (n - 1) / 2];
    for tids in reduced.items_to_tids.values() {
        for &tid in tids {
            counts[tid as usize] += 1;
        }
    }
    let mut cells = alloc::vec![1.0f64; n * n];
    for (tid, &count) in counts.iter().enumerate() {
        if count == 0 {
            continue;
        }
        let (i, j) = pair_rows(tid as u32, n);
        cells[i * n + j] = 1.0 / (1.0 + count as f64);
    }
    CostMatrix { n, cells }
}

/// Pheromone intensity per row couple, MAX-MIN clamped.
#[derive(Debug, Clone)]
pub struct PheromoneMatrixN {
    n: usize,
    cells: Vec<f64>,
    tau_min: f64,
    tau_max: f64,
}

impl PheromoneMatrixN {
    pub fn new(n: usize, tau_min: f64, tau_max: f64) -> Self {
        PheromoneMatrixN { n, cells: alloc::vec![1.0; n * n], tau_min, tau_max }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.cells[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.cells[i * self.n + j] = value.clamp(self.tau_min, self.tau_max);
    }

    fn reinforce(&mut self, i: usize, j: usize) {
        self.set(i, j, self.get(i, j) + 1.0);
    }

    fn evaporate_at(&mut self, i: usize, j: usize, rho: f64) {
        self.set(i, j, self.get(i, j) * (1.0 - rho));
    }

    pub fn byte_size(&self) -> u64 {
        vec_bytes(&self.cells)
    }
}

/// Normalized draw weights over upper-triangle couples: pheromone (to the
/// `alpha` power) times inverse cost. Sums to 1.
pub fn node_weights(
    pheromones: &PheromoneMatrixN,
    costs: &CostMatrix,
    alpha: f64,
) -> Vec<f64> {
    let n = pheromones.dim();
    debug_assert_eq!(n, costs.dim());
    let mut w = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            w.push(pow_alpha(pheromones.get(i, j), alpha) / costs.get(i, j));
        }
    }
    let total: f64 = w.iter().sum();
    if total > 0.0 {
        for v in &mut w {
            *v /= total;
        }
    }
    w
}

/// Draws up to `size_budget` distinct couples with probability proportional
/// to pheromone times inverse cost, without replacement.
pub fn sample_node_set(
    pheromones: &PheromoneMatrixN,
    costs: &CostMatrix,
    alpha: f64,
    rng: &mut ChaCha8Rng,
    size_budget: usize,
) -> Vec<(u32, u32)> {
    let n = pheromones.dim();
    let mut weights = node_weights(pheromones, costs, alpha);
    let mut out = Vec::with_capacity(size_budget);
    for _ in 0..size_budget.min(weights.len()) {
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            break;
        }
        let mut roll: f64 = rng.gen::<f64>() * total;
        let mut chosen = None;
        for (idx, &w) in weights.iter().enumerate() {
            if w <= 0.0 {
                continue;
            }
            roll -= w;
            if roll < 0.0 {
                chosen = Some(idx);
                break;
            }
        }
        let chosen = match chosen.or_else(|| {
            // numeric slack: fall back to the last positive weight
            weights.iter().rposition(|&w| w > 0.0)
        }) {
            Some(c) => c,
            None => break,
        };
        let (i, j) = pair_rows(chosen as u32, n);
        out.push((i as u32, j as u32));
        weights[chosen] = 0.0;
    }
    out.sort_unstable();
    out
}

/// Pheromone- and cost-guided depth-style miner.
///
/// Encodes and reduces the dataset, then repeatedly samples a couple set,
/// collects the items covering every sampled couple, and intersects their
/// tid lists in both orientations. Intersections clearing the minimum
/// length become patterns and reinforce their supporting couples; failures
/// evaporate the sampled entries.
pub fn mine_aco_paraminer(d: &NumericDataset, cfg: &AcoConfig) -> MiningResult {
    assert!(cfg.sigma > 0.0 && cfg.sigma <= 1.0, "sigma must lie in (0, 1]");
    let n = d.n_rows();
    let pairs = d.pair_count();
    let min_len = min_tid_len_for(cfg.sigma, pairs);

    let mut tracker = MemTracker::new();
    let encoded = encode_transactions(d);
    tracker.alloc(encoded.byte_size());
    let reduced = reduce_dataset(&encoded, min_len);
    tracker.alloc(reduced.byte_size());
    let costs = build_cost_matrix(&reduced);
    tracker.alloc(costs.byte_size());
    let mut pheromones = PheromoneMatrixN::new(n, cfg.tau_min, cfg.tau_max);
    tracker.alloc(pheromones.byte_size());

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut seen_sets: BTreeSet<Vec<(u32, u32)>> = BTreeSet::new();
    let mut found: BTreeSet<GradualPattern> = BTreeSet::new();
    let mut patterns: Vec<SupportedPattern> = Vec::new();

    let mut generated = 0u64;
    let mut evaluated = 0u64;
    let mut iterations = 0u64;
    let mut stall = 0u64;

    for _ in 0..cfg.max_iter {
        iterations += 1;
        let node_set =
            sample_node_set(&pheromones, &costs, cfg.alpha, &mut rng, cfg.node_budget);
        if node_set.is_empty() {
            break;
        }
        generated += 1;
        if seen_sets.insert(node_set.clone()) {
            stall = 0;
        } else {
            stall += 1;
            if stall >= cfg.stall_window {
                break;
            }
        }

        // Items whose tid lists contain every sampled couple.
        let sampled_tids: Vec<u32> = node_set
            .iter()
            .map(|&(i, j)| pair_index(i as usize, j as usize, n))
            .collect();
        let covering: Vec<GradualItem> = encoded
            .items_to_tids
            .iter()
            .filter(|(_, tids)| {
                sampled_tids.iter().all(|t| tids.binary_search(t).is_ok())
            })
            .map(|(item, _)| *item)
            .collect();

        let mut emitted = false;
        if covering.len() >= 2 {
            evaluated += 1;
            let fwd = intersect_all(&encoded, &covering);
            let complements: Vec<GradualItem> =
                covering.iter().map(|i| i.complement()).collect();
            let bwd = intersect_all(&encoded, &complements);
            if fwd.len() + bwd.len() >= min_len {
                let pattern = GradualPattern::new(covering)
                    .expect("one item per attribute")
                    .canonicalize();
                let support = (fwd.len() + bwd.len()) as f64 / pairs as f64;
                if found.insert(pattern.clone()) {
                    patterns.push(SupportedPattern { pattern, support });
                }
                for &tid in fwd.iter().chain(bwd.iter()) {
                    let (i, j) = pair_rows(tid, n);
                    pheromones.reinforce(i, j);
                }
                emitted = true;
            }
        }
        if !emitted {
            for &(i, j) in &node_set {
                pheromones.evaporate_at(i as usize, j as usize, cfg.rho);
            }
        }
    }

    patterns.sort_by(|a, b| a.pattern.cmp(&b.pattern));
    MiningResult {
        patterns,
        iterations,
        candidates_generated: generated,
        candidates_evaluated: evaluated,
        peak_tracked_bytes: tracker.peak(),
        seed: cfg.seed,
        best_cost_trajectory: Vec::new(),
    }
}

fn intersect_all(
    encoded: &crate::transactional::TransactionalDataset,
    items: &[GradualItem],
) -> Vec<u32> {
    let mut iter = items.iter();
    let first = match iter.next() {
        Some(i) => encoded.tids_of(*i).to_vec(),
        None => return Vec::new(),
    };
    iter.fold(first, |acc, item| {
        let tids = encoded.tids_of(*item);
        acc.into_iter().filter(|t| tids.binary_search(t).is_ok()).collect()
    })
}

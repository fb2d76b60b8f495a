//! Genetic-algorithm and particle-swarm miners over a continuous encoding.
//!
//! An individual is a point in `[0,1)^m`: components below 1/3 decode to a
//! decreasing item, components at or above 2/3 to an increasing one, and the
//! middle band excludes the attribute. Fitness rewards high-support valid
//! patterns; invalid individuals (fewer than two items or support under
//! sigma) sit in a strictly worse cost band so any valid pattern beats them.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dataset::NumericDataset;
use crate::order::OrderMatrix;
use crate::pattern::{GradualItem, GradualPattern, SupportedPattern};
use crate::result::MiningResult;
use crate::track::MemTracker;

/// A point in `[0,1)^m`, decodable to a gradual pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionVector(pub Vec<f64>);

impl PositionVector {
    pub fn in_bounds(&self) -> bool {
        self.0.iter().all(|&v| (0.0..1.0).contains(&v))
    }
}

/// Knobs shared by both population miners.
#[derive(Debug, Clone)]
pub struct EvoConfig {
    pub sigma: f64,
    pub max_iter: u64,
    pub pop_size: usize,
    /// Proportion of children per generation: `nc = round(pc * pop_size)`.
    pub pc: f64,
    /// Probability that a child is replaced by a fresh uniform individual;
    /// `None` defaults to `1/m`.
    pub mutation_rate: Option<f64>,
    /// Personal-best and global-best attraction coefficients.
    pub c1: f64,
    pub c2: f64,
    /// Velocity inertia.
    pub inertia: f64,
    pub seed: u64,
}

impl EvoConfig {
    pub fn new(sigma: f64, seed: u64) -> Self {
        EvoConfig {
            sigma,
            max_iter: 100,
            pop_size: 50,
            pc: 0.5,
            mutation_rate: None,
            c1: 0.5,
            c2: 0.5,
            inertia: 0.7,
            seed,
        }
    }

    pub fn offspring_count(&self) -> usize {
        round_to_usize(self.pc * self.pop_size as f64)
    }
}

fn round_to_usize(x: f64) -> usize {
    libm::round(x) as usize
}

/// Cost of an individual; lower is better.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitnessValue {
    pub cost: f64,
}

/// Decodes a position: low third decreasing, high third increasing, middle
/// excluded. The result is canonicalized, so the decode is constant on each
/// threshold cell.
pub fn decode(v: &PositionVector) -> GradualPattern {
    let mut items = Vec::new();
    for (attr, &x) in v.0.iter().enumerate() {
        if x < 1.0 / 3.0 {
            items.push(GradualItem::down(attr));
        } else if x >= 2.0 / 3.0 {
            items.push(GradualItem::up(attr));
        }
    }
    GradualPattern::new(items).expect("one item per attribute").canonicalize()
}

/// Support memo keyed by decoded pattern: the expensive kernel runs once per
/// distinct pattern per run.
struct FitnessCache<'a> {
    d: &'a NumericDataset,
    sigma: f64,
    memo: BTreeMap<GradualPattern, f64>,
    evaluations: u64,
}

impl<'a> FitnessCache<'a> {
    fn new(d: &'a NumericDataset, sigma: f64) -> Self {
        FitnessCache { d, sigma, memo: BTreeMap::new(), evaluations: 0 }
    }

    fn support_of(&mut self, pattern: &GradualPattern) -> f64 {
        if pattern.is_empty() {
            return 0.0;
        }
        if let Some(&s) = self.memo.get(pattern) {
            return s;
        }
        self.evaluations += 1;
        let s = OrderMatrix::for_pattern(self.d, pattern)
            .expect("attributes in range")
            .support();
        self.memo.insert(pattern.clone(), s);
        s
    }

    /// Valid patterns cost `1 - support`; everything else costs `2 - support`,
    /// a strictly worse band.
    fn cost_of(&mut self, pattern: &GradualPattern) -> f64 {
        let support = self.support_of(pattern);
        if pattern.len() >= 2 && support >= self.sigma {
            1.0 - support
        } else {
            2.0 - support
        }
    }

    fn byte_size(&self) -> u64 {
        self.memo
            .keys()
            .map(|p| (p.len() * core::mem::size_of::<GradualItem>()) as u64 + 32)
            .sum()
    }
}

/// Decode-then-measure fitness of one position.
pub fn fitness(d: &NumericDataset, v: &PositionVector, sigma: f64) -> FitnessValue {
    let mut cache = FitnessCache::new(d, sigma);
    let pattern = decode(v);
    FitnessValue { cost: cache.cost_of(&pattern) }
}

fn random_position(m: usize, rng: &mut ChaCha8Rng) -> PositionVector {
    PositionVector((0..m).map(|_| rng.gen::<f64>()).collect())
}

struct Evaluated {
    position: PositionVector,
    cost: f64,
}

fn evaluate(
    cache: &mut FitnessCache<'_>,
    position: PositionVector,
    finds: &mut BTreeMap<GradualPattern, f64>,
) -> Evaluated {
    let pattern = decode(&position);
    let cost = cache.cost_of(&pattern);
    if pattern.len() >= 2 {
        let support = cache.support_of(&pattern);
        if support >= cache.sigma {
            finds.entry(pattern).or_insert(support);
        }
    }
    Evaluated { position, cost }
}

/// Cost-to-weight temperature for roulette selection. Small enough that the
/// strongest individuals dominate mating, driving the population to the
/// highest-support pattern rather than spreading over the valid region.
const SELECTION_TEMPERATURE: f64 = 0.1;

/// Roulette selection over Boltzmann weights of the (negated) cost.
fn roulette(pop: &[Evaluated], rng: &mut ChaCha8Rng) -> usize {
    let floor = pop.iter().map(|e| e.cost).fold(f64::INFINITY, f64::min);
    let weight = |cost: f64| libm::exp(-(cost - floor) / SELECTION_TEMPERATURE);
    let total: f64 = pop.iter().map(|e| weight(e.cost)).sum();
    if total <= 0.0 {
        return rng.gen_range(0..pop.len());
    }
    let mut roll = rng.gen::<f64>() * total;
    for (idx, e) in pop.iter().enumerate() {
        roll -= weight(e.cost);
        if roll < 0.0 {
            return idx;
        }
    }
    pop.len() - 1
}

fn finish(
    finds: BTreeMap<GradualPattern, f64>,
    iterations: u64,
    generated: u64,
    evaluated: u64,
    peak: u64,
    seed: u64,
    trajectory: Vec<f64>,
) -> MiningResult {
    let patterns = finds
        .into_iter()
        .map(|(pattern, support)| SupportedPattern { pattern, support })
        .collect();
    MiningResult {
        patterns,
        iterations,
        candidates_generated: generated,
        candidates_evaluated: evaluated,
        peak_tracked_bytes: peak,
        seed,
        best_cost_trajectory: trajectory,
    }
}

/// Genetic-algorithm miner: roulette parent selection, single-point
/// crossover, per-component uniform-reset mutation, elitist replacement.
///
/// Returns every distinct valid pattern seen during the run plus the
/// best-cost trajectory.
pub fn mine_ga(d: &NumericDataset, cfg: &EvoConfig) -> MiningResult {
    assert!(cfg.sigma > 0.0 && cfg.sigma <= 1.0, "sigma must lie in (0, 1]");
    assert!(cfg.pc > 0.0 && cfg.pc <= 1.0, "pc must lie in (0, 1]");
    let m = d.n_attrs();
    let mutation_rate = cfg.mutation_rate.unwrap_or(1.0 / m as f64);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut cache = FitnessCache::new(d, cfg.sigma);
    let mut finds = BTreeMap::new();
    let mut tracker = MemTracker::new();
    let mut generated = 0u64;

    let mut pop: Vec<Evaluated> = (0..cfg.pop_size)
        .map(|_| {
            generated += 1;
            evaluate(&mut cache, random_position(m, &mut rng), &mut finds)
        })
        .collect();
    pop.sort_by(|a, b| a.cost.total_cmp(&b.cost));
    tracker.alloc(cfg.pop_size as u64 * (m as u64 * 8 + 24));

    let nc = cfg.offspring_count();
    let mut trajectory = Vec::with_capacity(cfg.max_iter as usize);
    for _ in 0..cfg.max_iter {
        let mut children = Vec::with_capacity(nc);
        while children.len() < nc {
            let p1 = &pop[roulette(&pop, &mut rng)].position;
            let p2 = &pop[roulette(&pop, &mut rng)].position;
            let cut = if m > 1 { rng.gen_range(1..m) } else { 1 };
            let mut c1: Vec<f64> = Vec::with_capacity(m);
            let mut c2: Vec<f64> = Vec::with_capacity(m);
            c1.extend_from_slice(&p1.0[..cut]);
            c1.extend_from_slice(&p2.0[cut..]);
            c2.extend_from_slice(&p2.0[..cut]);
            c2.extend_from_slice(&p1.0[cut..]);
            for child in [c1, c2] {
                if children.len() >= nc {
                    break;
                }
                let mut child = child;
                if rng.gen::<f64>() < mutation_rate {
                    for comp in child.iter_mut() {
                        *comp = rng.gen::<f64>();
                    }
                }
                generated += 1;
                children.push(evaluate(
                    &mut cache,
                    PositionVector(child),
                    &mut finds,
                ));
            }
        }
        tracker.alloc(nc as u64 * (m as u64 * 8 + 24));
        pop.extend(children);
        pop.sort_by(|a, b| a.cost.total_cmp(&b.cost));
        pop.truncate(cfg.pop_size);
        tracker.free(nc as u64 * (m as u64 * 8 + 24));
        trajectory.push(pop[0].cost);
    }

    tracker.alloc(cache.byte_size());
    finish(
        finds,
        cfg.max_iter,
        generated,
        cache.evaluations,
        tracker.peak(),
        cfg.seed,
        trajectory,
    )
}

/// Reflects a coordinate back into `[0,1)`.
fn reflect_into_unit(mut x: f64) -> f64 {
    for _ in 0..8 {
        if x < 0.0 {
            x = -x;
        } else if x >= 1.0 {
            x = 2.0 - x;
        } else {
            return x;
        }
    }
    x.clamp(0.0, 1.0 - 1e-12)
}

/// Particle-swarm miner: inertial velocity plus personal-best and
/// global-best attraction with fresh uniform draws per component, positions
/// reflected into `[0,1)`.
///
/// Returns every distinct valid pattern seen during the run plus the
/// best-cost trajectory.
#[allow(clippy::needless_range_loop)] // velocity/position/best move in lockstep
pub fn mine_pso(d: &NumericDataset, cfg: &EvoConfig) -> MiningResult {
    assert!(cfg.sigma > 0.0 && cfg.sigma <= 1.0, "sigma must lie in (0, 1]");
    let m = d.n_attrs();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut cache = FitnessCache::new(d, cfg.sigma);
    let mut finds = BTreeMap::new();
    let mut tracker = MemTracker::new();
    let mut generated = 0u64;

    let mut positions: Vec<PositionVector> = Vec::with_capacity(cfg.pop_size);
    let mut velocities: Vec<Vec<f64>> = Vec::with_capacity(cfg.pop_size);
    let mut personal_best: Vec<(PositionVector, f64)> = Vec::with_capacity(cfg.pop_size);
    let mut global_best: Option<(PositionVector, f64)> = None;

    for _ in 0..cfg.pop_size {
        let p = random_position(m, &mut rng);
        generated += 1;
        let e = evaluate(&mut cache, p.clone(), &mut finds);
        if global_best.as_ref().is_none_or(|(_, c)| e.cost < *c) {
            global_best = Some((p.clone(), e.cost));
        }
        personal_best.push((p.clone(), e.cost));
        positions.push(p);
        velocities.push(alloc::vec![0.0; m]);
    }
    tracker.alloc(3 * cfg.pop_size as u64 * (m as u64 * 8 + 24));

    let mut trajectory = Vec::with_capacity(cfg.max_iter as usize);
    for _ in 0..cfg.max_iter {
        for i in 0..cfg.pop_size {
            let (gb, _) = global_best.as_ref().expect("seeded above").clone();
            let (pb, _) = personal_best[i].clone();
            for k in 0..m {
                let r1: f64 = rng.gen();
                let r2: f64 = rng.gen();
                let v = cfg.inertia * velocities[i][k]
                    + cfg.c1 * r1 * (pb.0[k] - positions[i].0[k])
                    + cfg.c2 * r2 * (gb.0[k] - positions[i].0[k]);
                velocities[i][k] = v.clamp(-1.0, 1.0);
                positions[i].0[k] = reflect_into_unit(positions[i].0[k] + velocities[i][k]);
            }
            generated += 1;
            let e = evaluate(&mut cache, positions[i].clone(), &mut finds);
            if e.cost < personal_best[i].1 {
                personal_best[i] = (positions[i].clone(), e.cost);
            }
            if e.cost < global_best.as_ref().expect("seeded").1 {
                global_best = Some((positions[i].clone(), e.cost));
            }
        }
        trajectory.push(global_best.as_ref().expect("seeded").1);
    }

    tracker.alloc(cache.byte_size());
    finish(
        finds,
        cfg.max_iter,
        generated,
        cache.evaluations,
        tracker.peak(),
        cfg.seed,
        trajectory,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn sample() -> NumericDataset {
        NumericDataset::new(
            ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect(),
            vec![
                vec![5.0, 30.0, 43.0, 97.0],
                vec![4.0, 35.0, 33.0, 86.0],
                vec![3.0, 40.0, 42.0, 108.0],
                vec![1.0, 50.0, 49.0, 27.0],
            ],
        )
        .unwrap()
    }

    #[test]
    fn decode_threshold_arithmetic() {
        let p = decode(&PositionVector(vec![0.9, 0.1, 0.5]));
        assert_eq!(
            p,
            GradualPattern::new(vec![GradualItem::up(0), GradualItem::down(1)]).unwrap()
        );
    }

    #[test]
    fn decode_middle_band_excludes_everything() {
        let p = decode(&PositionVector(vec![0.5, 0.5, 0.5]));
        assert!(p.is_empty());
    }

    #[test]
    fn decode_constant_within_cells() {
        let a = decode(&PositionVector(vec![0.70, 0.10, 0.40]));
        let b = decode(&PositionVector(vec![0.99, 0.32, 0.65]));
        let c = decode(&PositionVector(vec![0.67, 0.01, 0.34]));
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn fitness_of_perfect_pattern_is_zero() {
        let d = sample();
        // decodes to {(a,+),(b,-)} with support 1.0
        let v = PositionVector(vec![0.9, 0.1, 0.5, 0.5]);
        let f = fitness(&d, &v, 0.5);
        assert_eq!(f.cost, 0.0);
    }

    #[test]
    fn empty_decode_costs_two() {
        let d = sample();
        let v = PositionVector(vec![0.5, 0.5, 0.5, 0.5]);
        assert_eq!(fitness(&d, &v, 0.5).cost, 2.0);
    }

    #[test]
    fn valid_costs_stay_below_invalid_costs() {
        let d = sample();
        let sigma = 0.5;
        let mut valid_max = f64::MIN;
        let mut invalid_min = f64::MAX;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let v = random_position(4, &mut rng);
            let pattern = decode(&v);
            let cost = fitness(&d, &v, sigma).cost;
            let support = if pattern.is_empty() {
                0.0
            } else {
                crate::oracle::bruteforce_support(&d, &pattern)
            };
            if pattern.len() >= 2 && support >= sigma {
                valid_max = valid_max.max(cost);
            } else {
                invalid_min = invalid_min.min(cost);
            }
        }
        assert!(valid_max < invalid_min);
    }

    #[test]
    fn offspring_count_boundaries() {
        let mut cfg = EvoConfig::new(0.5, 0);
        cfg.pop_size = 50;
        cfg.pc = 1.0;
        assert_eq!(cfg.offspring_count(), 50);
        cfg.pc = 0.5;
        assert_eq!(cfg.offspring_count(), 25);
    }

    #[test]
    fn ga_is_deterministic_and_sound() {
        let d = sample();
        let mut cfg = EvoConfig::new(0.5, 21);
        cfg.max_iter = 20;
        cfg.pop_size = 20;
        let a = mine_ga(&d, &cfg);
        let b = mine_ga(&d, &cfg);
        assert_eq!(a, b);
        assert!(a.candidates_evaluated <= a.candidates_generated);
        for sp in &a.patterns {
            assert!(crate::oracle::bruteforce_support(&d, &sp.pattern) >= 0.5);
        }
    }

    #[test]
    fn ga_best_cost_never_worsens() {
        let d = sample();
        let mut cfg = EvoConfig::new(0.5, 3);
        cfg.max_iter = 30;
        let res = mine_ga(&d, &cfg);
        for w in res.best_cost_trajectory.windows(2) {
            assert!(w[1] <= w[0]);
        }
    }

    #[test]
    fn pso_is_deterministic_and_sound() {
        let d = sample();
        let mut cfg = EvoConfig::new(0.5, 8);
        cfg.max_iter = 20;
        cfg.pop_size = 20;
        let a = mine_pso(&d, &cfg);
        let b = mine_pso(&d, &cfg);
        assert_eq!(a, b);
        for sp in &a.patterns {
            assert!(crate::oracle::bruteforce_support(&d, &sp.pattern) >= 0.5);
        }
    }

    #[test]
    fn pso_best_cost_never_worsens() {
        let d = sample();
        let mut cfg = EvoConfig::new(0.5, 4);
        cfg.max_iter = 30;
        let res = mine_pso(&d, &cfg);
        for w in res.best_cost_trajectory.windows(2) {
            assert!(w[1] <= w[0]);
        }
    }

    #[test]
    fn frozen_swarm_with_zero_coefficients() {
        let d = sample();
        let mut cfg = EvoConfig::new(0.5, 13);
        cfg.c1 = 0.0;
        cfg.c2 = 0.0;
        cfg.inertia = 0.0;
        cfg.max_iter = 10;
        let res = mine_pso(&d, &cfg);
        // zero velocity forever: the trajectory is flat
        let first = res.best_cost_trajectory[0];
        for &c in &res.best_cost_trajectory {
            assert_eq!(c, first);
        }
    }

    #[test]
    fn reflection_keeps_unit_interval() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10_000 {
            let x: f64 = rng.gen_range(-3.0..4.0);
            let r = reflect_into_unit(x);
            assert!((0.0..1.0).contains(&r), "{x} -> {r}");
        }
    }
}

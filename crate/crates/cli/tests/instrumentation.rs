//! Instrumentation cross-checks: the counters the benchmark harness reports
//! must agree with independent recounts.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gradmine_core::graank::{mine_graank, GraankConfig};
use gradmine_core::oracle::{bruteforce_support, enumerate_frequent};
use gradmine_core::pattern::{GradualItem, GradualPattern};
use gradmine_core::NumericDataset;

fn random_tie_free(n: usize, m: usize, rng: &mut ChaCha8Rng) -> NumericDataset {
    let names = (0..m).map(|i| format!("a{i}")).collect();
    let mut columns: Vec<Vec<f64>> = Vec::new();
    for _ in 0..m {
        let mut col: Vec<f64> = (0..n).map(|v| v as f64).collect();
        for i in (1..n).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            col.swap(i, j);
        }
        columns.push(col);
    }
    let rows = (0..n)
        .map(|r| (0..m).map(|c| columns[c][r]).collect())
        .collect();
    NumericDataset::new(names, rows).unwrap()
}

/// Counts the level-wise join candidates from scratch, walking the oracle's
/// frequent sets instead of the miner's levels.
fn recount_join_candidates(d: &NumericDataset, sigma: f64) -> u64 {
    // Level 1: an attribute participates when its singleton support (one
    // minus its tie mass) clears sigma; both orientations then survive.
    let frequent_attrs: Vec<usize> = (0..d.n_attrs())
        .filter(|&a| {
            let single = GradualPattern::new(vec![GradualItem::up(a)]).unwrap();
            bruteforce_support(d, &single) >= sigma
        })
        .collect();
    let f = frequent_attrs.len() as u64;
    let mut total = f * f.saturating_sub(1); // 2 * C(f, 2) canonical couples

    // Levels 3 and up: frequent canonical k-patterns sharing a (k-1)-prefix
    // join when their last attributes differ.
    let truth = enumerate_frequent(d, sigma, 12).unwrap();
    let mut by_size: std::collections::BTreeMap<usize, Vec<&GradualPattern>> =
        Default::default();
    for p in truth.frequent.keys() {
        by_size.entry(p.len()).or_default().push(p);
    }
    for (_, patterns) in by_size {
        for i in 0..patterns.len() {
            for j in (i + 1)..patterns.len() {
                let (p, q) = (patterns[i].items(), patterns[j].items());
                if p[..p.len() - 1] != q[..q.len() - 1] {
                    continue;
                }
                if p[p.len() - 1].attribute != q[q.len() - 1].attribute {
                    total += 1;
                }
            }
        }
    }
    total
}

#[test]
fn graank_candidate_counter_matches_independent_recount() {
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    for case in 0..20 {
        let n = 4 + (rng.next_u64() % 5) as usize;
        let m = 3 + (rng.next_u64() % 3) as usize;
        let d = random_tie_free(n, m, &mut rng);
        for sigma in [0.3, 0.5, 0.7] {
            let mined = mine_graank(&d, &GraankConfig::new(sigma)).unwrap();
            let expected = recount_join_candidates(&d, sigma);
            assert_eq!(
                mined.candidates_evaluated, expected,
                "case {case}, sigma {sigma}"
            );
            assert_eq!(mined.candidates_generated, mined.candidates_evaluated);
        }
    }
}

#[test]
fn tracked_memory_grows_with_row_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut last = 0;
    for n in [20, 60, 180] {
        let d = random_tie_free(n, 3, &mut rng);
        let res = mine_graank(&d, &GraankConfig::new(0.5)).unwrap();
        assert!(res.peak_tracked_bytes > last, "n {n}");
        last = res.peak_tracked_bytes;
    }
}

#[test]
fn concurrent_runs_share_the_dataset() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let d = std::sync::Arc::new(random_tie_free(12, 4, &mut rng));
    let sequential = mine_graank(&d, &GraankConfig::new(0.4)).unwrap();
    let handles: Vec<_> = (0..4)
        .map(|k| {
            let d = std::sync::Arc::clone(&d);
            std::thread::spawn(move || {
                let g = mine_graank(&d, &GraankConfig::new(0.4)).unwrap();
                let a = gradmine_core::aco::mine_aco_graank(
                    &d,
                    &gradmine_core::aco::AcoConfig::new(0.4, k),
                );
                (g, a)
            })
        })
        .collect();
    for h in handles {
        let (g, a) = h.join().unwrap();
        assert_eq!(g, sequential);
        for sp in &a.patterns {
            assert!(bruteforce_support(&d, &sp.pattern) >= 0.4);
        }
    }
}

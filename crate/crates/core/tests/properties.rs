//! Cross-cutting invariants checked over randomized small datasets.

use proptest::prelude::*;

use gradmine_core::aco::{
    build_cost_matrix, node_weights, AcoConfig, PheromoneMatrix3, PheromoneMatrixN,
};
use gradmine_core::graank::{mine_graank, GraankConfig};
use gradmine_core::oracle::{bruteforce_support, enumerate_frequent};
use gradmine_core::order::OrderMatrix;
use gradmine_core::pattern::{GradualItem, GradualPattern, Variation};
use gradmine_core::transactional::{encode_transactions, mine_paraminer, reduce_dataset};
use gradmine_core::NumericDataset;

/// Random dataset with integer-pool values (ties likely).
fn dataset_with_ties() -> impl Strategy<Value = NumericDataset> {
    (4usize..=8, 3usize..=5).prop_flat_map(|(n, m)| {
        proptest::collection::vec(proptest::collection::vec(0u8..12, m), n).prop_map(
            move |rows| {
                let names = (0..m).map(|i| format!("a{i}")).collect();
                let rows = rows
                    .into_iter()
                    .map(|r| r.into_iter().map(|v| v as f64).collect())
                    .collect();
                NumericDataset::new(names, rows).unwrap()
            },
        )
    })
}

/// Random tie-free dataset: every column is a shuffled permutation.
fn dataset_tie_free() -> impl Strategy<Value = NumericDataset> {
    (4usize..=8, 3usize..=5, any::<u64>()).prop_map(|(n, m, seed)| {
        let mut state = seed | 1;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let names = (0..m).map(|i| format!("a{i}")).collect();
        let mut columns: Vec<Vec<f64>> = Vec::new();
        for _ in 0..m {
            let mut col: Vec<f64> = (0..n).map(|v| v as f64).collect();
            for i in (1..n).rev() {
                let j = (next() % (i as u64 + 1)) as usize;
                col.swap(i, j);
            }
            columns.push(col);
        }
        let rows = (0..n)
            .map(|r| (0..m).map(|c| columns[c][r]).collect())
            .collect();
        NumericDataset::new(names, rows).unwrap()
    })
}

/// All canonical patterns with >= 2 items over m attributes.
fn all_canonical_patterns(m: usize) -> Vec<GradualPattern> {
    let mut out = Vec::new();
    let mut stack: Vec<(usize, GradualPattern)> = vec![(0, GradualPattern::empty())];
    while let Some((attr, p)) = stack.pop() {
        if attr == m {
            if p.len() >= 2 {
                out.push(p);
            }
            continue;
        }
        stack.push((attr + 1, p.clone()));
        let vs: &[Variation] = if p.is_empty() {
            &[Variation::Up]
        } else {
            &[Variation::Up, Variation::Down]
        };
        for &v in vs {
            stack.push((attr + 1, p.with_item(GradualItem::new(attr, v)).unwrap()));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Single tie-free item: exactly one direction holds per ordered couple.
    #[test]
    fn order_matrix_antisymmetry(d in dataset_tie_free()) {
        let m = OrderMatrix::for_item(&d, GradualItem::up(0)).unwrap();
        for x in 0..d.n_rows() {
            for y in (x + 1)..d.n_rows() {
                prop_assert!(m.get(x, y) ^ m.get(y, x));
            }
        }
    }

    /// AND-kernel support equals direct pair counting for every pattern.
    #[test]
    fn kernel_support_matches_bruteforce(d in dataset_with_ties()) {
        for p in all_canonical_patterns(d.n_attrs()) {
            let kernel = OrderMatrix::for_pattern(&d, &p).unwrap().support();
            let brute = bruteforce_support(&d, &p);
            prop_assert!((kernel - brute).abs() < 1e-12, "{p}: {kernel} vs {brute}");
        }
    }

    /// Support never grows when items are added.
    #[test]
    fn anti_monotonicity(d in dataset_with_ties()) {
        for q in all_canonical_patterns(d.n_attrs()) {
            let sq = bruteforce_support(&d, &q);
            for drop_idx in 0..q.len() {
                let items: Vec<_> = q
                    .items()
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != drop_idx)
                    .map(|(_, &i)| i)
                    .collect();
                if items.len() < 2 {
                    continue;
                }
                let p = GradualPattern::new(items).unwrap();
                prop_assert!(sq <= bruteforce_support(&d, &p) + 1e-15);
            }
        }
    }

    /// A pattern and its complement have the same support.
    #[test]
    fn complement_symmetry(d in dataset_with_ties()) {
        for p in all_canonical_patterns(d.n_attrs()) {
            let sp = bruteforce_support(&d, &p);
            let sc = bruteforce_support(&d, &p.complement());
            prop_assert_eq!(sp, sc);
        }
    }

    /// Level-wise mining reproduces the oracle exactly.
    #[test]
    fn graank_equals_oracle(d in dataset_with_ties(), sigma in 0.2f64..0.9) {
        let mined = mine_graank(&d, &GraankConfig::new(sigma)).unwrap();
        let truth = enumerate_frequent(&d, sigma, 12).unwrap();
        prop_assert_eq!(mined.patterns.len(), truth.frequent.len());
        for sp in &mined.patterns {
            let e = truth.frequent.get(&sp.pattern).unwrap();
            prop_assert!((e.support - sp.support).abs() < 1e-12);
        }
    }

    /// Depth-first mining reproduces the oracle's closed subset exactly, and
    /// its transactional supports agree with the bitmap kernel.
    #[test]
    fn paraminer_equals_oracle_closed(d in dataset_with_ties(), sigma in 0.2f64..0.9) {
        let mined = mine_paraminer(&d, sigma, 1_000_000).unwrap();
        let truth = enumerate_frequent(&d, sigma, 12).unwrap();
        let closed: Vec<_> = truth.closed_patterns().collect();
        prop_assert_eq!(mined.patterns.len(), closed.len());
        for (sp, (p, s)) in mined.patterns.iter().zip(closed) {
            prop_assert_eq!(&sp.pattern, p);
            prop_assert!((sp.support - s).abs() < 1e-12);
            let kernel = OrderMatrix::for_pattern(&d, &sp.pattern).unwrap().support();
            prop_assert!((sp.support - kernel).abs() < 1e-12);
        }
    }

    /// Every pattern an ant run emits really is frequent (zero tolerance).
    #[test]
    fn aco_runs_are_sound(d in dataset_with_ties(), seed in any::<u64>()) {
        let cfg = AcoConfig::new(0.5, seed);
        for sp in gradmine_core::aco::mine_aco_graank(&d, &cfg).patterns {
            prop_assert!(bruteforce_support(&d, &sp.pattern) >= 0.5);
        }
        for sp in gradmine_core::aco::mine_aco_paraminer(&d, &cfg).patterns {
            prop_assert!(bruteforce_support(&d, &sp.pattern) >= 0.5);
        }
    }

    /// Draw-probability rows and couple weights normalize to 1.
    #[test]
    fn sampler_weights_normalize(
        d in dataset_with_ties(),
        rows in proptest::collection::vec((1.0f64..50.0, 1.0f64..50.0, 1.0f64..50.0), 2..6),
    ) {
        let mut m = PheromoneMatrix3::new(rows.len(), 1.0, 1e6);
        for (attr, (a, b, c)) in rows.iter().enumerate() {
            m.set_row_raw(attr, [*a, *b, *c]);
        }
        for attr in 0..rows.len() {
            let p = m.probabilities(attr, 1.0);
            let sum: f64 = p.iter().sum();
            prop_assert!((sum - 1.0).abs() < 1e-12);
        }
        let reduced = reduce_dataset(&encode_transactions(&d), 2);
        let costs = build_cost_matrix(&reduced);
        let ph = PheromoneMatrixN::new(d.n_rows(), 1.0, 1e6);
        let w = node_weights(&ph, &costs, 1.0);
        let sum: f64 = w.iter().sum();
        prop_assert!((sum - 1.0).abs() < 1e-12);
    }
}

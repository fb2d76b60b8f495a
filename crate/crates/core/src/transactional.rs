//! Transactional pair encoding, dataset reduction, and the depth-first
//! closed-pattern miner.
//!
//! Every unordered row couple becomes one transaction listing the gradual
//! items that couple respects, oriented by canonical row order `i < j`. A
//! pattern's supporting couples split into the forward set (the pattern
//! holds i -> j) and the backward set (its complement does); their disjoint
//! union is exactly the popcount of the pattern's order matrix, which keeps
//! transactional and bitmap supports in agreement.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::dataset::NumericDataset;
use crate::pattern::{GradualItem, GradualPattern, SupportedPattern, Variation};
use crate::result::MiningResult;
use crate::track::{vec_bytes, MemTracker};

/// Index of couple `(i, j)`, `i < j`, in row-major couple order.
pub fn pair_index(i: usize, j: usize, n: usize) -> u32 {
    debug_assert!(i < j && j < n);
    (i * (2 * n - i - 1) / 2 + (j - i - 1)) as u32
}

/// Inverse of [`pair_index`].
pub fn pair_rows(idx: u32, n: usize) -> (usize, usize) {
    let mut idx = idx as usize;
    for i in 0..n {
        let row_pairs = n - i - 1;
        if idx < row_pairs {
            return (i, i + 1 + idx);
        }
        idx -= row_pairs;
    }
    unreachable!("pair index out of range")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transaction {
    /// Row couple `(i, j)` with `i < j`.
    pub rows: (u32, u32),
    /// Items the couple respects; at most one per attribute, ties omitted.
    pub items: Vec<GradualItem>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransactionalDataset {
    pub n_rows: usize,
    pub transactions: Vec<Transaction>,
    /// Sorted tid list per gradual item, including empty lists.
    pub items_to_tids: BTreeMap<GradualItem, Vec<u32>>,
}

impl TransactionalDataset {
    pub fn tids_of(&self, item: GradualItem) -> &[u32] {
        self.items_to_tids.get(&item).map_or(&[], |v| v.as_slice())
    }

    /// Tracked bytes of the encoding (transactions plus tid lists).
    pub fn byte_size(&self) -> u64 {
        let mut total = vec_bytes(&self.transactions);
        for t in &self.transactions {
            total += vec_bytes(&t.items) + core::mem::size_of_val(&t.rows) as u64;
        }
        for tids in self.items_to_tids.values() {
            total += vec_bytes(tids) + core::mem::size_of::<GradualItem>() as u64;
        }
        total
    }
}

/// One transaction per unordered row couple; `(a, Down)` is in `t(ri, rj)`
/// iff `a(ri) > a(rj)`.
pub fn encode_transactions(d: &NumericDataset) -> TransactionalDataset {
    let n = d.n_rows();
    let m = d.n_attrs();
    let mut transactions = Vec::with_capacity(d.pair_count());
    let mut items_to_tids: BTreeMap<GradualItem, Vec<u32>> = BTreeMap::new();
    for attr in 0..m {
        items_to_tids.insert(GradualItem::up(attr), Vec::new());
        items_to_tids.insert(GradualItem::down(attr), Vec::new());
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let tid = pair_index(i, j, n);
            let mut items = Vec::with_capacity(m);
            for attr in 0..m {
                let vi = d.value(i, attr);
                let vj = d.value(j, attr);
                let item = if vi < vj {
                    GradualItem::up(attr)
                } else if vi > vj {
                    GradualItem::down(attr)
                } else {
                    continue;
                };
                items.push(item);
                items_to_tids.get_mut(&item).expect("prefilled").push(tid);
            }
            transactions.push(Transaction { rows: (i as u32, j as u32), items });
        }
    }
    TransactionalDataset { n_rows: n, transactions, items_to_tids }
}

/// Transactions with identical itemsets merged under one weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TidGroup {
    pub tids: Vec<u32>,
    pub weight: usize,
    pub items: Vec<GradualItem>,
}

/// The reduced encoding: grouped transactions and only the items whose tid
/// list reaches the minimum length.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedDataset {
    pub n_rows: usize,
    pub min_tid_len: usize,
    pub groups: Vec<TidGroup>,
    pub items_to_tids: BTreeMap<GradualItem, Vec<u32>>,
}

impl ReducedDataset {
    pub fn byte_size(&self) -> u64 {
        let mut total = vec_bytes(&self.groups);
        for g in &self.groups {
            total += vec_bytes(&g.tids) + vec_bytes(&g.items);
        }
        for tids in self.items_to_tids.values() {
            total += vec_bytes(tids) + core::mem::size_of::<GradualItem>() as u64;
        }
        total
    }
}

/// Groups identical itemsets (recording their weight) and drops items whose
/// tid list is shorter than `min_len`.
pub fn reduce_dataset(t: &TransactionalDataset, min_len: usize) -> ReducedDataset {
    let mut by_items: BTreeMap<Vec<GradualItem>, Vec<u32>> = BTreeMap::new();
    for tr in &t.transactions {
        by_items
            .entry(tr.items.clone())
            .or_default()
            .push(pair_index(tr.rows.0 as usize, tr.rows.1 as usize, t.n_rows));
    }
    let groups = by_items
        .into_iter()
        .map(|(items, tids)| TidGroup { weight: tids.len(), tids, items })
        .collect();
    let items_to_tids = t
        .items_to_tids
        .iter()
        .filter(|(_, tids)| tids.len() >= min_len)
        .map(|(item, tids)| (*item, tids.clone()))
        .collect();
    ReducedDataset { n_rows: t.n_rows, min_tid_len: min_len, groups, items_to_tids }
}

/// Smallest couple count whose pair-ratio support clears `sigma` under f64
/// comparison, so all miners agree on boundary supports.
pub fn min_tid_len_for(sigma: f64, pair_count: usize) -> usize {
    let pairs = pair_count as f64;
    let mut c = libm::ceil(sigma * pairs - 1e-9) as usize;
    c = c.max(1);
    while c > 1 && (c - 1) as f64 / pairs >= sigma {
        c -= 1;
    }
    while (c as f64) / pairs < sigma {
        c += 1;
    }
    c
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParaminerError {
    SigmaOutOfRange(f64),
    /// The closure-search budget ran out.
    WorkLimitExceeded { limit: u64 },
}

impl fmt::Display for ParaminerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParaminerError::SigmaOutOfRange(s) => {
                write!(f, "minimum support must lie in (0, 1], got {s}")
            }
            ParaminerError::WorkLimitExceeded { limit } => {
                write!(f, "closed-pattern search exceeded its work limit of {limit}")
            }
        }
    }
}

/// Oriented item with its forward tid list and its complement's.
struct ItemEntry {
    item: GradualItem,
    fwd: Vec<u32>,
    bwd: Vec<u32>,
}

struct SearchCtx<'a> {
    items: &'a [ItemEntry],
    min_len: usize,
    pairs: f64,
    work_limit: u64,
    work: u64,
    generated: u64,
    evaluated: u64,
    out: Vec<SupportedPattern>,
    tracker: MemTracker,
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut x, mut y) = (0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            core::cmp::Ordering::Less => x += 1,
            core::cmp::Ordering::Greater => y += 1,
            core::cmp::Ordering::Equal => {
                out.push(a[x]);
                x += 1;
                y += 1;
            }
        }
    }
    out
}

fn is_sorted_subset(sub: &[u32], sup: &[u32]) -> bool {
    let mut y = 0;
    for &v in sub {
        while y < sup.len() && sup[y] < v {
            y += 1;
        }
        if y >= sup.len() || sup[y] != v {
            return false;
        }
        y += 1;
    }
    true
}

/// Items whose addition keeps both tid sets unchanged — the closure.
fn closure(ctx: &SearchCtx<'_>, fwd: &[u32], bwd: &[u32]) -> Vec<usize> {
    let mut attrs_done: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    for (id, entry) in ctx.items.iter().enumerate() {
        if attrs_done.contains(&entry.item.attribute) {
            continue;
        }
        if is_sorted_subset(fwd, &entry.fwd) && is_sorted_subset(bwd, &entry.bwd) {
            out.push(id);
            attrs_done.push(entry.item.attribute);
        }
    }
    out
}

fn expand(
    ctx: &mut SearchCtx<'_>,
    pattern_ids: &[usize],
    fwd: &[u32],
    bwd: &[u32],
    next_id: usize,
) -> Result<(), ParaminerError> {
    if pattern_ids.len() >= 2 {
        let pattern = GradualPattern::new(
            pattern_ids.iter().map(|&id| ctx.items[id].item).collect(),
        )
        .expect("closure keeps one item per attribute");
        if pattern.is_canonical() {
            let support = (fwd.len() + bwd.len()) as f64 / ctx.pairs;
            ctx.out.push(SupportedPattern { pattern, support });
        }
    }
    for e in next_id..ctx.items.len() {
        let entry = &ctx.items[e];
        if pattern_ids
            .iter()
            .any(|&id| ctx.items[id].item.attribute == entry.item.attribute)
        {
            continue;
        }
        ctx.work += 1;
        if ctx.work > ctx.work_limit {
            return Err(ParaminerError::WorkLimitExceeded { limit: ctx.work_limit });
        }
        let f2 = intersect_sorted(fwd, &entry.fwd);
        let b2 = intersect_sorted(bwd, &entry.bwd);
        ctx.generated += 1;
        ctx.evaluated += 1;
        if f2.len() + b2.len() < ctx.min_len {
            continue;
        }
        let q = closure(ctx, &f2, &b2);
        // Prefix-preserving check: the closure may not introduce items below
        // the extension point that the parent did not already carry.
        if q.iter().any(|&id| id < e && !pattern_ids.contains(&id)) {
            continue;
        }
        let state_bytes = vec_bytes(&f2) + vec_bytes(&b2);
        ctx.tracker.alloc(state_bytes);
        let r = expand(ctx, &q, &f2, &b2, e + 1);
        ctx.tracker.free(state_bytes);
        r?;
    }
    Ok(())
}

/// Mines every frequent closed canonical pattern with at least two items.
///
/// Closed means no strict item-superset shares the same supporting couples.
/// Deterministic; the recursion depth is bounded by the attribute count.
pub fn mine_paraminer(
    d: &NumericDataset,
    sigma: f64,
    work_limit: u64,
) -> Result<MiningResult, ParaminerError> {
    if !(sigma > 0.0 && sigma <= 1.0) {
        return Err(ParaminerError::SigmaOutOfRange(sigma));
    }
    let pairs = d.pair_count();
    let min_len = min_tid_len_for(sigma, pairs);

    let mut tracker = MemTracker::new();
    let encoded = encode_transactions(d);
    tracker.alloc(encoded.byte_size());
    let reduced = reduce_dataset(&encoded, min_len);
    tracker.alloc(reduced.byte_size());

    // An attribute can only appear in a frequent pattern when its two
    // orientations jointly cover at least min_len couples.
    let mut items: Vec<ItemEntry> = Vec::new();
    for attr in 0..d.n_attrs() {
        let up = encoded.tids_of(GradualItem::up(attr));
        let down = encoded.tids_of(GradualItem::down(attr));
        if up.len() + down.len() < min_len {
            continue;
        }
        for v in [Variation::Up, Variation::Down] {
            let item = GradualItem::new(attr, v);
            items.push(ItemEntry {
                item,
                fwd: encoded.tids_of(item).to_vec(),
                bwd: encoded.tids_of(item.complement()).to_vec(),
            });
        }
    }
    for e in &items {
        tracker.alloc(vec_bytes(&e.fwd) + vec_bytes(&e.bwd));
    }

    let all: Vec<u32> = (0..pairs as u32).collect();
    let mut ctx = SearchCtx {
        items: &items,
        min_len,
        pairs: pairs as f64,
        work_limit,
        work: 0,
        generated: 0,
        evaluated: 0,
        out: Vec::new(),
        tracker,
    };
    expand(&mut ctx, &[], &all, &all, 0)?;

    let mut patterns = ctx.out;
    patterns.sort_by(|a, b| a.pattern.cmp(&b.pattern));
    patterns.dedup_by(|a, b| a.pattern == b.pattern);
    Ok(MiningResult {
        patterns,
        iterations: ctx.work,
        candidates_generated: ctx.generated,
        candidates_evaluated: ctx.evaluated,
        peak_tracked_bytes: ctx.tracker.peak(),
        seed: 0,
        best_cost_trajectory: Vec::new(),
    })
}

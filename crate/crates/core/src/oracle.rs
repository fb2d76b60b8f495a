//! Brute-force ground truth for small instances.
//!
//! Supports here are computed by direct nested-loop pair iteration and
//! deliberately share nothing with the bitmap kernel in [`crate::order`];
//! the point of this module is to catch kernel bugs.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::dataset::NumericDataset;
use crate::pattern::{GradualItem, GradualPattern, Variation};

/// Brute-force enumeration output: every frequent canonical pattern with its
/// support and a closedness flag.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub frequent: BTreeMap<GradualPattern, OracleEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleEntry {
    pub support: f64,
    pub closed: bool,
}

impl OracleResult {
    pub fn support_of(&self, p: &GradualPattern) -> Option<f64> {
        self.frequent.get(&p.canonicalize()).map(|e| e.support)
    }

    pub fn closed_patterns(&self) -> impl Iterator<Item = (&GradualPattern, f64)> {
        self.frequent
            .iter()
            .filter(|(_, e)| e.closed)
            .map(|(p, e)| (p, e.support))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    /// The 3^m search space would be too large to enumerate.
    TooManyAttributes { attrs: usize, max: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TooManyAttributes { attrs, max } => {
                write!(f, "oracle guard: {attrs} attributes exceeds maximum {max}")
            }
        }
    }
}

/// Does `pattern` hold from row `x` to row `y`, item by item?
fn holds_directed(d: &NumericDataset, pattern: &GradualPattern, x: usize, y: usize) -> bool {
    pattern.items().iter().all(|item| {
        let vx = d.value(x, item.attribute);
        let vy = d.value(y, item.attribute);
        match item.variation {
            Variation::Up => vx < vy,
            Variation::Down => vx > vy,
        }
    })
}

/// The unordered row couples respecting the pattern in either direction,
/// encoded as pair indices in row-major couple order.
fn supporting_pairs(d: &NumericDataset, pattern: &GradualPattern) -> Vec<u32> {
    let n = d.n_rows();
    let mut pairs = Vec::new();
    let mut pair_idx = 0u32;
    for x in 0..n {
        for y in (x + 1)..n {
            if holds_directed(d, pattern, x, y) || holds_directed(d, pattern, y, x) {
                pairs.push(pair_idx);
            }
            pair_idx += 1;
        }
    }
    pairs
}

/// Pair-ratio support by direct counting.
pub fn bruteforce_support(d: &NumericDataset, pattern: &GradualPattern) -> f64 {
    supporting_pairs(d, pattern).len() as f64 / d.pair_count() as f64
}

/// Enumerates every frequent canonical pattern with `2 <= |items| <= m` by
/// direct pair counting, and marks those whose supporting-pair set strictly
/// shrinks under every one-item extension as closed.
pub fn enumerate_frequent(
    d: &NumericDataset,
    sigma: f64,
    max_attrs: usize,
) -> Result<OracleResult, OracleError> {
    let m = d.n_attrs();
    if m > max_attrs {
        return Err(OracleError::TooManyAttributes { attrs: m, max: max_attrs });
    }
    let couples = d.pair_count() as f64;

    let mut frequent = BTreeMap::new();
    let mut stack: Vec<(usize, GradualPattern)> = Vec::new();
    stack.push((0, GradualPattern::empty()));
    // Depth-first walk over canonical variation assignments: each attribute is
    // Up, Down or excluded, and the first included attribute is pinned Up.
    while let Some((attr, partial)) = stack.pop() {
        if attr == m {
            if partial.len() < 2 {
                continue;
            }
            let pairs = supporting_pairs(d, &partial);
            let support = pairs.len() as f64 / couples;
            if support >= sigma {
                let closed = is_closed(d, &partial, &pairs);
                frequent.insert(partial, OracleEntry { support, closed });
            }
            continue;
        }
        stack.push((attr + 1, partial.clone()));
        let variations: &[Variation] = if partial.is_empty() {
            &[Variation::Up]
        } else {
            &[Variation::Up, Variation::Down]
        };
        for &v in variations {
            let ext = partial.with_item(GradualItem::new(attr, v)).unwrap();
            stack.push((attr + 1, ext));
        }
    }
    Ok(OracleResult { frequent })
}

fn is_closed(d: &NumericDataset, pattern: &GradualPattern, pairs: &[u32]) -> bool {
    for attr in 0..d.n_attrs() {
        if pattern.contains_attribute(attr) {
            continue;
        }
        for v in [Variation::Up, Variation::Down] {
            let ext = pattern.with_item(GradualItem::new(attr, v)).unwrap();
            if supporting_pairs(d, &ext) == pairs {
                return false;
            }
        }
    }
    true
}

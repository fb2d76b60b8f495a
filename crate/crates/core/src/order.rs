//! Binary matrices of tuple orders — the support kernel every miner shares.
//!
//! Entry `(x, x')` of an item's matrix is 1 iff the item's variation holds
//! from row `x` to row `x'`. A pattern's matrix is the bitwise AND of its
//! items' matrices; its support is the popcount over `n(n-1)/2` couples.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::dataset::NumericDataset;
use crate::pattern::{GradualItem, GradualPattern, Variation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderError {
    AttributeOutOfRange { attribute: usize, attrs: usize },
    DimensionMismatch { left: usize, right: usize },
}

impl fmt::Display for OrderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderError::AttributeOutOfRange { attribute, attrs } => {
                write!(f, "attribute {attribute} out of range for {attrs} attributes")
            }
            OrderError::DimensionMismatch { left, right } => {
                write!(f, "order matrix dimension mismatch: {left} vs {right}")
            }
        }
    }
}

/// Dense `n x n` bit matrix, rows packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderMatrix {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl OrderMatrix {
    pub fn zeros(n: usize) -> Self {
        let words_per_row = n.div_ceil(64);
        OrderMatrix {
            n,
            words_per_row,
            bits: vec![0u64; n * words_per_row],
        }
    }

    /// All off-diagonal entries set; the AND identity for `n x n` matrices.
    pub fn all_ones(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for x in 0..n {
            for y in 0..n {
                if x != y {
                    m.set(x, y);
                }
            }
        }
        m
    }

    /// Builds the order matrix of a single gradual item: entry `(x, x')` is
    /// 1 iff the attribute strictly increases (`Up`) or strictly decreases
    /// (`Down`) from row `x` to row `x'`. Ties set neither direction.
    pub fn for_item(d: &NumericDataset, item: GradualItem) -> Result<Self, OrderError> {
        if item.attribute >= d.n_attrs() {
            return Err(OrderError::AttributeOutOfRange {
                attribute: item.attribute,
                attrs: d.n_attrs(),
            });
        }
        let n = d.n_rows();
        let mut m = Self::zeros(n);
        for x in 0..n {
            let vx = d.value(x, item.attribute);
            for y in 0..n {
                if x == y {
                    continue;
                }
                let vy = d.value(y, item.attribute);
                let holds = match item.variation {
                    Variation::Up => vx < vy,
                    Variation::Down => vx > vy,
                };
                if holds {
                    m.set(x, y);
                }
            }
        }
        Ok(m)
    }

    /// AND of all item matrices of `pattern` (all-ones for the empty one).
    pub fn for_pattern(
        d: &NumericDataset,
        pattern: &GradualPattern,
    ) -> Result<Self, OrderError> {
        let mut acc = Self::all_ones(d.n_rows());
        for &item in pattern.items() {
            let m = Self::for_item(d, item)?;
            acc.and_assign(&m)?;
        }
        Ok(acc)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        let w = x * self.words_per_row + y / 64;
        self.bits[w] >> (y % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize) {
        let w = x * self.words_per_row + y / 64;
        self.bits[w] |= 1u64 << (y % 64);
    }

    /// Elementwise conjunction.
    pub fn and(&self, other: &OrderMatrix) -> Result<OrderMatrix, OrderError> {
        let mut out = self.clone();
        out.and_assign(other)?;
        Ok(out)
    }

    pub fn and_assign(&mut self, other: &OrderMatrix) -> Result<(), OrderError> {
        if self.n != other.n {
            return Err(OrderError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        for (w, &o) in self.bits.iter_mut().zip(other.bits.iter()) {
            *w &= o;
        }
        Ok(())
    }

    pub fn count_ones(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Support per the pair-ratio convention: `ones / (n(n-1)/2)`.
    pub fn support(&self) -> f64 {
        let couples = (self.n * (self.n - 1) / 2) as f64;
        self.count_ones() as f64 / couples
    }

    /// Heap bytes held by the packed bit grid; the memory-tracking unit.
    pub fn byte_size(&self) -> u64 {
        (self.bits.len() * core::mem::size_of::<u64>()) as u64
    }
}

/// Support of a matrix over `n` rows: `ones / (n(n-1)/2)`.
pub fn support_of(matrix: &OrderMatrix, n_rows: usize) -> f64 {
    debug_assert!(n_rows >= 2);
    matrix.count_ones() as f64 / (n_rows * (n_rows - 1) / 2) as f64
}

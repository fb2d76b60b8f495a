//! Gradual items, gradual patterns and their canonical form.

use alloc::vec::Vec;
use core::fmt;
use serde::{Deserialize, Serialize};

/// Direction an attribute takes in a gradual item.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub enum Variation {
    Up,
    Down,
}

impl Variation {
    pub fn flipped(self) -> Self {
        match self {
            Variation::Up => Variation::Down,
            Variation::Down => Variation::Up,
        }
    }
}

impl fmt::Display for Variation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variation::Up => write!(f, "+"),
            Variation::Down => write!(f, "-"),
        }
    }
}

/// One `(attribute, variation)` pair, e.g. "the more attribute 3".
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct GradualItem {
    pub attribute: usize,
    pub variation: Variation,
}

impl GradualItem {
    pub fn new(attribute: usize, variation: Variation) -> Self {
        GradualItem { attribute, variation }
    }

    pub fn up(attribute: usize) -> Self {
        Self::new(attribute, Variation::Up)
    }

    pub fn down(attribute: usize) -> Self {
        Self::new(attribute, Variation::Down)
    }

    pub fn complement(self) -> Self {
        GradualItem::new(self.attribute, self.variation.flipped())
    }
}

impl fmt::Display for GradualItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.attribute, self.variation)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternError {
    /// Same attribute twice: it cannot be both increasing and decreasing.
    DuplicateAttribute(usize),
}

impl fmt::Display for PatternError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternError::DuplicateAttribute(a) => {
                write!(f, "attribute {a} appears more than once in the pattern")
            }
        }
    }
}

/// A set of gradual items over distinct attributes, kept sorted by attribute.
///
/// Every pattern has a complement (all variations flipped) with equal
/// support; [`GradualPattern::canonicalize`] picks the representative whose
/// first item is `Up` so each complement pair is counted once.
#[derive(
    Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
pub struct GradualPattern {
    items: Vec<GradualItem>,
}

impl GradualPattern {
    /// Builds a pattern from items, sorting by attribute and rejecting
    /// duplicate attributes.
    pub fn new(mut items: Vec<GradualItem>) -> Result<Self, PatternError> {
        items.sort();
        for w in items.windows(2) {
            if w[0].attribute == w[1].attribute {
                return Err(PatternError::DuplicateAttribute(w[0].attribute));
            }
        }
        Ok(GradualPattern { items })
    }

    pub fn empty() -> Self {
        GradualPattern { items: Vec::new() }
    }

    pub fn items(&self) -> &[GradualItem] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Every variation flipped.
    pub fn complement(&self) -> Self {
        GradualPattern {
            items: self.items.iter().map(|i| i.complement()).collect(),
        }
    }

    /// The complement-deduplicated representative: items sorted by attribute
    /// and, if the first item's variation is `Down`, all variations flipped.
    /// Idempotent, and constant on `{p, complement(p)}`.
    pub fn canonicalize(&self) -> Self {
        match self.items.first() {
            Some(first) if first.variation == Variation::Down => self.complement(),
            _ => self.clone(),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.items
            .first()
            .is_none_or(|i| i.variation == Variation::Up)
    }

    pub fn contains_item(&self, item: GradualItem) -> bool {
        self.items
            .binary_search_by(|probe| probe.attribute.cmp(&item.attribute))
            .is_ok_and(|idx| self.items[idx].variation == item.variation)
    }

    pub fn contains_attribute(&self, attr: usize) -> bool {
        self.items
            .binary_search_by(|probe| probe.attribute.cmp(&attr))
            .is_ok()
    }

    /// Item-wise subset test (same orientations).
    pub fn is_subset_of(&self, other: &GradualPattern) -> bool {
        self.items.iter().all(|&i| other.contains_item(i))
    }

    /// True when `other` (or its complement) is a subset of `self`.
    ///
    /// Complement pairs describe the same correlation, so superset checks
    /// between canonical representatives must look at both orientations.
    pub fn has_class_subset(&self, other: &GradualPattern) -> bool {
        other.is_subset_of(self) || other.complement().is_subset_of(self)
    }

    /// Pattern extended by one item; `None` if the attribute is taken.
    pub fn with_item(&self, item: GradualItem) -> Option<Self> {
        if self.contains_attribute(item.attribute) {
            return None;
        }
        let mut items = self.items.clone();
        let pos = items.partition_point(|i| i.attribute < item.attribute);
        items.insert(pos, item);
        Some(GradualPattern { items })
    }
}

impl fmt::Display for GradualPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, item) in self.items.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{item}")?;
        }
        write!(f, "}}")
    }
}

/// A pattern together with its measured frequency support.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportedPattern {
    pub pattern: GradualPattern,
    pub support: f64,
}

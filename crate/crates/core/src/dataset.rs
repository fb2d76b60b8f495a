//! The numeric data set all miners operate on.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A titled numeric table: `n` rows over `m` attributes, every cell finite.
///
/// Immutable after construction; miners share it freely across runs.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericDataset {
    attribute_names: Vec<String>,
    /// Row-major `n * m` cell grid.
    values: Vec<f64>,
    rows: usize,
    attrs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DatasetError {
    /// Fewer than 2 rows: there is nothing to order.
    TooFewRows(usize),
    /// Fewer than 2 attributes: there is nothing to correlate.
    TooFewAttributes(usize),
    /// A row's length does not match the header.
    RaggedRow { row: usize, expected: usize, got: usize },
    /// NaN or infinite cell.
    NonFiniteValue { row: usize, attr: usize },
    /// Header length does not match the value grid.
    NameCountMismatch { names: usize, attrs: usize },
}

impl fmt::Display for DatasetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DatasetError::TooFewRows(n) => write!(f, "n >= 2 required, got {n} data rows"),
            DatasetError::TooFewAttributes(m) => {
                write!(f, "m >= 2 required, got {m} usable columns")
            }
            DatasetError::RaggedRow { row, expected, got } => {
                write!(f, "row {row} has {got} fields, expected {expected}")
            }
            DatasetError::NonFiniteValue { row, attr } => {
                write!(f, "non-finite value at row {row}, attribute {attr}")
            }
            DatasetError::NameCountMismatch { names, attrs } => {
                write!(f, "{names} attribute names for {attrs} columns")
            }
        }
    }
}

impl NumericDataset {
    /// Builds a dataset from a header and row-major cell rows.
    pub fn new(
        attribute_names: Vec<String>,
        rows: Vec<Vec<f64>>,
    ) -> Result<Self, DatasetError> {
        if rows.len() < 2 {
            return Err(DatasetError::TooFewRows(rows.len()));
        }
        let attrs = attribute_names.len();
        if attrs < 2 {
            return Err(DatasetError::TooFewAttributes(attrs));
        }
        let mut values = Vec::with_capacity(rows.len() * attrs);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != attrs {
                return Err(DatasetError::RaggedRow {
                    row: r,
                    expected: attrs,
                    got: row.len(),
                });
            }
            for (a, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(DatasetError::NonFiniteValue { row: r, attr: a });
                }
                values.push(v);
            }
        }
        Ok(NumericDataset {
            attribute_names,
            values,
            rows: rows.len(),
            attrs,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_attrs(&self) -> usize {
        self.attrs
    }

    /// Number of unordered row couples, `n(n-1)/2` — the support denominator.
    pub fn pair_count(&self) -> usize {
        self.rows * (self.rows - 1) / 2
    }

    #[inline]
    pub fn value(&self, row: usize, attr: usize) -> f64 {
        self.values[row * self.attrs + attr]
    }

    pub fn attribute_name(&self, attr: usize) -> &str {
        &self.attribute_names[attr]
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.attribute_names
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attribute_names.iter().position(|n| n == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn names(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn rejects_single_row() {
        let err = NumericDataset::new(names(&["a", "b"]), vec![vec![1.0, 2.0]]).unwrap_err();
        assert_eq!(err, DatasetError::TooFewRows(1));
    }

    #[test]
    fn rejects_single_attribute() {
        let err =
            NumericDataset::new(names(&["a"]), vec![vec![1.0], vec![2.0]]).unwrap_err();
        assert_eq!(err, DatasetError::TooFewAttributes(1));
    }

    #[test]
    fn rejects_non_finite() {
        let err = NumericDataset::new(
            names(&["a", "b"]),
            vec![vec![1.0, 2.0], vec![f64::NAN, 3.0]],
        )
        .unwrap_err();
        assert_eq!(err, DatasetError::NonFiniteValue { row: 1, attr: 0 });
    }

    #[test]
    fn indexes_cells_and_names() {
        let d = NumericDataset::new(
            names(&["x", "y"]),
            vec![vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 6.0]],
        )
        .unwrap();
        assert_eq!(d.n_rows(), 3);
        assert_eq!(d.n_attrs(), 2);
        assert_eq!(d.pair_count(), 3);
        assert_eq!(d.value(1, 1), 4.0);
        assert_eq!(d.attribute_index("y"), Some(1));
        assert_eq!(d.attribute_name(0), "x");
    }
}

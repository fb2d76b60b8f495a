//! CSV ingestion: UTF-8, comma-separated, first row a header, optionally a
//! leading id column. Non-numeric cells are rejected outright rather than
//! coerced or dropped.

use std::path::Path;

use gradmine_core::dataset::DatasetError;
use gradmine_core::NumericDataset;

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed CSV in {path}: {source}")]
    Csv {
        path: String,
        #[source]
        source: csv::Error,
    },
    #[error("no data rows in {path}")]
    NoDataRows { path: String },
    #[error("non-numeric cell '{value}' at data row {row}, column '{column}'")]
    NonNumericCell { row: usize, column: String, value: String },
    #[error("{0}")]
    Shape(DatasetError),
}

/// Loads a numeric dataset; `has_id_column` drops the first field of every
/// record (and of the header).
pub fn load_csv(path: &Path, has_id_column: bool) -> Result<NumericDataset, LoadError> {
    let display = path.display().to_string();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => LoadError::Io {
                path: display.clone(),
                source: std::io::Error::new(std::io::ErrorKind::NotFound, e.to_string()),
            },
            _ => LoadError::Csv { path: display.clone(), source: e },
        })?;

    let skip = usize::from(has_id_column);
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| LoadError::Csv { path: display.clone(), source: e })?
        .iter()
        .skip(skip)
        .map(str::to_owned)
        .collect();

    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (r, record) in reader.records().enumerate() {
        let record = record.map_err(|e| LoadError::Csv { path: display.clone(), source: e })?;
        let mut row = Vec::with_capacity(header.len());
        for (c, field) in record.iter().skip(skip).enumerate() {
            let v: f64 = field.parse().map_err(|_| LoadError::NonNumericCell {
                row: r,
                column: header.get(c).cloned().unwrap_or_else(|| format!("#{c}")),
                value: field.to_owned(),
            })?;
            row.push(v);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(LoadError::NoDataRows { path: display });
    }
    NumericDataset::new(header, rows).map_err(LoadError::Shape)
}

//! Benchmark report model and its JSON/CSV emission.
//!
//! One cell per (dataset, algorithm, sigma) holding the raw per-run rows and
//! the aggregates recomputable from them. Emission is byte-stable for a
//! fixed report, and `parse(emit(r)) == r` for JSON.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::experiment::Algorithm;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub seed: u64,
    pub wall_time_secs: f64,
    pub pattern_count: u64,
    pub peak_tracked_bytes: u64,
    pub iterations: u64,
    pub candidates_generated: u64,
    pub candidates_evaluated: u64,
}

/// Aggregate columns in the run-time / pattern-count / memory group order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregates {
    pub std_dev_runtime: f64,
    pub best_runtime: f64,
    pub mean_runtime: f64,
    pub worst_runtime: f64,
    pub std_dev_patterns: f64,
    pub fewest_patterns: u64,
    pub mean_patterns: f64,
    pub most_patterns: u64,
    pub std_dev_mem: f64,
    pub min_mem: u64,
    pub mean_mem: f64,
    pub max_mem: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub dataset: String,
    pub algorithm: Algorithm,
    pub sigma: f64,
    pub runs: Vec<RunRecord>,
    pub aggregates: Option<Aggregates>,
    /// Set when the cell failed (resource guard, unreadable input); failed
    /// cells never abort the rest of the matrix.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Report {
    pub cells: Vec<CellReport>,
}

/// Sample standard deviation; 0 for fewer than two observations.
fn std_dev(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>()
        / (values.len() - 1) as f64;
    var.sqrt()
}

pub fn aggregate(runs: &[RunRecord]) -> Option<Aggregates> {
    if runs.is_empty() {
        return None;
    }
    let times: Vec<f64> = runs.iter().map(|r| r.wall_time_secs).collect();
    let patterns: Vec<f64> = runs.iter().map(|r| r.pattern_count as f64).collect();
    let mem: Vec<f64> = runs.iter().map(|r| r.peak_tracked_bytes as f64).collect();
    Some(Aggregates {
        std_dev_runtime: std_dev(&times),
        best_runtime: times.iter().copied().fold(f64::INFINITY, f64::min),
        mean_runtime: times.iter().sum::<f64>() / times.len() as f64,
        worst_runtime: times.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        std_dev_patterns: std_dev(&patterns),
        fewest_patterns: runs.iter().map(|r| r.pattern_count).min().unwrap_or(0),
        mean_patterns: patterns.iter().sum::<f64>() / patterns.len() as f64,
        most_patterns: runs.iter().map(|r| r.pattern_count).max().unwrap_or(0),
        std_dev_mem: std_dev(&mem),
        min_mem: runs.iter().map(|r| r.peak_tracked_bytes).min().unwrap_or(0),
        mean_mem: mem.iter().sum::<f64>() / mem.len() as f64,
        max_mem: runs.iter().map(|r| r.peak_tracked_bytes).max().unwrap_or(0),
    })
}

pub fn emit_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<Report, serde_json::Error> {
    serde_json::from_str(text)
}

pub const CSV_HEADER: &str = "dataset,algorithm,sigma,runs,\
std_dev_runtime,best_runtime,mean_runtime,worst_runtime,\
std_dev_patterns,fewest_patterns,mean_patterns,most_patterns,\
std_dev_mem,min_mem,mean_mem,max_mem,error";

pub fn emit_csv(report: &Report) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for cell in &report.cells {
        out.push_str(&format!(
            "{},{},{},{},",
            cell.dataset,
            cell.algorithm,
            cell.sigma,
            cell.runs.len()
        ));
        match &cell.aggregates {
            Some(a) => out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},",
                a.std_dev_runtime,
                a.best_runtime,
                a.mean_runtime,
                a.worst_runtime,
                a.std_dev_patterns,
                a.fewest_patterns,
                a.mean_patterns,
                a.most_patterns,
                a.std_dev_mem,
                a.min_mem,
                a.mean_mem,
                a.max_mem
            )),
            None => out.push_str(",,,,,,,,,,,,"),
        }
        if let Some(e) = &cell.error { out.push_str(&e.replace(',', ";")) }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(format!("unknown format '{other}'; valid: json, csv")),
        }
    }
}

/// Writes atomically: the content lands under a temporary name in the target
/// directory and is renamed over the destination.
pub fn write_atomic(path: &Path, content: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let tmp = match dir {
        Some(d) => d.join(format!(
            ".{}.tmp",
            path.file_name().and_then(|n| n.to_str()).unwrap_or("report")
        )),
        None => Path::new(&format!(
            ".{}.tmp",
            path.file_name().and_then(|n| n.to_str()).unwrap_or("report")
        ))
        .to_path_buf(),
    };
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(content.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(seed: u64, t: f64, n: u64, mem: u64) -> RunRecord {
        RunRecord {
            seed,
            wall_time_secs: t,
            pattern_count: n,
            peak_tracked_bytes: mem,
            iterations: 4,
            candidates_generated: 10,
            candidates_evaluated: 8,
        }
    }

    #[test]
    fn empty_report_emits_valid_shapes() {
        let r = Report::default();
        assert_eq!(emit_json(&r), "{\n  \"cells\": []\n}\n");
        let csv = emit_csv(&r);
        assert_eq!(csv.lines().count(), 1);
        assert!(csv.starts_with("dataset,algorithm,sigma"));
    }

    #[test]
    fn aggregate_field_names_are_pinned() {
        let runs = vec![record(1, 1.0, 58, 100), record(2, 2.0, 58, 110), record(3, 3.0, 58, 120)];
        let cell = CellReport {
            dataset: "bc.csv".into(),
            algorithm: Algorithm::Graank,
            sigma: 0.5,
            aggregates: aggregate(&runs),
            runs,
            error: None,
        };
        let json = emit_json(&Report { cells: vec![cell] });
        for field in [
            "std_dev_runtime",
            "best_runtime",
            "mean_runtime",
            "worst_runtime",
            "fewest_patterns",
            "mean_patterns",
            "most_patterns",
            "min_mem",
            "mean_mem",
            "max_mem",
        ] {
            assert!(json.contains(&format!("\"{field}\"")), "missing {field}");
        }
        assert!(json.contains("\"runs\""));
    }

    #[test]
    fn single_run_std_devs_are_zero() {
        let a = aggregate(&[record(7, 1.5, 12, 64)]).unwrap();
        assert_eq!(a.std_dev_runtime, 0.0);
        assert_eq!(a.std_dev_patterns, 0.0);
        assert_eq!(a.std_dev_mem, 0.0);
        assert_eq!(a.fewest_patterns, 12);
        assert_eq!(a.most_patterns, 12);
    }

    #[test]
    fn identical_pattern_counts_have_zero_spread() {
        let a =
            aggregate(&[record(1, 1.0, 58, 10), record(2, 1.1, 58, 10), record(3, 0.9, 58, 10)])
                .unwrap();
        assert_eq!(a.std_dev_patterns, 0.0);
        assert_eq!(a.fewest_patterns, 58);
        assert_eq!(a.most_patterns, 58);
        assert_eq!(a.mean_patterns, 58.0);
    }

    #[test]
    fn json_round_trips_exactly() {
        let runs = vec![record(1, 0.25, 3, 777)];
        let report = Report {
            cells: vec![CellReport {
                dataset: "x.csv".into(),
                algorithm: Algorithm::AcoParaminer,
                sigma: 0.7,
                aggregates: aggregate(&runs),
                runs,
                error: None,
            }],
        };
        let parsed = parse_json(&emit_json(&report)).unwrap();
        assert_eq!(parsed, report);
        // byte-stable emission
        assert_eq!(emit_json(&parsed), emit_json(&report));
    }

    #[test]
    fn failed_cell_lands_in_csv_with_error() {
        let report = Report {
            cells: vec![CellReport {
                dataset: "x.csv".into(),
                algorithm: Algorithm::Graank,
                sigma: 0.5,
                runs: vec![],
                aggregates: None,
                error: Some("candidate cap 10 exceeded, level 3".into()),
            }],
        };
        let csv = emit_csv(&report);
        let line = csv.lines().nth(1).unwrap();
        assert!(line.contains("candidate cap 10 exceeded; level 3"));
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.json");
        write_atomic(&path, "first").unwrap();
        write_atomic(&path, "second").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "second");
        // no temp litter
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}

//! End-to-end checks of the `gradmine` binary.

use std::io::Write;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gradmine"))
}

fn athlete_csv(dir: &std::path::Path) -> std::path::PathBuf {
    let path = dir.join("athlete.csv");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "id,Game,Win,Injury").unwrap();
    for row in ["r0,30,3,1", "r1,35,2,2", "r2,40,4,2", "r3,50,1,1", "r4,52,7,1"] {
        writeln!(f, "{row}").unwrap();
    }
    path
}

#[test]
fn mine_prints_named_patterns() {
    let dir = tempfile::tempdir().unwrap();
    let data = athlete_csv(dir.path());
    let out = bin()
        .args(["mine", "--input"])
        .arg(&data)
        .args(["--id-column", "--algo", "graank", "--min-sup", "0.4"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    // {(Game,+),(Win,-)} holds on 4 of 10 couples
    assert!(stdout.contains("{Game+,Win-}"), "{stdout}");
    assert!(stdout.contains("0.4000"), "{stdout}");
}

#[test]
fn mine_writes_json_result() {
    let dir = tempfile::tempdir().unwrap();
    let data = athlete_csv(dir.path());
    let out_path = dir.path().join("result.json");
    let out = bin()
        .args(["mine", "--input"])
        .arg(&data)
        .args(["--id-column", "--algo", "pso", "--min-sup", "0.4", "--seed", "5"])
        .arg("--out")
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed["seed"], 5);
    assert!(parsed["patterns"].is_array());
}

#[test]
fn mine_maximal_only_prunes_subsets() {
    let dir = tempfile::tempdir().unwrap();
    let data = athlete_csv(dir.path());
    let full = bin()
        .args(["mine", "--input"])
        .arg(&data)
        .args(["--id-column", "--algo", "graank", "--min-sup", "0.2"])
        .output()
        .unwrap();
    let pruned = bin()
        .args(["mine", "--input"])
        .arg(&data)
        .args(["--id-column", "--algo", "graank", "--min-sup", "0.2", "--maximal-only"])
        .output()
        .unwrap();
    let count = |o: &std::process::Output| {
        String::from_utf8_lossy(&o.stdout)
            .lines()
            .filter(|l| l.trim_start().starts_with('{'))
            .count()
    };
    assert!(count(&pruned) < count(&full));
}

#[test]
fn unknown_algorithm_lists_valid_names() {
    let dir = tempfile::tempdir().unwrap();
    let data = athlete_csv(dir.path());
    let out = bin()
        .args(["mine", "--input"])
        .arg(&data)
        .args(["--id-column", "--algo", "apriori", "--min-sup", "0.4"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("apriori"), "{stderr}");
    assert!(stderr.contains("aco-graank"), "{stderr}");
}

#[test]
fn bench_runs_spec_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let data = athlete_csv(dir.path());
    let spec_path = dir.path().join("exp.toml");
    std::fs::write(
        &spec_path,
        format!(
            "datasets = [{:?}]\nalgorithms = [\"graank\", \"ga\"]\nsigmas = [0.4]\n\
             repeats = 2\nseed_base = 1\nid_column = true\n",
            data.display()
        ),
    )
    .unwrap();
    let report_path = dir.path().join("report.json");
    let out = bin()
        .args(["bench", "--spec"])
        .arg(&spec_path)
        .arg("--out")
        .arg(&report_path)
        .args(["--zero-timing"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = gradmine::report::parse_json(&std::fs::read_to_string(&report_path).unwrap())
        .unwrap();
    assert_eq!(report.cells.len(), 2);
    assert!(report.cells.iter().all(|c| c.error.is_none()));
    assert!(report.cells.iter().all(|c| c.runs.len() == 2));

    // same spec, csv format to stdout
    let out = bin()
        .args(["bench", "--spec"])
        .arg(&spec_path)
        .args(["--format", "csv", "--zero-timing"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.starts_with("dataset,algorithm,sigma,runs,std_dev_runtime"));
    assert_eq!(stdout.lines().count(), 3);
}

#[test]
fn bench_reports_cell_failures_with_nonzero_exit() {
    let dir = tempfile::tempdir().unwrap();
    let spec_path = dir.path().join("exp.toml");
    std::fs::write(
        &spec_path,
        "datasets = [\"missing.csv\"]\nalgorithms = [\"graank\"]\nsigmas = [0.5]\n",
    )
    .unwrap();
    let out = bin().args(["bench", "--spec"]).arg(&spec_path).output().unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("cell failed"), "{stderr}");
    assert!(stderr.contains("1 of 1 cells failed"), "{stderr}");
}

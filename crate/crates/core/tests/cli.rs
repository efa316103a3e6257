use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn zfc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zfc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn worked_example(dir: &TempDir) -> PathBuf {
    let path = dir.path().join("a.txt");
    let o = zfc(&["gen", "worked-example", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_worked_example() {
    let dir = TempDir::new().unwrap();
    let a = worked_example(&dir);
    let out = dir.path().join("r.json");
    let o = zfc(&["solve", s(&a), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("inputs: 1 {x1}"), "{text}");
    assert!(text.contains("feasible: true"));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["schema"], "zfc-opt/1");
    assert_eq!(report["output_set"], serde_json::json!([0]));
    assert_eq!(report["iterations"], 143_000);
}

#[test]
fn solve_output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("er.txt");
    assert!(zfc(&["gen", "er", "--n", "12", "--seed", "4", "--out", s(&a)]).status.success());
    let mut outputs = Vec::new();
    for name in ["1.json", "2.json"] {
        let out = dir.path().join(name);
        let o = zfc(&["solve", s(&a), "--seed", "7", "--epoch", "300", "--chains", "2", "--out", s(&out)]);
        assert_eq!(o.status.code(), Some(0));
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        v["wall_time_s"] = serde_json::Value::Null;
        outputs.push(v.to_string());
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn faithful_mode_can_report_infeasible() {
    // With a tiny schedule the chain stops right after leaving the empty set.
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("e.txt");
    std::fs::write(&a, "0 1\n1 2\n2 3\n").unwrap();
    let o = zfc(&["solve", s(&a), "--mode", "faithful", "--t0", "1.0", "--tstop", "0.99", "--alpha", "0.5", "--epoch", "1"]);
    let code = o.status.code().unwrap();
    assert!(code == 0 || code == 2);
    assert_eq!(code == 0, stdout(&o).contains("feasible: true"));
}

#[test]
fn missing_file_names_the_path() {
    let o = zfc(&["solve", "/nonexistent/instance.txt"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent/instance.txt"));
}

#[test]
fn verify_verdicts() {
    let dir = TempDir::new().unwrap();
    let a = worked_example(&dir);
    let o = zfc(&["verify", s(&a), "--set", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: true"));

    let o = zfc(&["verify", s(&a), "--set", "5"]);
    assert_eq!(o.status.code(), Some(2));
    let text = stdout(&o);
    assert!(text.contains("verdict: false"));
    assert!(text.contains("condition 1 (zero forcing set of G(A)): holds"));
    assert!(text.contains("fails\n  residual: {x1}"), "{text}");

    let out = dir.path().join("v.json");
    let o = zfc(&["verify", s(&a), "--set", "", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["plain_residual"], serde_json::json!([0, 5]));
    assert_eq!(v["restricted_residual"], serde_json::json!([0]));

    let o = zfc(&["verify", s(&a), "--set", "6"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn zfs_on_modified_graph() {
    let dir = TempDir::new().unwrap();
    let a = worked_example(&dir);
    let o = zfc(&["zfs", s(&a), "--set", "5", "--modified"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("residual: {x1}"));
    let o = zfc(&["zfs", s(&a), "--set", "5"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn exact_and_csv_output() {
    let dir = TempDir::new().unwrap();
    let a = worked_example(&dir);
    let out = dir.path().join("x.csv");
    let o = zfc(&["exact", s(&a), "--out", s(&out), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("optimum: 1"));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().nth(1).unwrap(), "6,1,1,7,0");
    let o = zfc(&["exact", s(&a), "--bounded", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tpm_check_and_guard() {
    let dir = TempDir::new().unwrap();
    let a = worked_example(&dir);
    let out = dir.path().join("t.json");
    let o = zfc(&["tpm-check", s(&a), "--temperature", "1", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    for key in ["max_row_sum_deviation", "max_detailed_balance_violation", "stationary_gibbs_tv"] {
        assert!(v["diagnostics"][key].as_f64().unwrap() < 1e-10, "{key}");
    }
    let big = dir.path().join("big.txt");
    assert!(zfc(&["gen", "er", "--n", "11", "--out", s(&big)]).status.success());
    let o = zfc(&["tpm-check", s(&big)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("limited to 10"));
}

#[test]
fn experiment_json_and_csv_agree() {
    let dir = TempDir::new().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(
        &spec,
        r#"{"family": "ER", "sizes": [5, 6], "instances_per_size": 4, "solver": "BOTH", "seed": 3, "anneal": {"epoch_len": 200}}"#,
    )
    .unwrap();
    let json_out = dir.path().join("r.json");
    let csv_out = dir.path().join("r.csv");
    let details = dir.path().join("d.csv");
    let o = zfc(&["experiment", s(&spec), "--out", s(&json_out), "--details", s(&details)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(zfc(&["experiment", s(&spec), "--out", s(&csv_out), "--format", "csv"]).status.success());
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json_out).unwrap()).unwrap();
    let rows = report["rows"].as_array().unwrap();
    let csv = std::fs::read_to_string(&csv_out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), rows.len() + 1);
    for (row, line) in rows.iter().zip(&lines[1..]) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[0], row["n"].to_string());
        assert_eq!(cells[2], row["mean_mcmc_cardinality"].to_string());
        assert_eq!(cells[3], row["mean_exact_cardinality"].to_string());
        assert_eq!(cells[4], row["exact_matches"].to_string());
    }
    assert_eq!(std::fs::read_to_string(&details).unwrap().lines().count(), 9);

    std::fs::write(&spec, r#"{"family": "ER", "sizes": []}"#).unwrap();
    assert_eq!(zfc(&["experiment", s(&spec)]).status.code(), Some(1));
}

#[test]
fn gen_formats_and_convert() {
    let dir = TempDir::new().unwrap();
    let o = zfc(&["gen", "tree", "--n", "4", "--as-format", "edges"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| !l.starts_with('#')).count(), 7);
    let o = zfc(&["gen", "staircase15"]);
    assert_eq!(stdout(&o).lines().count(), 15);

    let case = dir.path().join("case.m");
    std::fs::write(
        &case,
        "function mpc = case3\nmpc.bus = [\n\t10\t3\t0;\n\t20\t1\t0;\n\t30\t1\t0;\n];\nmpc.branch = [\n\t10\t20\t0.1;\n\t20\t30\t0.1;\n];\n",
    )
    .unwrap();
    let o = zfc(&["convert", s(&case)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let edges: Vec<String> = stdout(&o).lines().filter(|l| !l.starts_with('#')).map(str::to_string).collect();
    assert_eq!(edges, vec!["0 1", "1 2"]);
}

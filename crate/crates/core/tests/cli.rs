use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_casimir-delta"));
    cmd.env_remove("CASIMIR_DELTA_PRECISION");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn data_rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn figure_output_is_byte_identical_across_runs() {
    for cmd in ["fig1", "fig2", "fig3"] {
        let a = run(&[cmd, "--points", "7"]);
        let b = run(&[cmd, "--points", "7"]);
        assert_eq!(stdout(&a), stdout(&b), "{cmd}");
        let a = run(&[cmd, "--points", "7", "--format", "json"]);
        let b = run(&[cmd, "--points", "7", "--format", "json"]);
        assert_eq!(a.stdout, b.stdout, "{cmd} json");
    }
}

#[test]
fn fig1_header_and_columns() {
    let csv = stdout(&run(&["fig1"]));
    assert!(csv.starts_with("# casimir-delta "));
    assert!(csv.contains("# lambda_p_nm = 136"));
    let header = csv.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "a_um,dF_real_N_per_m2,dF_ideal_N_per_m2");
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 75);
    assert_eq!(rows[0][0], 0.15);
    assert_eq!(rows[74][0], 2.0);
    let ratio = rows[0][1] / rows[74][1];
    assert!(ratio > 9.0 && ratio < 10.0, "{ratio}");
}

#[test]
fn fig2_ignores_radius() {
    let a = stdout(&run(&["fig2", "--points", "5"]));
    let b = stdout(&run(&["fig2", "--points", "5", "--radius-mm", "7"]));
    assert_eq!(a, b);
    assert!(!a.contains("radius"));
}

#[test]
fn fig3_shape() {
    let csv = stdout(&run(&["fig3"]));
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 51);
    assert_eq!(rows[0][1..], [0.0, 0.0, 0.0]);
    let last = rows.last().unwrap();
    assert_eq!(last[0], 350.0);
    assert!(last[1] < 0.0 && last[2] > 0.0);
    assert!((last[2] / last[1]).abs() > 6.0);
    // Modified-TE grows faster with T2 than the plasma curve.
    let slope = |c: usize| (last[c] - rows[0][c]).abs();
    assert!(slope(2) > slope(1));
}

#[test]
fn json_rows_carry_column_names() {
    let doc: Value = serde_json::from_str(&stdout(&run(&["fig3", "--format", "json", "--points", "3"])))
        .unwrap();
    assert_eq!(doc["command"], "fig3");
    let row = &doc["rows"][2];
    assert_eq!(row["T2_K"], 350.0);
    assert!(row["dFps_over_R_modifiedTE_N_per_m"].as_f64().unwrap() > 0.0);
}

#[test]
fn bad_inputs_exit_with_usage_code() {
    for args in [
        &["fig1", "--points", "0"][..],
        &["fig1", "--a-min-um", "1", "--a-max-um", "1", "--points", "4"],
        &["fig1", "--a-min-um", "-1"],
        &["compute", "--geometry", "plates", "--approach", "modified-te"],
        &["compute", "--t1-k", "0"],
        &["fig1", "--format", "xml"],
        &["nonsense"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn single_point_grid_is_accepted() {
    let csv = stdout(&run(&["fig1", "--a-min-um", "1", "--a-max-um", "1", "--points", "1"]));
    assert_eq!(data_rows(&csv).len(), 1);
}

#[test]
fn config_file_then_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(&path, "# overrides\nt2_k = 340\na_um = 0.8\n").unwrap();
    let p = path.to_str().unwrap();

    let from_file = stdout(&run(&["compute", "--config", p]));
    assert!(from_file.contains("# t2_k = 340"));
    assert!(from_file.contains("# a_um = 0.8"));

    let flag_wins = stdout(&run(&["compute", "--config", p, "--t2-k", "330"]));
    assert!(flag_wins.contains("# t2_k = 330"));
    assert!(flag_wins.contains("# a_um = 0.8"));

    std::fs::write(&path, "colour = blue\n").unwrap();
    assert_eq!(run(&["compute", "--config", p]).status.code(), Some(1));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig1.csv");
    let out = run(&["fig1", "--points", "3", "--output", path.to_str().unwrap()]);
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&run(&["fig1", "--points", "3"])));
}

#[test]
fn compute_oracle_agrees_on_difference() {
    for geometry in ["plates", "sphere"] {
        let out = run(&["compute", "--geometry", geometry, "--oracle", "--format", "json"]);
        let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
        let oracle = &doc["result"]["oracle"];
        let dev = oracle["relative_deviation_delta_f"].as_f64().unwrap();
        assert!(dev.abs() < 0.05, "{geometry}: {dev}");
        assert!(doc["config"]["oracle"] == "true");
    }
}

#[test]
fn precision_env_is_recorded() {
    let out = bin()
        .env("CASIMIR_DELTA_PRECISION", "1e-8")
        .args(["compute", "--oracle"])
        .output()
        .unwrap();
    let csv = stdout(&out);
    assert!(csv.contains("# tail_tolerance = 0.00000001"), "{csv}");
    let bad = bin()
        .env("CASIMIR_DELTA_PRECISION", "fast")
        .args(["compute"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn validate_reports_every_check() {
    let out = run(&["validate"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().filter(|l| l.starts_with("[PASS]")).count() > 30);
    // The 0.5 μm absolute-force comparison is outside the 3% band.
    assert_eq!(out.status.code(), Some(3));
    assert!(text.contains("[FAIL]  7 oracle-plate-force-0.5um-300K"));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("oracle-plate-force-0.5um-300K"));

    let json = run(&["validate", "--format", "json"]);
    let doc: Value = serde_json::from_slice(&json.stdout).unwrap();
    assert!(doc.to_string().contains("ideal-sphere-thermal-2um"));
}

#[test]
fn perturbed_constants_break_the_checklist() {
    let out = run(&["validate", "--perturb-constants", "0.1"]);
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[FAIL]  1 "));
}

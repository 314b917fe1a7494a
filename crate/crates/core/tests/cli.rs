use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn jobs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/jobs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wro-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn wro(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wro"))
        .args(args)
        .output()
        .expect("wro runs")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn write_job(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn classify_bergman_circle() {
    let dir = scratch("circle");
    let out = dir.join("report.json");
    let o = wro(&["classify", "-i", s(&jobs().join("bergman_case1.json")), "-o", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let r = read_json(&out);
    assert_eq!(r["sets"]["sigma"]["components"], serde_json::json!([{"circle": 2.0}]));
    assert_eq!(r["sets"]["sigma"]["status"], "exact");
    assert_eq!(r["sets"]["sigma"]["citation"], "Thm 7.3(1)");
    for key in ["sets", "index_map", "open_flags", "inputs_echo", "citations"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn classify_ell1_partial_exit_three() {
    let dir = scratch("ell1");
    let out = dir.join("report.json");
    let o = wro(&["classify", "-i", s(&jobs().join("ell1a_partial.json")), "-o", s(&out)]);
    assert_eq!(o.status.code(), Some(3));
    let r = read_json(&out);
    assert_eq!(r["sets"]["sigma_ap"]["status"], "unknown");
    assert_eq!(r["open_flags"][0]["problem"], "Problem 7.2(a)");
    assert_eq!(r["sets"]["sigma_2"]["status"]["bounds"]["upper"], serde_json::json!([{"closed_disc": 1.0}]));
}

#[test]
fn input_errors_exit_one() {
    let dir = scratch("bad");
    let out = dir.join("r.json");
    let cases = [
        r#"{"weight":{"type":"poly","coeffs":"nope"},"rotation":{"kind":"named","name":"golden"},"space":{"variant":"hinf"}}"#,
        r#"{"weight":{"type":"poly","coeffs":[[-2,0],[1,0]]},"rotation":{"kind":"rational","p":1,"q":3},"space":{"variant":"hinf"}}"#,
        r#"{"weight":{"type":"taylor","coeffs":[[-2,0],[1,0]],"tail_bound":0.1},"rotation":{"kind":"named","name":"golden"},"space":{"variant":"bloch"}}"#,
        r#"{"weight":{"type":"poly","coeffs":[[1,0]]},"rotation":{"kind":"named","name":"golden"},"space":{"variant":"bergman","p":0.5}}"#,
        "not json",
    ];
    for (i, body) in cases.iter().enumerate() {
        let job = write_job(&dir, &format!("job{i}.json"), body);
        let o = wro(&["classify", "-i", s(&job), "-o", s(&out)]);
        assert_eq!(o.status.code(), Some(1), "case {i}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    }
    let o = wro(&["classify", "-i", s(&dir.join("missing.json")), "-o", s(&out)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn radius_of_cube_root_rotation() {
    let o = wro(&["radius", "-i", s(&jobs().join("cube_root_radius.json"))]);
    assert_eq!(o.status.code(), Some(0));
    let r: f64 = String::from_utf8(o.stdout).unwrap().trim().parse().unwrap();
    assert!((r - 9f64.cbrt()).abs() < 1e-6);
}

#[test]
fn plot_report_and_empty_grid() {
    let dir = scratch("plot");
    let report = dir.join("report.json");
    let svg = dir.join("out.svg");
    assert_eq!(
        wro(&["classify", "-i", s(&jobs().join("bergman_case1.json")), "-o", s(&report)]).status.code(),
        Some(0)
    );
    assert_eq!(wro(&["plot", "-i", s(&report), "-o", s(&svg)]).status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg"));
    assert_eq!(text.matches(r#"r="200.000""#).count(), 1);

    let empty = write_job(&dir, "empty.csv", "re,im,gap\n");
    assert_eq!(wro(&["plot", "-i", s(&empty), "-o", s(&svg)]).status.code(), Some(1));
    let broken = write_job(&dir, "broken.json", r#"{"sets": 3}"#);
    assert_eq!(wro(&["plot", "-i", s(&broken), "-o", s(&svg)]).status.code(), Some(1));
}

#[test]
fn scan_then_plot_grid() {
    let dir = scratch("scan");
    let grid = dir.join("grid.csv");
    let svg = dir.join("grid.svg");
    assert_eq!(
        wro(&["scan", "-i", s(&jobs().join("bergman_case1.json")), "-o", s(&grid)]).status.code(),
        Some(0)
    );
    let text = std::fs::read_to_string(&grid).unwrap();
    assert!(text.starts_with("re,im,gap\n"));
    // 5 radii x 64 angles
    assert_eq!(text.lines().count(), 1 + 5 * 64);
    assert_eq!(wro(&["plot", "-i", s(&grid), "-o", s(&svg)]).status.code(), Some(0));
    assert!(std::fs::read_to_string(&svg).unwrap().contains("gap-layer"));
}

#[test]
fn verify_hardy_identity_diagonal_exact() {
    let dir = scratch("hardy");
    let out = dir.join("ledger.json");
    let o = wro(&["verify", "-i", s(&jobs().join("hardy_identity.json")), "-o", s(&out)]);
    let ledger = read_json(&out);
    let checks = ledger["checks"].as_array().unwrap();
    let diag = checks.iter().find(|c| c["name"] == "diagonal_law").unwrap();
    assert_eq!(diag["passed"], true);
    // the exit code reflects every check, not just the diagonal one
    let all = checks.iter().all(|c| c["passed"] == true);
    assert_eq!(o.status.code(), Some(if all { 0 } else { 2 }));
}

#[test]
fn verify_bloch_reports_both_constants() {
    let dir = scratch("bloch");
    let out = dir.join("ledger.json");
    let o = wro(&["verify", "-i", s(&jobs().join("bloch.json")), "-o", s(&out)]);
    let ledger = read_json(&out);
    let checks = ledger["checks"].as_array().unwrap();
    let closed = checks.iter().find(|c| c["name"] == "bloch_norm_closed_form").unwrap();
    assert_eq!(closed["passed"], true);
    assert!(checks.iter().any(|c| c["name"] == "bloch_constant_4_over_e"));
    assert_eq!(o.status.code(), Some(if ledger["passed"] == true { 0 } else { 2 }));
}

#[test]
fn verify_unsupported_space_exit_one() {
    let dir = scratch("annulus");
    let out = dir.join("ledger.json");
    let o = wro(&["verify", "-i", s(&jobs().join("annulus.json")), "-o", s(&out)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn report_round_trip_is_lossless() {
    let dir = scratch("roundtrip");
    let out = dir.join("report.json");
    wro(&["classify", "-i", s(&jobs().join("annulus.json")), "-o", s(&out)]);
    let text = std::fs::read_to_string(&out).unwrap();
    let report: wro::classify::SpectrumReport = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
    assert_eq!(again, text);
}

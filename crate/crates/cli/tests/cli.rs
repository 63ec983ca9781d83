//! End-to-end tests of the `qrabi` binary: exit codes, file formats,
//! determinism, and the reference numbers the outputs must carry.

use std::path::Path;
use std::process::{Command, Output};

fn qrabi(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qrabi"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str], dir: &Path) -> Output {
    let out = qrabi(args, dir);
    assert!(
        out.status.success(),
        "{:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn data_lines(path: &Path) -> Vec<String> {
    std::fs::read_to_string(path)
        .unwrap_or_else(|e| panic!("read {}: {e}", path.display()))
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

fn fields(line: &str) -> Vec<String> {
    line.split(',').map(str::to_string).collect()
}

#[test]
fn spectrum_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&["spectrum", "--out", "a.csv"], dir.path());
    run_ok(&["spectrum", "--out", "b.csv"], dir.path());
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b.csv")).unwrap();
    assert!(!a.is_empty() && a == b);
}

#[test]
fn spectrum_matches_known_levels() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&["spectrum", "--out", "s.csv"], dir.path());
    let lines = data_lines(&dir.path().join("s.csv"));
    assert_eq!(
        lines[0],
        "index,energy_exact,energy_approx_full,energy_approx_simplified,parity,N"
    );
    assert_eq!(lines.len(), 21);
    let row0 = fields(&lines[1]);
    let row1 = fields(&lines[2]);
    let e0: f64 = row0[1].parse().unwrap();
    let e1: f64 = row1[1].parse().unwrap();
    let a0: f64 = row0[2].parse().unwrap();
    assert!((e0 - (-2.166738683129824)).abs() < 1e-9);
    assert!((e1 - (-2.0104303350594623)).abs() < 1e-9);
    assert!(a0 >= e0, "pair ansatz must bound the ground level");
    assert_eq!((row0[4].as_str(), row1[4].as_str()), ("-1", "1"));
    assert_eq!((row0[5].as_str(), row1[5].as_str()), ("0", "0"));
}

#[test]
fn zero_coupling_leaves_approximate_columns_empty() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&["spectrum", "--lambda", "0", "--out", "s.csv"], dir.path());
    let text = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
    assert!(text.contains("single-minimum regime"));
    let lines = data_lines(&dir.path().join("s.csv"));
    let row0 = fields(&lines[1]);
    assert!(row0[2].is_empty() && row0[3].is_empty());
    let e0: f64 = row0[1].parse().unwrap();
    assert!((e0 - (-1.5)).abs() < 1e-9, "uncoupled ground is -Omega/2");
}

#[test]
fn malformed_config_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{\"model\": {").unwrap();
    let out = qrabi(&["spectrum", "--config", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("c.json"),
        "{\"model\": {\"omega_q\": 3.0, \"coupling\": 1.3}, \"extra\": 1}",
    )
    .unwrap();
    let out = qrabi(&["spectrum", "--config", "c.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("extra"));
}

#[test]
fn invalid_flag_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = qrabi(&["spectrum", "--bogus"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn single_minimum_dynamics_is_a_regime_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = qrabi(&["dynamics", "--lambda", "0.5"], dir.path());
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("regime"));
}

#[test]
fn undersized_basis_is_a_numeric_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = qrabi(&["dynamics", "--n-max", "4"], dir.path());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn feasibility_requires_a_physical_block() {
    let dir = tempfile::tempdir().unwrap();
    let out = qrabi(&["feasibility"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn feasibility_presets_match_reference_timescales() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(
        &[
            "feasibility",
            "--preset",
            "dilatational-3GHz",
            "--preset",
            "flexural-100MHz",
            "--out",
            "f.json",
        ],
        dir.path(),
    );
    let text = std::fs::read_to_string(dir.path().join("f.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let scen = v["scenarios"].as_array().unwrap();
    assert_eq!(scen.len(), 2);
    let t_q1 = scen[0]["tunneling_time_s"].as_f64().unwrap();
    let t_c1 = scen[0]["crossover_temperature_k"].as_f64().unwrap();
    let t_q2 = scen[1]["tunneling_time_s"].as_f64().unwrap();
    let t_c2 = scen[1]["crossover_temperature_k"].as_f64().unwrap();
    assert!((t_q1 - 5.9e-9).abs() < 0.05 * 5.9e-9);
    assert!((t_c1 - 12e-3).abs() < 0.10 * 12e-3);
    assert!((t_q2 - 0.22e-6).abs() < 0.05 * 0.22e-6);
    assert!((t_c2 - 24e-6).abs() < 0.10 * 24e-6);
    assert_eq!(scen[0]["quantum_tunneling_dominated"], false);
}

#[test]
fn custom_physical_block_below_crossover_is_flagged() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("c.json"),
        "{\"model\": {\"omega_q\": 3.0, \"coupling\": 1.3}, \
          \"physical\": {\"omega0\": 3.3333333333e9, \"temperature\": 0.005}}",
    )
    .unwrap();
    run_ok(
        &["feasibility", "--config", "c.json", "--out", "f.json"],
        dir.path(),
    );
    let text = std::fs::read_to_string(dir.path().join("f.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    // 5 mK sits below the 11.7 mK crossover for this device
    assert_eq!(v["scenarios"][0]["quantum_tunneling_dominated"], true);
}

fn small_dynamics_config() -> &'static str {
    "{\"model\": {\"omega_q\": 3.0, \"coupling\": 1.3}, \
      \"grid\": {\"q_min\": -6.0, \"q_max\": 6.0, \"points\": 61}, \
      \"times\": {\"mode\": \"period-fractions\", \"samples\": [0.0, 0.25, 0.5]}}"
}

#[test]
fn dynamics_emits_three_deterministic_files() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c.json"), small_dynamics_config()).unwrap();
    run_ok(&["dynamics", "--config", "c.json", "--out", "a"], dir.path());
    run_ok(&["dynamics", "--config", "c.json", "--out", "b"], dir.path());
    for name in [
        "dynamics_density_exact.csv",
        "dynamics_density_approx.csv",
        "dynamics_observables.csv",
    ] {
        let a = std::fs::read(dir.path().join("a").join(name)).unwrap();
        let b = std::fs::read(dir.path().join("b").join(name)).unwrap();
        assert!(!a.is_empty() && a == b, "{name} must be byte-identical");
    }
    let lines = data_lines(&dir.path().join("a/dynamics_density_exact.csv"));
    assert_eq!(lines.len(), 1 + 3 * 61);
}

#[test]
fn empty_time_list_writes_headers_only() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("c.json"),
        "{\"times\": {\"mode\": \"period-fractions\", \"samples\": []}}",
    )
    .unwrap();
    run_ok(&["dynamics", "--config", "c.json", "--out", "d"], dir.path());
    for name in [
        "dynamics_density_exact.csv",
        "dynamics_density_approx.csv",
        "dynamics_observables.csv",
    ] {
        let lines = data_lines(&dir.path().join("d").join(name));
        assert_eq!(lines.len(), 1, "{name} should hold only the header");
    }
}

#[test]
fn single_time_zero_reports_initial_inversion() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("c.json"),
        "{\"times\": {\"mode\": \"absolute\", \"samples\": [0.0]}}",
    )
    .unwrap();
    run_ok(&["dynamics", "--config", "c.json", "--out", "d"], dir.path());
    let lines = data_lines(&dir.path().join("d/dynamics_observables.csv"));
    assert_eq!(lines.len(), 2);
    let row = fields(&lines[1]);
    let sz_approx: f64 = row[4].parse().unwrap();
    let eps: f64 = 3.0 / (4.0 * 1.3 * 1.3);
    assert!(
        (sz_approx - (1.0 - eps * eps).sqrt()).abs() < 1e-15,
        "t=0 inversion must equal sin(theta0)"
    );
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("c.json"),
        "{\"model\": {\"omega_q\": 3.0, \"coupling\": 1.3}}",
    )
    .unwrap();
    run_ok(
        &["spectrum", "--config", "c.json", "--lambda", "2", "--out", "s.csv"],
        dir.path(),
    );
    let text = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
    assert!(text.contains("coupling=2"));
    let lines = data_lines(&dir.path().join("s.csv"));
    let e0: f64 = fields(&lines[1])[1].parse().unwrap();
    assert!((e0 - (-4.151731377108003)).abs() < 1e-9);
}

#[test]
fn json_format_emits_parseable_tables() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(
        &["spectrum", "--format", "json", "--out", "s.json"],
        dir.path(),
    );
    let text = std::fs::read_to_string(dir.path().join("s.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["columns"].as_array().unwrap().len(), 6);
    assert_eq!(v["rows"].as_array().unwrap().len(), 20);
    let e0 = v["rows"][0][1].as_f64().unwrap();
    assert!((e0 - (-2.166738683129824)).abs() < 1e-9);
}

#[test]
fn potential_carries_reference_rows_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(
        &["potential", "--lambda", "2", "--out", "p.csv"],
        dir.path(),
    );
    let lines = data_lines(&dir.path().join("p.csv"));
    assert!(lines[0].starts_with("row,q,E_b,V_0,masked_0"));
    let energy_rows: Vec<_> = lines.iter().filter(|l| l.starts_with("energy,")).collect();
    assert_eq!(energy_rows.len(), 6);
    assert!(lines.iter().any(|l| l == "summary,energy_bound,3.140625,,,,,,,,,,,,"));
    assert!(lines.iter().any(|l| l.starts_with("summary,overlap_count,3")));
    // barrier-center curvature values are masked only when the density
    // falls below the floor; the edge points are always masked
    let first_grid = fields(&lines[1]);
    assert_eq!(first_grid[0], "grid");
    assert_eq!(first_grid[4], "true");
    assert!(first_grid[3].is_empty());
}

#[test]
fn figure_one_emits_both_couplings() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&["reproduce-figure", "1", "--out", "figs"], dir.path());
    for name in ["figure1_coupling13.csv", "figure1_coupling20.csv"] {
        let lines = data_lines(&dir.path().join("figs").join(name));
        assert_eq!(lines.len(), 21, "{name} holds 20 levels");
    }
}

#[test]
fn unknown_figure_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = qrabi(&["reproduce-figure", "7"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

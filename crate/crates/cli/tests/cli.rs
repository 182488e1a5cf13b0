//! End-to-end runs of the `steermach` binary. Every emitted row is checked
//! against a direct library call.

use std::path::Path;
use std::process::{Command, Output};

use nalgebra::Vector3;
use serde_json::Value;
use steering_machine::lhs::{analytic_bound, lhs_frontier, quarter_sweep, sphere_grid};
use steering_machine::machine::{demon_work, pauli_baseline_work, state_family, DemonProtocol, Scheme, StateFamilyParams};
use steering_machine::qubit::{Hamiltonian, MeasurementDirection};

/// Rows carry 12 significant digits.
const ROW_TOL: f64 = 1e-11;

fn steermach(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steermach")).args(args).output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = steermach(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Header row and numeric body of a CSV written by the binary.
fn read_csv(path: &Path) -> (String, Vec<Vec<String>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().to_string();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

fn f(s: &str) -> f64 {
    s.parse().unwrap()
}

fn xz() -> DemonProtocol {
    DemonProtocol::pair(MeasurementDirection::x(), MeasurementDirection::z(), Scheme::GeneralUnitary)
}

fn family_work(p: f64, eta: f64, protocol: &DemonProtocol) -> f64 {
    demon_work(&state_family(StateFamilyParams::new(p, eta).unwrap()), protocol, &Hamiltonian::default()).total_work
}

#[test]
fn figure2_rows_match_the_library() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["figure2", "--out", dir.path().to_str().unwrap()]);
    let (header, rows) = read_csv(&dir.path().join("figure2.csv"));
    assert_eq!(header, "p,eta,work_general,work_restricted");
    assert_eq!(rows.len(), 303);
    let protocol = xz();
    for row in &rows {
        let (p, eta) = (f(&row[0]), f(&row[1]));
        let rho = state_family(StateFamilyParams::new(p, eta).unwrap());
        let h = Hamiltonian::default();
        assert!((f(&row[2]) - demon_work(&rho, &protocol, &h).total_work).abs() < ROW_TOL);
        assert!((f(&row[3]) - pauli_baseline_work(&rho, &protocol, &h).total_work).abs() < ROW_TOL);
        assert!(f(&row[2]) >= f(&row[3]) - ROW_TOL);
    }
    let find = |p: &str, eta: &str| rows.iter().find(|r| r[0] == p && r[1] == eta).unwrap();
    assert_eq!(f(&find("1", "-0.5")[2]), 0.25);
    assert_eq!(f(&find("0", "-0.5")[2]), 0.125);
}

#[test]
fn figure2_reports_work_in_units_of_omega0() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["figure2", "--omega0", "3", "--p-steps", "2", "--eta", "-0.5", "--out", dir.path().to_str().unwrap()]);
    let (_, rows) = read_csv(&dir.path().join("figure2.csv"));
    assert_eq!(rows.len(), 2);
    assert_eq!(f(&rows[1][2]), 0.25);
}

#[test]
fn figure4_rows_match_the_library() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["figure4", "--out", dir.path().to_str().unwrap()]);
    let (header, rows) = read_csv(&dir.path().join("figure4.csv"));
    assert_eq!(header, "eta,p,ratio_work,ratio_bound,measurement_pair");
    let xy = DemonProtocol::pair(MeasurementDirection::x(), MeasurementDirection::y(), Scheme::GeneralUnitary);
    let mut violated = std::collections::BTreeSet::new();
    for row in &rows {
        let (eta, p) = (f(&row[0]), f(&row[1]));
        let protocol = match row[4].as_str() {
            "x/z" => xz(),
            "x/y" => xy.clone(),
            other => panic!("unexpected pair {other}"),
        };
        let max = family_work(1.0, eta, &protocol);
        assert!((f(&row[2]) - family_work(p, eta, &protocol) / max).abs() < ROW_TOL);
        assert!((f(&row[3]) - analytic_bound(eta, 1.0).work / max).abs() < ROW_TOL);
        if f(&row[2]) > f(&row[3]) {
            violated.insert((row[4].clone(), row[1].clone()));
        }
    }
    assert_eq!(rows.len(), 2 * 4 * 200);
    for pair in ["x/z", "x/y"] {
        for p in ["0.7", "0.8", "0.9"] {
            assert!(violated.contains(&(pair.to_string(), p.to_string())), "{pair} p={p}");
        }
        assert!(!violated.contains(&(pair.to_string(), "0".to_string())));
    }
}

#[test]
fn frontier_rows_match_the_library() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["frontier", "--measurements", "x,y", "--frontier-steps", "9", "--out", dir.path().to_str().unwrap()]);
    let (header, rows) = read_csv(&dir.path().join("frontier.csv"));
    assert_eq!(header, "weight_angle,alpha,beta,alpha_ref,beta_ref");
    let cert = lhs_frontier(0.0, &Vector3::x(), &Vector3::y(), &sphere_grid(1000).unwrap(), &quarter_sweep(9)).unwrap();
    assert_eq!(rows.len(), 9);
    for (row, p) in rows.iter().zip(&cert.points) {
        for (got, want) in row.iter().zip([p.weight_angle, p.alpha, p.beta, p.alpha_ref, p.beta_ref]) {
            assert!((f(got) - want).abs() < ROW_TOL);
        }
        assert!(f(&row[1]).hypot(f(&row[2])) <= 1.02);
    }
    assert_eq!((f(&rows[0][1]), f(&rows[0][2])), (1.0, 0.0));
    let mid = &rows[4];
    assert!((f(&mid[1]) - std::f64::consts::FRAC_1_SQRT_2).abs() < 0.02);
    assert!((f(&mid[2]) - std::f64::consts::FRAC_1_SQRT_2).abs() < 0.02);
}

#[test]
fn output_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        ok(&["figure4", "--eta-steps", "40", "--out", dir.path().to_str().unwrap()]);
        ok(&["frontier", "--frontier-steps", "7", "--grid-n", "300", "--out", dir.path().to_str().unwrap()]);
    }
    for name in ["figure4.csv", "frontier.csv"] {
        let read = |d: &tempfile::TempDir| std::fs::read_to_string(d.path().join(name)).unwrap();
        assert_eq!(read(&a).replace(a.path().to_str().unwrap(), ""), read(&b).replace(b.path().to_str().unwrap(), ""));
    }
    assert_eq!(ok(&["steer-check", "random", "--seed", "9", "--grid-n", "200"]), ok(&["steer-check", "random", "--seed", "9", "--grid-n", "200"]));
    assert_ne!(ok(&["work", "random", "--seed", "1"]), ok(&["work", "random", "--seed", "2"]));
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

#[test]
fn steer_check_verdicts() {
    let bell = json(&["steer-check", "family", "1", "0"]);
    assert_eq!(bell["verdict"], "steerable");
    assert_eq!(bell["refinement_confirmed"], true);
    assert_eq!(bell["witness"].as_array().unwrap().len(), 11);
    assert!(bell["margin"].as_f64().unwrap() > 0.0);
    assert!(bell["grid_n"].as_u64().unwrap() >= 1000);

    let classical = json(&["steer-check", "family", "0", "-0.5"]);
    assert_eq!(classical["verdict"], "lhs-feasible");
    assert!(classical["witness"].is_null());

    // |0⟩⟨0| ⊗ |+⟩⟨+|.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("product.json");
    std::fs::write(&path, r#"{"re": [[0.5,0.5,0,0],[0.5,0.5,0,0],[0,0,0,0],[0,0,0,0]]}"#).unwrap();
    let product = json(&["steer-check", "matrix", path.to_str().unwrap(), "--measurements", "x,y"]);
    assert_eq!(product["verdict"], "lhs-feasible");
}

#[test]
fn single_shot_commands() {
    let work = json(&["work", "family", "1", "0"]);
    assert_eq!(work["total_work"].as_f64().unwrap(), 0.5);
    assert_eq!(work["closed_form_work"].as_f64().unwrap(), 0.5);
    assert!((work["unsteerable_bound"].as_f64().unwrap() - 0.5 * std::f64::consts::FRAC_1_SQRT_2).abs() < ROW_TOL);

    let three = json(&["work", "family", "0.5", "-0.5", "--dir", "x", "--dir", "-y", "--dir", "0:0:1"]);
    assert_eq!(three["measurements"].as_array().unwrap().len(), 3);
    assert!(three["unsteerable_bound"].is_null());

    let c = json(&["concurrence", "family", "1", "-0.5"]);
    assert!((c["gain"].as_f64().unwrap() - c["closed_form_gain"].as_f64().unwrap()).abs() < ROW_TOL);
    for m in c["measurements"].as_array().unwrap() {
        for b in m["branches"].as_array().unwrap() {
            let r: f64 = b["bloch"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap().powi(2)).sum::<f64>().sqrt();
            assert!((b["concurrence"].as_f64().unwrap() - (1.0 + r) / 2.0).abs() < 1e-10);
        }
    }
    // η > 0: both baselines are reported.
    let hot = json(&["concurrence", "family", "0.5", "0.4"]);
    assert!((hot["thermal_baseline"].as_f64().unwrap() - 0.3).abs() < ROW_TOL);
    assert!((hot["baseline_concurrence"].as_f64().unwrap() - 0.7).abs() < ROW_TOL);
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    let out = dir.path().join("csv");
    std::fs::write(&cfg, format!("eta = [-0.3]\np_steps = 5\nout = {:?}\n", out.to_str().unwrap())).unwrap();
    ok(&["figure2", "--config", cfg.to_str().unwrap()]);
    let (_, rows) = read_csv(&out.join("figure2.csv"));
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r[1] == "-0.3"));
    ok(&["figure2", "--config", cfg.to_str().unwrap(), "--p-steps", "3"]);
    assert_eq!(read_csv(&out.join("figure2.csv")).1.len(), 3);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| steermach(args).status.code().unwrap();
    let dir = tempfile::tempdir().unwrap();

    // Validation errors.
    assert_eq!(code(&["figure2", "--eta", "1.5"]), 1);
    assert_eq!(code(&["steer-check", "family", "2", "0"]), 1);
    assert_eq!(code(&["steer-check", "bogus"]), 1);
    assert_eq!(code(&["--measurements", "x", "figure2"]), 1);
    assert_eq!(code(&["--no-such-flag", "figure2"]), 1);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"re": [[1,0,0,0],[0,1,0,0],[0,0,-1,0],[0,0,0,0]]}"#).unwrap();
    let out = steermach(&["steer-check", "matrix", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.json"));
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(code(&["steer-check", "matrix", bad.to_str().unwrap()]), 1);
    std::fs::write(&bad, r#"{"re": [[1,0],[0,0]]}"#).unwrap();
    assert_eq!(code(&["steer-check", "matrix", bad.to_str().unwrap()]), 1);

    // I/O errors.
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&["steer-check", "matrix", missing.to_str().unwrap()]), 2);
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "").unwrap();
    assert_eq!(code(&["figure2", "--out", blocker.join("sub").to_str().unwrap()]), 2);
    assert_eq!(code(&["figure2", "--config", missing.to_str().unwrap()]), 2);

    assert_eq!(code(&["--help"]), 0);
}

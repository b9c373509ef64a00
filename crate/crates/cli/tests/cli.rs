//! End-to-end runs of the `casimir` binary: command examples, exit codes,
//! determinism and the config file.

use std::process::{Command, Output};

use serde_json::Value;

fn casimir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_casimir"))
        .args(args)
        .output()
        .expect("casimir binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = casimir(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

/// Single data row of a one-point CSV sweep, split into fields.
fn single_row(args: &[&str]) -> Vec<String> {
    let out = casimir(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}");
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2, "{text}");
    assert_eq!(lines[0], casimir_cli::output::CSV_HEADER);
    lines[1].split(',').map(str::to_string).collect()
}

#[test]
fn ring_energy_at_centre() {
    let row = single_row(&["energy", "--body", "ring", "--pol", "axial", "--theta", "0", "--h", "0"]);
    assert_eq!(row[3].parse::<f64>().unwrap(), -52.0);
    assert_eq!(row[2], "", "b_hat is inapplicable for the ring");
}

#[test]
fn plate_energy_at_aperture() {
    let row = single_row(&["energy", "--body", "plate", "--pol", "axial", "--theta", "0", "--h", "0"]);
    assert!((row[3].parse::<f64>().unwrap() + 10.4).abs() < 1e-12, "{row:?}");
}

#[test]
fn force_vanishes_at_short_range_edge() {
    let edge = format!("{:.17}", (2.0f64 / 9.0).sqrt());
    let row = single_row(&["force", "--body", "ring", "--pol", "axial", "--theta", "90", "--h", &edge]);
    let force: f64 = row[4].parse().unwrap();
    assert!(force.abs() <= 1e-9, "{force}");
}

#[test]
fn force_near_short_range_edge_follows_the_local_slope() {
    // 0.471405 sits 4.8e-7 above sqrt(2/9), where dF/dh is about -137.
    let row = single_row(&["force", "--body", "ring", "--pol", "axial", "--theta", "90", "--h", "0.471405"]);
    let force: f64 = row[4].parse().unwrap();
    let offset = 0.471405 - (2.0f64 / 9.0).sqrt();
    assert!((force / offset + 137.0).abs() < 2.0, "{force}");
}

#[test]
fn torsion_free_ring_report() {
    let report = json(&["torsion-free", "--body", "ring"]);
    let results = &report["results"];
    assert!((results["h1"].as_f64().unwrap() - 0.477847).abs() < 5e-7, "{results}");
    assert!((results["h2"].as_f64().unwrap() - 1.687206).abs() < 5e-7, "{results}");
    assert_eq!(report["command"], "torsion-free");
}

#[test]
fn critical_radius_at_zero_degrees() {
    let report = json(&["critical-radius", "--theta", "0"]);
    let b = report["results"][0]["b_star"].as_f64().unwrap();
    assert!((b - 1.6505).abs() < 1e-3, "{b}");
}

#[test]
fn cycle_report() {
    let report = json(&["cycle"]);
    let results = &report["results"];
    assert!(results["net_work"].as_f64().unwrap().abs() < 1e-12);
    let c = results["points"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["label"] == "C")
        .unwrap();
    assert!((c["energy_reduced"].as_f64().unwrap() + 9.2832).abs() < 1e-4, "{c}");
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["energy", "--body", "sphere", "--h", "0"],
        vec!["energy", "--body", "annulus", "--h", "0"],
        vec!["energy", "--body", "annulus", "--b", "0.5", "--h", "0"],
        vec!["energy", "--h-min", "0", "--h-max", "1", "--h-count", "1"],
        vec!["energy", "--theta", "NaN", "--h", "0"],
        vec!["energy", "--pol", "tensor:1", "--h", "0"],
        vec!["no-such-command"],
    ] {
        let out = casimir(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn success_exits_with_zero() {
    for args in [
        vec!["energy", "--h", "0.5"],
        vec!["force", "--body", "annulus", "--b", "2", "--theta", "0,45", "--h", "0.2,1"],
        vec!["critical-angles"],
        vec!["repulsion"],
    ] {
        assert_eq!(casimir(&args).status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn verify_prints_one_line_per_check_and_reports_failure_in_status() {
    let out = casimir(&["verify"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with('[')).collect();
    assert_eq!(lines.len(), 11, "{text}");
    let all_pass = lines.iter().all(|l| l.starts_with("[PASS]"));
    let expected = if all_pass { 0 } else { 1 };
    assert_eq!(out.status.code(), Some(expected), "{text}");
}

#[test]
fn csv_is_byte_identical_across_runs() {
    let args = [
        "energy", "--body", "annulus", "--b", "1.7", "--pol", "radial", "--theta", "0,30,90",
        "--h-min", "-1", "--h-max", "3", "--h-count", "17",
    ];
    let first = casimir(&args);
    let second = casimir(&args);
    assert_eq!(first.status.code(), Some(0));
    assert!(!first.stdout.is_empty());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn every_csv_row_echoes_its_inputs() {
    let out = casimir(&["energy", "--body", "annulus", "--b", "3", "--theta", "15,75", "--h", "0.25,2"]);
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 4);
    let mut seen = Vec::new();
    for row in &rows {
        assert_eq!(row[2].parse::<f64>().unwrap(), 3.0);
        seen.push((row[1].parse::<f64>().unwrap(), row[0].parse::<f64>().unwrap()));
    }
    assert_eq!(seen, [(15.0, 0.25), (15.0, 2.0), (75.0, 0.25), (75.0, 2.0)]);
}

#[test]
fn config_file_supplies_flags_and_command_line_wins() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plate.cfg");
    std::fs::write(&path, "# plate at its aperture\nbody = plate\ntheta = 90\nh = 0\n").unwrap();
    let path = path.to_str().unwrap();

    let from_file = single_row(&["--config", path, "energy"]);
    let direct = single_row(&["energy", "--body", "plate", "--theta", "90", "--h", "0"]);
    assert_eq!(from_file, direct);

    let overridden = single_row(&["--config", path, "energy", "--theta", "0"]);
    assert_eq!(overridden[1].parse::<f64>().unwrap(), 0.0);
    assert!((overridden[3].parse::<f64>().unwrap() + 10.4).abs() < 1e-12);

    let missing = casimir(&["--config", "/nonexistent/casimir.cfg", "energy", "--h", "0"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn figure_all_writes_every_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = casimir(&["figure", "all", "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    for (name, golden) in casimir_cli::figures::GOLDEN {
        let fresh = std::fs::read_to_string(dir.path().join(name)).unwrap();
        assert_eq!(fresh, golden, "{name}");
    }
    assert_eq!(casimir(&["figure", "all"]).status.code(), Some(2));
}

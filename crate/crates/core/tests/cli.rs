//! End-to-end tests of the `twoforest` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twoforest"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn stats_on_triangle() {
    let k3 = data("k3.txt");
    let out = run(&["stats", "--input", k3.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let s = &v["statistics"];
    assert!((s["ratio_k2_k"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((s["mean_size"].as_f64().unwrap() - 4.0 / 3.0).abs() < 1e-12);
    assert_eq!(v["config"]["command"], "stats");
    assert_eq!(v["vertices"].as_array().unwrap().len(), 3);
}

#[test]
fn stats_csv_has_a_row_per_vertex() {
    let c4 = data("c4.txt");
    let out = run(&["stats", "--input", c4.to_str().unwrap(), "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "vertex,label,green_diag,prob_in_sigma,pinned_mean_size");
    assert_eq!(lines.len(), 5);
    assert!(lines[2].starts_with("1,v2,"));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let disconnected = dir.path().join("two.txt");
    std::fs::write(&disconnected, "a b\nc d\n").unwrap();
    let out = run(&["stats", "--input", disconnected.to_str().unwrap(), "--boundary", "a"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("disconnected"));

    let missing = dir.path().join("none.txt");
    assert_eq!(run(&["stats", "--input", missing.to_str().unwrap()]).status.code(), Some(2));

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "a b\nb c -1\n").unwrap();
    assert_eq!(run(&["stats", "--input", bad.to_str().unwrap(), "--boundary", "a"]).status.code(), Some(2));
}

#[test]
fn verify_passes_on_square_cycle() {
    let c4 = data("c4.txt");
    let out = run(&["verify", "--input", c4.to_str().unwrap(), "--samples", "2e4", "--workers", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["failures"], 0);
    assert_eq!(v["chi_square"].as_array().unwrap().len(), 2);
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["pass"] == true));
}

#[test]
fn verify_failure_exits_4() {
    // at significance 1 every χ² test fails
    let path = data("c4.txt");
    let out = run(&["verify", "--input", path.to_str().unwrap(), "--samples", "100", "--significance", "1"]);
    assert_eq!(out.status.code(), Some(4));
    let v = json(&out);
    assert_eq!(v["failures"], 2);
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["pass"] == true));
    let out = run(&["verify", "--input", path.to_str().unwrap(), "--tolerance=-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_too_large_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.txt");
    // 6×5 grid: 30 vertices, 49 edges
    let mut text = String::new();
    for i in 0..6 {
        for j in 0..5 {
            if i + 1 < 6 {
                text += &format!("{i}_{j} {}_{j}\n", i + 1);
            }
            if j + 1 < 5 {
                text += &format!("{i}_{j} {i}_{}\n", j + 1);
            }
        }
    }
    std::fs::write(&path, text).unwrap();
    let out = run(&["verify", "--input", path.to_str().unwrap(), "--boundary", "0_0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sampling_is_byte_identical_for_a_seed() {
    let c4 = data("c4.txt");
    let args = ["sample", "--input", c4.to_str().unwrap(), "--seed", "7", "--samples", "5000", "--workers", "3", "--stat", "prob_pair:v1,v3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let mean = v["mean"].as_f64().unwrap();
    let se = v["stderr"].as_f64().unwrap();
    assert!((mean - 1.0 / 6.0).abs() < 4.0 * se);

    let mut records = args.to_vec();
    records.extend(["--format", "csv"]);
    let csv = run(&records);
    assert_eq!(String::from_utf8(csv.stdout).unwrap().lines().count(), 5001);
}

#[test]
fn sample_rejects_unknown_statistic() {
    let c4 = data("c4.txt");
    let out = run(&["sample", "--input", c4.to_str().unwrap(), "--stat", "median"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lattice_quantities() {
    let v = json(&run(&["lattice", "--family", "square", "--n", "16", "--quantity", "ell-star", "--json"]));
    let x = v["value"].as_f64().unwrap();
    assert!(x > 7.0 && x < 8.0);
    let v = json(&run(&["lattice", "--quantity", "rstar", "--dim", "3"]));
    assert!((v["value"].as_f64().unwrap() - 0.252731).abs() < 1e-5);
    let v = json(&run(&["lattice", "--quantity", "cd"]));
    assert!((v["value"].as_f64().unwrap() - 0.140577).abs() < 1e-5);
    let out = run(&["lattice", "--quantity", "rstar", "--dim", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["lattice", "--family", "kagome", "--quantity", "ell-star"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dual_on_map_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("square.json");
    let map = twoforest::lattice::free_patch(twoforest::lattice::LatticeFamily::Square, 3).unwrap();
    std::fs::write(&path, twoforest::io::to_json(&twoforest::io::MapJson::from_map(&map)).unwrap()).unwrap();
    let out = run(&["dual", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["mean_area"].as_f64().unwrap() - 56.0 / 41.0).abs() < 1e-12);
    assert!(v["second_moment_area"].as_f64().is_some());
    assert_eq!(v["face_table"].as_array().unwrap().len(), 5);
    let generated = run(&["dual", "--family", "square", "--n", "3"]);
    assert_eq!(json(&generated)["mean_area"], v["mean_area"]);
}

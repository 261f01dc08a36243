// Copyright 2026 The floquet-lindblad Authors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_floquet"))
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

fn manifest(dir: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap()
}

fn run(name: &str, extra: &[&str]) -> (tempfile::TempDir, std::process::Output) {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .arg("run")
        .arg(scenario(name))
        .arg("--out")
        .arg(dir.path())
        .args(extra)
        .output()
        .unwrap();
    (dir, out)
}

#[test]
fn list_models_names_builtins() {
    let out = bin().arg("list-models").output().unwrap();
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    for m in ["random-qubit", "driven-tls", "m3-counterexample"] {
        assert!(s.contains(m), "{s}");
    }
}

#[test]
fn validate_accepts_shipped_scenarios() {
    for f in fs::read_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")).unwrap() {
        let p = f.unwrap().path();
        let out = bin().arg("validate").arg(&p).output().unwrap();
        assert!(
            out.status.success(),
            "{}: {}",
            p.display(),
            String::from_utf8_lossy(&out.stdout)
        );
    }
}

#[test]
fn validate_reports_negative_rate_row() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.toml");
    fs::write(
        &p,
        r#"commands = ["floquet"]
[model]
builtin = "random-qubit"
rates = [
  { kind = "table", times = [0.0, 1.0, 2.0, 3.0], values = [1.0, 1.0, 1.0, -0.25] },
  { kind = "constant", value = 1.0 },
  { kind = "constant", value = 1.0 },
]
"#,
    )
    .unwrap();
    let out = bin().arg("validate").arg(&p).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("model.rates[0]") && s.contains("row 3"), "{s}");
}

#[test]
fn run_schema_error_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.toml");
    fs::write(
        &p,
        "commands = [\"floquet\"]\n[model]\nbuiltin = \"nonexistent\"\n",
    )
    .unwrap();
    let out = bin()
        .arg("run")
        .arg(&p)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn run_numeric_failure_exits_3() {
    // The qutrit generators do not commute, so the Kossakowski route refuses.
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("m3.toml");
    fs::write(
        &p,
        "commands = [{ kind = \"certify-divisibility\", method = \"kossakowski\" }]\n[model]\nbuiltin = \"m3-counterexample\"\n",
    )
    .unwrap();
    let out = bin()
        .arg("run")
        .arg(&p)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn tls_periodic_part_is_markovian() {
    let (dir, out) = run("tls-divisibility.toml", &["--grid", "48"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let m = manifest(dir.path());
    let r = &m["commands"][1]["results"];
    assert_eq!(r["markovian"], true, "{r}");
    assert_eq!(r["nonmarkovian_windows"], Value::Array(vec![]));
}

#[test]
fn constant_random_rates_have_empty_window_set() {
    let (dir, out) = run("random-constant.toml", &["--grid", "32"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let m = manifest(dir.path());
    for k in 0..2 {
        let r = &m["commands"][k]["results"];
        assert_eq!(r["nonmarkovian_windows"], Value::Array(vec![]), "{r}");
        assert_eq!(r["markovian"], true, "{r}");
    }
}

#[test]
fn m3_trajectory_final_periodic_spectrum_not_conjugation_symmetric() {
    let (dir, out) = run("m3-spectra.toml", &["--grid", "32"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read_to_string(dir.path().join("01-spectra-trajectory.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t [time],map [-],index [-],re [1],im [1]"
    );
    let last: Vec<(f64, f64)> = lines
        .filter(|l| l.contains(",periodic,"))
        .map(|l| l.split(',').collect::<Vec<_>>())
        .filter(|f| f[0].parse::<f64>().unwrap() == 4.32)
        .map(|f| (f[3].parse().unwrap(), f[4].parse().unwrap()))
        .collect();
    assert_eq!(last.len(), 9);
    // Every eigenvalue needs a conjugate partner for the spectrum to be symmetric.
    let worst = last
        .iter()
        .map(|&(re, im)| {
            last.iter()
                .map(|&(r2, i2)| (re - r2).hypot(im + i2))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0f64, f64::max);
    assert!(worst > 1e-3, "{worst}");
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let (a, oa) = run("random-qubit.toml", &["--grid", "16"]);
    let (b, ob) = run("random-qubit.toml", &["--grid", "16"]);
    assert!(oa.status.success() && ob.status.success());
    let mut names: Vec<_> = fs::read_dir(a.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert!(names.len() >= 6);
    for n in names {
        let x = fs::read(a.path().join(&n)).unwrap();
        let y = fs::read(b.path().join(&n)).unwrap();
        assert!(x == y, "{n:?} differs");
    }
}

#[test]
fn inline_scenario_runs() {
    let (dir, out) = run("inline-qubit.toml", &["--grid", "16", "--step", "0.001"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let m = manifest(dir.path());
    assert_eq!(m["model"]["name"], "inline");
    assert_eq!(
        m["commands"][1]["results"]["maps"]["lambda"]["all_cp"],
        true
    );
    let header = fs::read_to_string(dir.path().join("02-certify-cp.csv")).unwrap();
    assert!(header.starts_with("t [time],map [-],cp [-],min_choi_eig [1]"));
}

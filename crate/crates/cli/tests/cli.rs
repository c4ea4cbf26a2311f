use std::path::PathBuf;
use std::process::{Command, Output};

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn numrad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_numrad")).args(args).env_remove("NUMRAD_SEED").output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("numrad-cli-{}-{name}", std::process::id()))
}

fn report(args: &[&str], name: &str) -> (i32, Value) {
    let path = scratch(name);
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_owned();
    full.extend(["--report", &p]);
    let out = numrad(&full);
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("no report; stderr: {}", String::from_utf8_lossy(&out.stderr)));
    std::fs::remove_file(&path).ok();
    (out.status.code().unwrap(), serde_json::from_str(&text).unwrap())
}

#[test]
fn euclidean_radius_matches_eigenvalues() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let m: Vec<Vec<f64>> = (0..3).map(|_| (0..3).map(|_| rng.random_range(-1.0..1.0)).collect()).collect();
    let sym = DMatrix::from_fn(3, 3, |i, j| 0.5 * (m[i][j] + m[j][i]));
    let oracle = SymmetricEigen::new(sym).eigenvalues.iter().fold(0.0f64, |a, e| a.max(e.abs()));
    let matrix = serde_json::to_string(&m).unwrap();
    let (code, r) = report(&["radius", "--space", "l2", "--dim", "3", "--matrix", &matrix], "eig");
    assert_eq!(code, 0);
    let v = r["results"][0]["value"].as_f64().unwrap();
    assert!((v - oracle).abs() <= 1e-6, "{v} vs {oracle}");
}

#[test]
fn report_has_the_documented_fields() {
    let (code, r) = report(&["radius", "--space", "lp:4", "--matrix", "[[0,0],[1,0]]"], "fields");
    assert_eq!(code, 0);
    for key in ["command", "config", "results", "seed", "version", "timestamp"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    let e = &r["results"][0];
    for key in ["id", "verdict", "value", "gap", "witness", "tol", "margin"] {
        assert!(e.get(key).is_some(), "missing results[0].{key}");
    }
    let v = e["value"].as_f64().unwrap();
    assert!((v - 3f64.powf(0.75) / 4.0).abs() <= 1e-6, "{v}");
    assert_eq!(r["seed"], 42);
}

#[test]
fn exit_status_follows_the_verdict() {
    let shift = "[[0,0],[1,0]]";
    let swap = "[[0,1],[1,0]]";
    let (code, r) = report(&["check", "nr-parallel", "--space", "lp:4", "--a", shift, "--b", swap], "nrp");
    assert_eq!(code, 1);
    assert_eq!(r["results"][0]["verdict"], false);
    assert_eq!(numrad(&["check", "parallel", "--space", "l1", "--x", "[1,0]", "--y", "[0,1]"]).status.code(), Some(0));
    assert_eq!(numrad(&["check", "birkhoff", "--space", "l2", "--x", "[1,0]", "--y", "[0,1]"]).status.code(), Some(0));
    assert_eq!(
        numrad(&["check", "nr-birkhoff", "--space", "l2", "--dim", "2", "--a", "I", "--b", "I"]).status.code(),
        Some(1)
    );
    assert_eq!(numrad(&["check", "daugavet", "--space", "lp:3", "--dim", "2", "--matrix", "I"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["check", "nr-parallel", "--space", "l2", "--a", "I", "--y", "[1,0]"],
        vec!["check", "orthogonal", "--space", "l2", "--a", "I", "--b", "I"],
        vec!["radius", "--space", "lp:1", "--matrix", "I", "--dim", "2"],
        vec!["radius", "--space", "l2", "--matrix", "[[1,2],[3]]"],
        vec!["verify", "no-such-suite"],
    ] {
        let out = numrad(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn config_errors_name_the_offending_key() {
    let path = scratch("bad.json");
    std::fs::write(&path, r#"{"space": {"kind": "l2", "dim": 2}, "matrix": "I", "engine": {"gird": 64}}"#).unwrap();
    let out = numrad(&["radius", "--config", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("engine.gird"), "{err}");
}

#[test]
fn seed_precedence() {
    let path = scratch("seed.json");
    std::fs::write(&path, r#"{"space": {"kind": "lp:3", "dim": 2}, "matrix": [[1,2],[0,1]], "engine": {"seed": 7}}"#)
        .unwrap();
    let cfg = path.to_str().unwrap();
    let (_, from_config) = report(&["radius", "--config", cfg], "s1");
    let (_, from_flag) = report(&["radius", "--config", cfg, "--seed", "11"], "s2");
    std::fs::remove_file(&path).ok();
    assert_eq!(from_config["seed"], 7);
    assert_eq!(from_flag["seed"], 11);

    let out = Command::new(env!("CARGO_BIN_EXE_numrad"))
        .args(["radius", "--space", "l2", "--matrix", "I", "--dim", "2", "--report", scratch("s3").to_str().unwrap()])
        .env("NUMRAD_SEED", "9")
        .output()
        .unwrap();
    assert!(out.status.success());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(scratch("s3")).unwrap()).unwrap();
    std::fs::remove_file(scratch("s3")).ok();
    assert_eq!(r["seed"], 9);
}

#[test]
fn complex_operands_and_sweeps() {
    let (code, r) = report(
        &[
            "check",
            "nr-birkhoff",
            "--space",
            "l2",
            "--field",
            "complex",
            "--a",
            "I",
            "--b",
            "[[0,0],[[1,1],1]]",
            "--sweep",
        ],
        "cplx",
    );
    assert_eq!(code, 0, "{r}");
    let sweep = &r["results"][0]["sweep"];
    assert_eq!(sweep["parameter"], "alpha");
    assert_eq!(sweep["points"].as_array().unwrap().len(), sweep["values"].as_array().unwrap().len());
}

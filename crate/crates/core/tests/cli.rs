use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_compacton-lab")).args(args).env_remove("COMPACTON_LAB_TOLERANCE").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const LINE: [&str; 14] = ["--a", "1", "--b", "1", "--s", "1", "--m", "2", "--n", "2", "--mu", "1", "--nu", "1"];
const COS: [&str; 12] = ["--a", "1", "--b", "1", "--m", "2", "--n", "2", "--nu", "0.75", "--family", "CosCompacton"];

fn with<'a>(base: &[&'a str], extra: &[&'a str]) -> Vec<&'a str> {
    base.iter().chain(extra).copied().collect()
}

#[test]
fn classify_line_compactons() {
    let o = run(&with(&["classify"], &LINE));
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for f in ["LinCos", "LinSin", "LinMixed"] {
        assert!(out.contains(&format!("family {f}")), "{out}");
    }
    assert!(out.contains("family LinCos class WeakCompacton"));
}

#[test]
fn classify_cos_window() {
    let mut args = with(&["classify"], &LINE);
    *args.last_mut().unwrap() = "1.75";
    let o = run(&args);
    let out = stdout(&o);
    assert!(out.contains("family CosCompacton class Compacton"), "{out}");
    assert!(out.contains("family SinCompacton class Compacton"), "{out}");
}

#[test]
fn classify_rejects_zero_power() {
    let mut args = with(&["classify"], &LINE);
    args[8] = "0";
    assert_eq!(run(&args).status.code(), Some(2));
    assert_eq!(run(&["classify", "--a", "1", "--bogus"]).status.code(), Some(2));
}

#[test]
fn classify_json() {
    let o = run(&with(&["classify", "--format", "json"], &LINE));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["families"].as_array().unwrap().len(), 3);
}

#[test]
fn profile_csv() {
    let o = run(&with(&["profile", "--samples", "11"], &COS));
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("xi,u"));
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[5], (0.0, 1.0));
    assert!((rows[10].0 - 1.1 * 2.0 * std::f64::consts::PI).abs() < 1e-11);
    for (x, u) in &rows {
        if x.abs() > 2.0 * std::f64::consts::PI {
            assert_eq!(*u, 0.0);
        }
    }
    assert!(out.contains("0.000000000000e+00,1.000000000000e+00\n"));
}

#[test]
fn profile_json_metadata() {
    let o = run(&[
        "profile", "--a", "2", "--b", "0.5", "--m", "3", "--n", "3", "--nu", "0", "--family", "LinMixed", "--format", "json",
    ]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let l = v["half_width"].as_f64().unwrap();
    assert!((l - 0.5 * 4.4934094579).abs() < 1e-9);
    assert_eq!(v["sign_class"], "SignChanging");
    assert_eq!(v["p"], "2/3");
    assert!(v.get("theta").is_some() && v.get("speed").is_some());
}

#[test]
fn profile_errors() {
    let parity = ["profile", "--a", "1", "--b", "1", "--m", "2", "--n", "2", "--nu", "0", "--family", "LinMixed"];
    assert_eq!(run(&parity).status.code(), Some(4));
    let invalid = ["profile", "--a", "1", "--b", "1", "--m", "2", "--n", "2", "--nu", "1", "--family", "LinCos"];
    assert_eq!(run(&invalid).status.code(), Some(3));
}

#[test]
fn profile_output_is_deterministic_and_atomic() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("a.csv");
    let p2 = dir.path().join("b.csv");
    run(&with(&["profile", "--with-v", "--out", p1.to_str().unwrap()], &COS));
    run(&with(&["profile", "--with-v", "--out", p2.to_str().unwrap()], &COS));
    let a = std::fs::read(&p1).unwrap();
    assert_eq!(a, std::fs::read(&p2).unwrap());
    assert!(String::from_utf8(a).unwrap().starts_with("xi,u,V\n"));

    // a failing run leaves nothing behind
    let bad = dir.path().join("bad.csv");
    let o = run(&[
        "profile", "--a", "1", "--b", "1", "--m", "2", "--n", "2", "--nu", "0", "--family", "LinMixed", "--out",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(4));
    assert!(!bad.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn verify_cosine_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = run(&with(&["verify", "--out", path.to_str().unwrap()], &COS));
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["all_pass"], true);
    assert!(v["entries"].as_array().unwrap().len() >= 6);
}

#[test]
fn verify_line_cosine_fails_fourth_order() {
    let args = ["verify", "--a", "1", "--b", "1", "--m", "2", "--n", "2", "--nu", "0", "--family", "LinCos", "--checks", "weakform4"];
    let o = run(&args);
    assert_eq!(o.status.code(), Some(5));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let e = &v["entries"][0];
    assert_eq!(e["check_name"], "weakform4");
    assert_eq!(e["pass"], false);
    assert!(e["details"].as_str().unwrap().contains("A₁"));
}

#[test]
fn verify_rejects_unknown_check() {
    assert_eq!(run(&with(&["verify", "--checks", "bogus"], &COS)).status.code(), Some(2));
    assert_eq!(run(&with(&["verify", "--tol", "bogus=1"], &COS)).status.code(), Some(2));
}

#[test]
fn tolerance_env_scales_defaults() {
    let o = Command::new(env!("CARGO_BIN_EXE_compacton-lab"))
        .args(with(&["verify", "--checks", "residual"], &COS))
        .env("COMPACTON_LAB_TOLERANCE", "1e-6")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(5));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["tolerances"]["residual"].as_f64().unwrap() - 1e-11).abs() < 1e-20);
    let o = Command::new(env!("CARGO_BIN_EXE_compacton-lab"))
        .args(with(&["verify", "--checks", "residual"], &COS))
        .env("COMPACTON_LAB_TOLERANCE", "abc")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn quadrature_compare() {
    let o = run(&["quadrature", "--a", "1", "--b", "1", "--m", "2", "--n", "2", "--nu", "0.75", "--compare", "CosCompacton", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["compare"]["sup_deviation"].as_f64().unwrap() <= 1e-6);
    assert!((v["half_width"].as_f64().unwrap() - 2.0 * std::f64::consts::PI).abs() < 1e-7);
}

#[test]
fn quadrature_nonzero_e_warns() {
    let o = run(&["quadrature", "--constants", "1,0,0,1", "--m", "2", "--n", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["class"], "NotASolution");
    assert!(!v["warnings"].as_array().unwrap().is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn quadrature_without_root() {
    assert_eq!(run(&["quadrature", "--constants", "0,0,0,1", "--m", "2", "--n", "2"]).status.code(), Some(6));
    assert_eq!(run(&["quadrature", "--constants", "0,0,0,0", "--m", "2", "--n", "2"]).status.code(), Some(6));
    assert_eq!(run(&["quadrature", "--constants", "0,0,1", "--m", "2", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn roots_command() {
    let o = run(&["roots", "--count", "2"]);
    let out = stdout(&o);
    let vals: Vec<f64> = out.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert!((vals[0] - 4.4934094579).abs() < 1e-9);
    assert!((vals[1] - 7.7252518369).abs() < 1e-9);
    assert!((vals[2] - 1.8540746773).abs() < 1e-9);
    assert!((vals[3] - 2.6220575).abs() < 1e-7);
    assert_eq!(run(&["roots", "--count", "0"]).status.code(), Some(2));
}

#[test]
fn catalog_lists_all_families() {
    let o = run(&["catalog", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["families"].as_array().unwrap().len(), 18);
}

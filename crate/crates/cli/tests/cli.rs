use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const D1: f64 = 6.854101966249685;

fn mixlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mixlab"))
        .args(args)
        .env_remove("MIXLAB_INSTANCE")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn degrees_of_the_cat_map() {
    let out = mixlab(&["degrees", "--instance", "cat"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["schema"], "v1");
    let d: Vec<f64> = v["profile"]["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(d.len(), 3);
    assert!((d[0] - 1.0).abs() < 1e-9 && (d[1] - D1).abs() < 1e-9 && (d[2] - 1.0).abs() < 1e-9);
    assert_eq!(v["certificate"]["lo"], 1.0);
    assert!((v["certificate"]["hi"].as_f64().unwrap() - D1).abs() < 1e-9);
    assert!(v["refined"]["threshold"].is_null());
}

#[test]
fn degrees_exit_codes() {
    let id = mixlab(&["degrees", "--instance", "identity"]);
    assert_eq!(code(&id), 2);
    assert!(String::from_utf8_lossy(&id.stderr).contains("no unique peak"));
    assert_eq!(code(&mixlab(&["degrees", "--instance", "no-such-map"])), 1);
    assert_eq!(code(&mixlab(&["degrees"])), 1);

    let dir = tempfile::tempdir().unwrap();
    for bad in [
        "[{",
        "{}",
        r#"[{"type":"torus","label":"x","A":[[[1,0]]]}]"#,
        r#"[{"type":"action","label":"x","dim":1,"blocks":[{}]}]"#,
    ] {
        let path = write(dir.path(), "bad.json", bad);
        let out = mixlab(&["--catalog", &path, "degrees", "--instance", "x"]);
        assert_eq!(code(&out), 1, "{bad}");
    }
}

#[test]
fn env_overrides_flags() {
    let out = Command::new(env!("CARGO_BIN_EXE_mixlab"))
        .args(["degrees"])
        .env("MIXLAB_INSTANCE", "fibonacci")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["instance"], "fibonacci");
}

#[test]
fn kunneth_reports_and_refusals() {
    let out = mixlab(&["kunneth", "--instance", "cat"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let dom = v["dominant"]["radius"].as_f64().unwrap();
    assert!((dom - 46.97871376374779).abs() < 1e-6 * dom);
    assert_eq!(v["dominant_matches"], true);
    assert_eq!(v["others_within_ceiling"], true);
    assert_eq!(v["blocks"].as_array().unwrap().len(), 9);

    assert_eq!(code(&mixlab(&["kunneth", "--instance", "unipotent"])), 2);
    let frag = mixlab(&["kunneth", "--instance", "coxeter-e10"]);
    assert_eq!(code(&frag), 2);
    assert!(String::from_utf8_lossy(&frag.stderr).contains("H^{1,0}"));
}

#[test]
fn rate_slopes() {
    let diag = json(&mixlab(&["rate", "--instance", "toy-diagonal", "--n-max", "40"]));
    assert!((diag["rate"]["slope"].as_f64().unwrap() + 2f64.ln()).abs() < 1e-9);
    let cat = json(&mixlab(&["rate", "--instance", "cat"]));
    assert!((cat["rate"]["slope"].as_f64().unwrap() + 1.9248473002384139).abs() < 1e-6);
    assert_eq!(cat["slope_below_reference"], true);
    assert_eq!(cat["within_tolerance"], true);
    assert_eq!(code(&mixlab(&["rate", "--instance", "toy-jordan"])), 2);
    assert_eq!(code(&mixlab(&["rate", "--instance", "cat", "--tolerance", "0"])), 1);
}

#[test]
fn mix_finite_support_pair() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("run");
    let out = mixlab(&[
        "--out",
        out_dir.to_str().unwrap(),
        "mix",
        "--instance",
        "cat",
        "--samples",
        "5000",
        "--delta",
        "2",
        "--svg",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let bound: Value = serde_json::from_str(&fs::read_to_string(out_dir.join("bound.json")).unwrap()).unwrap();
    assert_eq!(bound["schema"], "v1");
    assert_eq!(bound["holds"], true);
    assert_eq!(bound["decayed_to_zero"], true);
    assert_eq!(bound["empirical_rate_odd"], "-inf");
    for key in ["fitted_A", "base", "empirical_rate_even", "delta", "beta", "beta_prime"] {
        assert!(bound.get(key).is_some(), "{key}");
    }
    assert!((bound["base"].as_f64().unwrap() - 1.85122958682192).abs() < 1e-12);
    let csv = fs::read_to_string(out_dir.join("correlations.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,value,abs_error,method"));
    assert_eq!(lines.next(), Some("0,0.5,0.0,exact"));
    assert_eq!(csv.lines().filter(|l| l.ends_with(",montecarlo")).count(), 31);
    let svg = fs::read_to_string(out_dir.join("correlations.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn mix_refusals() {
    assert_eq!(
        code(&mixlab(&["mix", "--instance", "cat", "--delta", "7", "--samples", "0"])),
        2
    );
    assert_eq!(
        code(&mixlab(&[
            "mix",
            "--instance",
            "cat",
            "--delta",
            "0.5",
            "--samples",
            "0"
        ])),
        2
    );
    assert_eq!(code(&mixlab(&["mix", "--instance", "unipotent", "--samples", "0"])), 2);
    assert_eq!(
        code(&mixlab(&["mix", "--instance", "coxeter-e10", "--samples", "0"])),
        2
    );
    assert_eq!(
        code(&mixlab(&["mix", "--instance", "cat", "--beta", "3", "--samples", "0"])),
        2
    );
}

#[test]
fn mix_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out_dir = dir.path().join(name);
        let args = [
            "--out",
            out_dir.to_str().unwrap(),
            "mix",
            "--instance",
            "cat-3211",
            "--radius",
            "1",
            "--samples",
            "3000",
            "--seed",
            "9",
            "--n-max",
            "12",
            "--svg",
        ];
        let out = mixlab(&args);
        assert_eq!(code(&out), 0);
        (
            out.stdout,
            ["correlations.csv", "bound.json", "mix.json", "correlations.svg"]
                .map(|f| fs::read(out_dir.join(f)).unwrap()),
        )
    };
    assert_eq!(run("a"), run("b"));
}

#[test]
fn validate_catalogs() {
    let out = mixlab(&["validate-catalog"]);
    assert_eq!(code(&out), 0);
    let labels: Vec<String> = json(&out)["instances"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| i["label"].as_str().unwrap().to_string())
        .collect();
    for l in ["cat", "identity", "coxeter-e10", "toy-jordan"] {
        assert!(labels.iter().any(|x| x == l), "{l}");
    }

    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "c.json",
        r#"[{"type":"torus","label":"m","A":[[[3,0],[1,0]],[[2,0],[1,0]]]}]"#,
    );
    let v = json(&mixlab(&["--catalog", &path, "validate-catalog"]));
    assert_eq!(v["instances"][0]["hyperbolic"], true);
    let dup = write(
        dir.path(),
        "d.json",
        r#"[{"type":"torus","label":"m","A":[[[1,0],[1,0]],[[1,0],[0,0]]]},{"type":"torus","label":"m","A":[[[1,0],[1,0]],[[1,0],[0,0]]]}]"#,
    );
    assert_eq!(code(&mixlab(&["--catalog", &dup, "validate-catalog"])), 1);
    let not_unit = write(
        dir.path(),
        "u.json",
        r#"[{"type":"torus","label":"m","A":[[[2,0],[0,0]],[[0,0],[1,0]]]}]"#,
    );
    assert_eq!(code(&mixlab(&["--catalog", &not_unit, "validate-catalog"])), 1);
}

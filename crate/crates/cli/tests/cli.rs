use std::path::Path;
use std::process::{Command, Output};

use hankel_cli::io::TensorFile;
use serde_json::Value;

fn hankel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hankel"))
        .args(args)
        .env_remove("HANKEL_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_then_from_file_is_bit_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert!(hankel(&[
        "gen",
        "random-strong",
        "4",
        "6",
        "--rank",
        "3",
        "--seed",
        "5",
        "-o",
        path_str(&a)
    ])
    .status
    .success());
    assert!(
        hankel(&["gen", "from-file", path_str(&a), "-o", path_str(&b)])
            .status
            .success()
    );
    let fa = TensorFile::read(&a).unwrap();
    let fb = TensorFile::read(&b).unwrap();
    assert_eq!(fa.generator.len(), 21);
    for (x, y) in fa.generator.iter().zip(&fb.generator) {
        assert_eq!(x.to_bits(), y.to_bits());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn seed_falls_back_to_environment() {
    let flag = hankel(&["gen", "random", "3", "3", "--seed", "42"]);
    let env = Command::new(env!("CARGO_BIN_EXE_hankel"))
        .args(["gen", "random", "3", "3"])
        .env("HANKEL_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(flag.stdout, env.stdout);
    let other = hankel(&["gen", "random", "3", "3", "--seed", "43"]);
    assert_ne!(flag.stdout, other.stdout);
}

#[test]
fn hilbert_avd_reproduces_table() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("hilbert45.json");
    assert!(hankel(&["gen", "hilbert", "4", "5", "-o", path_str(&f)])
        .status
        .success());
    let out = hankel(&[
        "--json",
        "avd",
        path_str(&f),
        "--gamma",
        "0.05555555555555555",
        "--tol",
        "1e-14",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    let poles: Vec<f64> = serde_json::from_value(v["poles"].clone()).unwrap();
    let alphas: Vec<f64> = serde_json::from_value(v["alphas"].clone()).unwrap();
    assert_eq!(poles.len(), 9);
    assert!((poles[0] - 0.9841).abs() < 5e-4 && (poles[8] - 0.0159).abs() < 5e-4);
    assert!((alphas[4] - 0.1651).abs() < 5e-4);
    assert_eq!(v["alpha_inf"].as_f64(), Some(0.0));
    assert_eq!(v["order"].as_u64(), Some(4));
}

#[test]
fn sos_on_first_example() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("ex1.json");
    std::fs::write(&f, r#"{"order":4,"dim":3,"generator":[1,0,1,0,1,0,1,0,1]}"#).unwrap();
    let out = hankel(&["--json", "sos", path_str(&f)]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["q"].as_u64(), Some(2));
    let terms: Vec<Vec<f64>> = serde_json::from_value(v["terms"].clone()).unwrap();
    assert_eq!(terms.len(), 2);
    let text = String::from_utf8(hankel(&["sos", path_str(&f)]).stdout).unwrap();
    assert!(text.contains("(x1^2 + 2*x1*x3 + x2^2 + x3^2)^2"), "{text}");
    assert!(text.contains("(2*x1*x2 + 2*x2*x3)^2"), "{text}");
}

#[test]
fn eval_methods_agree() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("ex1.json");
    std::fs::write(&f, r#"{"order":4,"dim":3,"generator":[1,0,1,0,1,0,1,0,1]}"#).unwrap();
    for method in ["naive", "fft", "conv"] {
        let out = hankel(&[
            "--json",
            "eval",
            path_str(&f),
            "--x",
            "1,1,1",
            "--method",
            method,
        ]);
        let v = json(&out)["value"].as_f64().unwrap();
        assert!((v - 41.0).abs() < 1e-12, "{method}: {v}");
    }
    let out = hankel(&[
        "--json",
        "eval",
        path_str(&f),
        "--x",
        "-1,0.5,2",
        "--verify",
    ]);
    assert!(json(&out)["verify"]["max_rel_diff"].as_f64().unwrap() < 1e-12);
}

#[test]
fn exit_codes_separate_rejection_from_numerical_failure() {
    let dir = tempfile::tempdir().unwrap();
    let indefinite = dir.path().join("ind.json");
    std::fs::write(
        &indefinite,
        r#"{"order":4,"dim":2,"generator":[1,0,-1,0,1]}"#,
    )
    .unwrap();
    let out = hankel(&["sos", path_str(&indefinite)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a strong Hankel tensor"));

    let short = dir.path().join("short.json");
    std::fs::write(&short, r#"{"order":4,"dim":3,"generator":[1,2]}"#).unwrap();
    assert_eq!(
        hankel(&["eval", path_str(&short), "--x", "1,2,3"])
            .status
            .code(),
        Some(2)
    );

    let odd = dir.path().join("odd.json");
    std::fs::write(&odd, r#"{"order":3,"dim":2,"generator":[1,0,0,1]}"#).unwrap();
    assert_eq!(hankel(&["avd", path_str(&odd)]).status.code(), Some(2));

    // a poor choice of the free entry leaves a coefficient that is not positive
    let hilbert = dir.path().join("h.json");
    assert!(
        hankel(&["gen", "hilbert", "4", "5", "-o", path_str(&hilbert)])
            .status
            .success()
    );
    assert_eq!(
        hankel(&["avd", path_str(&hilbert), "--tol", "1e-14", "--gamma", "10"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn second_property_on_planted_tensor() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("planted.json");
    assert!(hankel(&[
        "gen",
        "planted",
        "3",
        "3",
        "--poles",
        "0.5,-0.7,0.2",
        "--alphas",
        "1,2,0.5",
        "-o",
        path_str(&f)
    ])
    .status
    .success());
    let out = hankel(&[
        "--json",
        "verify",
        path_str(&f),
        "--property",
        "second",
        "--lift-starts",
        "20",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["verdict"].as_str(), Some("nonnegative-found"));
    assert_eq!(v["strong"].as_bool(), Some(true));
    assert_eq!(v["passed"].as_bool(), Some(true));
}

#[test]
fn first_property_on_matrix_lift() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("m.json");
    std::fs::write(&f, r#"{"order":2,"dim":5,"generator":[1,0,1,0,1,0,1,0,1]}"#).unwrap();
    let out = hankel(&[
        "--json",
        "verify",
        path_str(&f),
        "--property",
        "first",
        "--q",
        "2",
        "--lift-starts",
        "20",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["passed"].as_bool(), Some(true));
    assert_eq!(v["high_psd"].as_bool(), Some(true));
}

#[test]
fn heig_is_deterministic_under_seed() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("h.json");
    assert!(hankel(&["gen", "hilbert", "4", "4", "-o", path_str(&f)])
        .status
        .success());
    let a = hankel(&[
        "--json",
        "heig",
        path_str(&f),
        "--starts",
        "30",
        "--seed",
        "9",
    ]);
    let b = hankel(&[
        "--json",
        "heig",
        path_str(&f),
        "--starts",
        "30",
        "--seed",
        "9",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a)["search"]["min"]["lambda"].as_f64().unwrap() > 0.0);
}

#[test]
fn repro_examples_exit_zero() {
    for ex in ["1", "2", "3"] {
        let out = hankel(&["repro", ex]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stdout)
        );
    }
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use teamgroup::serialize_instance;
use teamgroup_testkit::{random_instance, GenConfig, NETWORK_1_JSON, NETWORK_2_JSON};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_teamgroup"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const NO_TEAM: &str = r#"{
  "skills": ["s", "r"],
  "individuals": [{"id": "u", "skills": ["s"]}],
  "tasks": [{"id": "t", "skills": ["r"], "profit": 3}],
  "compatibility": {"mode": "none"}
}"#;

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "good.json", NETWORK_1_JSON);
    let out = run(&["validate", "--input", p(&good)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());

    let bad = write(
        &dir,
        "bad.json",
        &NETWORK_1_JSON.replacen("\"PHP\"]}", "\"Rust\"]}", 1),
    );
    let out = run(&["validate", "--input", p(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1, "{text}");
    assert!(text.contains("Rust"));

    let out = run(&["validate", "--input", p(&dir.path().join("missing.json"))]);
    assert_eq!(out.status.code(), Some(2));

    let junk = write(&dir, "junk.json", "{ not json");
    assert_eq!(
        run(&["validate", "--input", p(&junk)]).status.code(),
        Some(2)
    );
}

#[test]
fn solve_worked_examples() {
    let dir = TempDir::new().unwrap();
    let net1 = write(&dir, "net1.json", NETWORK_1_JSON);
    let net2 = write(&dir, "net2.json", NETWORK_2_JSON);

    let doc = json(&run(&[
        "solve",
        "--input",
        p(&net2),
        "--algorithm",
        "exact",
    ]));
    assert_eq!(doc["profit"], 50.0);
    assert_eq!(doc["lp_bound"], Value::Null);
    assert_eq!(
        doc["assignments"],
        serde_json::json!([{"task": "t1", "team": ["a", "b", "c"]}])
    );

    let doc = json(&run(&[
        "solve",
        "--input",
        p(&net1),
        "--algorithm",
        "approx-tg",
        "--pricing",
        "exact",
    ]));
    assert_eq!(doc["profit"], 15.0);
    assert_eq!(doc["lp_bound"], 15.0);
    assert_eq!(doc["algorithm"], "approx-tg");
    assert!(doc["guarantee"].as_str().unwrap().starts_with("max{"));
    assert!(doc["iterations"].as_u64().unwrap() >= 1);

    let text = String::from_utf8(run(&["solve", "--input", p(&net1)]).stdout).unwrap();
    let order = [
        "profit",
        "lp_bound",
        "assignments",
        "algorithm",
        "guarantee",
        "iterations",
    ];
    let at: Vec<usize> = order
        .iter()
        .map(|k| text.find(&format!("\"{k}\"")).unwrap())
        .collect();
    assert!(at.windows(2).all(|w| w[0] < w[1]), "{text}");
    assert_eq!(doc.as_object().unwrap().len(), order.len());
}

#[test]
fn rand_round_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let net2 = write(&dir, "net2.json", NETWORK_2_JSON);
    let args = [
        "solve",
        "--input",
        p(&net2),
        "--algorithm",
        "rand-round",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bound_documents() {
    let dir = TempDir::new().unwrap();
    for (text, want) in [
        (NETWORK_2_JSON, 50.0),
        (NETWORK_1_JSON, 15.0),
        (NO_TEAM, 0.0),
    ] {
        let path = write(&dir, "inst.json", text);
        let doc = json(&run(&["bound", "--input", p(&path), "--pricing", "exact"]));
        assert_eq!(doc["lp_bound"], want);
        assert_eq!(doc["exact"], true);
        assert!(doc["columns"].is_u64() && doc["iterations"].is_u64());
    }
}

#[test]
fn error_exit_codes() {
    let dir = TempDir::new().unwrap();
    let net2 = write(&dir, "net2.json", NETWORK_2_JSON);
    assert_eq!(
        run(&["solve", "--input", p(&net2), "--pricing", "greedy"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["bound", "--input", p(&net2), "--pricing", "greedy"])
            .status
            .code(),
        Some(3)
    );
    let none = write(
        &dir,
        "none.json",
        &NETWORK_2_JSON.replace("\"connected\"", "\"none\""),
    );
    assert!(run(&["solve", "--input", p(&none), "--pricing", "greedy"])
        .status
        .success());

    let missing = dir.path().join("missing.json");
    assert_eq!(
        run(&["solve", "--input", p(&missing)]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["bound", "--input", p(&missing)]).status.code(),
        Some(2)
    );

    let bad = write(
        &dir,
        "bad.json",
        &NETWORK_1_JSON.replace("\"b\"]", "\"z\"]"),
    );
    assert_eq!(run(&["solve", "--input", p(&bad)]).status.code(), Some(2));

    let individuals: Vec<String> = (0..24)
        .map(|i| format!(r#"{{"id": "u{i:02}", "skills": ["s"]}}"#))
        .collect();
    let big = format!(
        r#"{{"skills": ["s"], "individuals": [{}], "tasks": [{{"id": "t", "skills": ["s"], "profit": 1}}], "compatibility": {{"mode": "none"}}}}"#,
        individuals.join(", ")
    );
    let big = write(&dir, "big.json", &big);
    assert_eq!(
        run(&["solve", "--input", p(&big), "--algorithm", "exact"])
            .status
            .code(),
        Some(1)
    );
    assert!(run(&["solve", "--input", p(&big)]).status.success());
}

#[test]
fn output_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let net2 = write(&dir, "net2.json", NETWORK_2_JSON);
    let target = dir.path().join("out.json");
    let out = run(&["solve", "--input", p(&net2), "--output", p(&target)]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let stdout = run(&["solve", "--input", p(&net2)]).stdout;
    assert_eq!(fs::read(&target).unwrap(), stdout);
}

#[test]
fn exact_dominates_other_algorithms() {
    let dir = TempDir::new().unwrap();
    for seed in 0..24u64 {
        let inst = random_instance(seed, &GenConfig::default());
        let path = write(&dir, "inst.json", &serialize_instance(&inst));
        let best = json(&run(&[
            "solve",
            "--input",
            p(&path),
            "--algorithm",
            "exact",
        ]))["profit"]
            .as_f64()
            .unwrap();
        for alg in ["approx-tg", "cand1", "cand2", "rand-round"] {
            let doc = json(&run(&["solve", "--input", p(&path), "--algorithm", alg]));
            let got = doc["profit"].as_f64().unwrap();
            assert!(got <= best + 1e-6, "seed {seed} {alg}: {got} > {best}");
            assert!(doc["lp_bound"].as_f64().unwrap() >= best - 1e-6);
        }
    }
}

//! The `eigdeg` binary: outputs and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn eigdeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eigdeg")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    assert_eq!(code(o), 0, "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn example_file(dir: &Path, id: u32) -> PathBuf {
    let path = dir.join(format!("ex{id}.json"));
    let o = eigdeg(&["example", &id.to_string(), "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    path
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn eigen_lists_eigensets() {
    let dir = TempDir::new().unwrap();
    let v = json(&eigdeg(&["eigen", s(&example_file(dir.path(), 1))]));
    let sets = v["eigensets"].as_array().unwrap();
    let lambdas: Vec<f64> = sets.iter().map(|e| e["lambda"].as_f64().unwrap()).collect();
    assert_eq!(lambdas, [-1.0, 1.0]);
    assert!(sets.iter().all(|e| e["algebraic_multiplicity"] == 1 && e["geometric_multiplicity"] == 1));

    let id = write(dir.path(), "id.json", r#"{"k":2,"L":[[1,0],[0,1]],"N":{"type":"constant","vector":[0,0]}}"#);
    let v = json(&eigdeg(&["eigen", s(&id)]));
    let sets = v["eigensets"].as_array().unwrap();
    assert_eq!(sets.len(), 1);
    assert_eq!(sets[0]["lambda"], 1.0);
    assert_eq!(sets[0]["algebraic_multiplicity"], 2);
    assert_eq!(sets[0]["geometric_multiplicity"], 2);
}

#[test]
fn malformed_problem_files_exit_2() {
    let dir = TempDir::new().unwrap();
    let cases = [
        r#"{"k":3,"L":[[1,0],[0,1]],"N":{"type":"constant","vector":[0,0]}}"#,
        r#"{"k":2,"L":[[1,0],[0,1]],"N":{"type":"constant","vector":[0,0]},"extra":1}"#,
        r#"{"k":2,"L":[[1,0],[0,1]],"N":{"type":"linear","matrix":[[1,0],[0,1]],"vector":[0,0]}}"#,
        r#"{"k":2,"L":[[1,0],[0,1]],"N":{"type":"cubic"}}"#,
        r#"{"k":2,"L":[[1,0],[0,1]],"N":{"type":"polynomial","components":[[{"coef":1,"exp":[1]}],[]]}}"#,
        r#"{"k":2,"L":[[1,0],[0,1]]"#,
    ];
    for (i, text) in cases.iter().enumerate() {
        let f = write(dir.path(), &format!("bad{i}.json"), text);
        assert_eq!(code(&eigdeg(&["eigen", s(&f)])), 2, "case {i}");
    }
    assert_eq!(code(&eigdeg(&["eigen", s(&dir.path().join("missing.json"))])), 2);
}

#[test]
fn degree_command() {
    let dir = TempDir::new().unwrap();
    let v = json(&eigdeg(&["degree", s(&example_file(dir.path(), 5)), "--lambda", "0"]));
    assert_eq!(v["eigenset_degree"], 0);

    let v = json(&eigdeg(&["degree", s(&example_file(dir.path(), 1)), "--lambda", "1", "--point", "1", "0"]));
    assert_eq!(v["point"]["formula"], 1);
    assert_eq!(v["point"]["oracle"], 1);

    let ex6 = example_file(dir.path(), 6);
    assert_eq!(code(&eigdeg(&["degree", s(&ex6), "--lambda", "1", "--point", "1", "0", "0"])), 4);
    // not an eigenvalue
    assert_eq!(code(&eigdeg(&["degree", s(&ex6), "--lambda", "3"])), 4);
    // wrong point length
    assert_eq!(code(&eigdeg(&["degree", s(&ex6), "--lambda", "1", "--point", "1", "0"])), 2);
}

#[test]
fn interval_degree_command() {
    let dir = TempDir::new().unwrap();
    let ex1 = example_file(dir.path(), 1);
    let d = |a: &str, b: &str| json(&eigdeg(&["interval-degree", s(&ex1), "--a", a, "--b", b]))["degree"].clone();
    assert_eq!(d("-2", "2"), 0);
    assert_eq!(d("0", "2"), 2);
    assert_eq!(d("2", "5"), 0);
    assert_eq!(code(&eigdeg(&["interval-degree", s(&ex1), "--a", "1", "--b", "2"])), 4);
}

#[test]
fn continue_command() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("b1.json");
    let v = json(&eigdeg(&[
        "continue",
        s(&example_file(dir.path(), 1)),
        "--start-lambda",
        "1",
        "--start-v",
        "1",
        "0",
        "--out",
        s(&out),
    ]));
    let b = &v["branches"][0];
    assert_eq!(b["classification"], "ClosedLoop");
    assert_eq!(b["trivial_solutions"].as_array().unwrap().len(), 4);
    let record: eigdeg::BranchRecord = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(record.points.len() as u64, b["points"].as_u64().unwrap());

    let ex2 = example_file(dir.path(), 2);
    let v = json(&eigdeg(&["continue", s(&ex2), "--start-lambda", "1", "--start-v", "1", "0"]));
    assert_eq!(v["branches"][0]["classification"], "UnboundedExceededBound(10)");

    let o = eigdeg(&["continue", s(&ex2), "--start-lambda", "0.5", "--start-v", "1", "0"]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("residual"));
}

#[test]
fn continue_writes_csv() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("b.csv");
    let ex5 = example_file(dir.path(), 5);
    json(&eigdeg(&["continue", s(&ex5), "--start-lambda", "2", "--start-v", "0", "0", "1", "--format", "csv", "--out", s(&out)]));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# {"));
    assert_eq!(lines.next().unwrap(), "s,lambda,v1,v2,v3");
    let rec = eigdeg::BranchRecord::read(eigdeg::Format::Csv, &mut text.as_bytes()).unwrap();
    assert!(!rec.solution_triples().unwrap().is_empty());
}

#[test]
fn eigenpairs_command() {
    let dir = TempDir::new().unwrap();
    let curves: [(u32, fn(f64, f64) -> f64); 2] =
        [(1, |s, l| s * s + l * l - 1.0), (2, |s, l| l * l - s * s - 1.0)];
    for (id, f) in curves {
        let out = dir.path().join(format!("e{id}.csv"));
        let o = eigdeg(&[
            "eigenpairs",
            s(&example_file(dir.path(), id)),
            "--smin=-3",
            "--smax=3",
            "--lmin=-3",
            "--lmax=3",
            "--res=40",
            "--out",
            s(&out),
        ]);
        assert_eq!(code(&o), 0);
        let mut r = csv::Reader::from_path(&out).unwrap();
        assert_eq!(r.headers().unwrap(), vec!["s", "lambda"]);
        let mut n = 0;
        for rec in r.records() {
            let rec = rec.unwrap();
            let (sv, lv): (f64, f64) = (rec[0].parse().unwrap(), rec[1].parse().unwrap());
            assert!(f(sv, lv).abs() < 1e-8, "example {id}: ({sv}, {lv})");
            n += 1;
        }
        assert!(n > 20);
    }
    // nonlinear N
    let ex4 = example_file(dir.path(), 4);
    let o = eigdeg(&["eigenpairs", s(&ex4), "--smin=-1", "--smax=1", "--lmin=-1", "--lmax=1"]);
    assert_eq!(code(&o), 4);
}

#[test]
fn verify_command() {
    let o = eigdeg(&["verify", "--all"]);
    let text = String::from_utf8_lossy(&o.stdout);
    assert_eq!(code(&o), 0, "{text}");
    assert!(text.contains("6/6 passed"));

    let o = eigdeg(&["verify", "--example", "5"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("even multiplicity: persistence not expected"));

    assert_eq!(code(&eigdeg(&["verify", "--example", "9"])), 2);
    assert_eq!(code(&eigdeg(&["verify"])), 2);
}

#[test]
fn probe_requires_seed() {
    let dir = TempDir::new().unwrap();
    let ex1 = example_file(dir.path(), 1);
    assert_eq!(code(&eigdeg(&["probe", s(&ex1), "--a", "0", "--b", "2"])), 2);
    let v = json(&eigdeg(&["probe", s(&ex1), "--a", "0", "--b", "2", "--seed", "3"]));
    assert_eq!(v["values"], serde_json::json!([2]));
    assert_eq!(v["violation"], false);
}

#[test]
fn example_files_reload() {
    let dir = TempDir::new().unwrap();
    for id in 1..=6 {
        let path = example_file(dir.path(), id);
        let prob = eigdeg::problem_file::load(&path).unwrap();
        let (expected, _) = eigdeg_core::examples::example(id).unwrap();
        assert_eq!(prob, expected);
    }
    assert_eq!(code(&eigdeg(&["example", "7"])), 2);
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_localclust"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Writes ring_of_cliques(20, 10) into `dir` and returns its path.
fn ring(dir: &Path) -> PathBuf {
    let path = dir.join("ring.el");
    let o = run(&["gen", "ring-of-cliques", "--cliques", "20", "--size", "10", "--out", path_str(&path)]);
    assert_eq!(o.status.code(), Some(0));
    path
}

#[test]
fn cluster_prints_json() {
    let dir = tempfile::tempdir().unwrap();
    let g = ring(dir.path());
    let o = run(&["cluster", "--graph", path_str(&g), "--method", "acl", "--seed", "5", "--alpha", "0.1", "--eps", "1e-6"]);
    let v = json(&o);
    for key in ["members", "cut", "volume", "conductance"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let members = v["members"].as_array().unwrap();
    assert!(members.iter().any(|m| m == 5));
    let c = v["cut"].as_f64().unwrap() / v["volume"].as_f64().unwrap().min(1840.0 - v["volume"].as_f64().unwrap());
    assert_eq!(c, v["conductance"].as_f64().unwrap());
}

#[test]
fn every_cluster_method_runs() {
    let dir = tempfile::tempdir().unwrap();
    let g = ring(dir.path());
    let seeds = dir.path().join("seeds.txt");
    std::fs::write(&seeds, "# seeds\n3 4\n").unwrap();
    let emb = dir.path().join("emb.csv");
    for method in ["acl", "l1reg", "crd"] {
        let o = run(&["cluster", "--graph", path_str(&g), "--method", method, "--seed-file", path_str(&seeds), "--embedding", path_str(&emb)]);
        json(&o);
        let text = std::fs::read_to_string(&emb).unwrap();
        assert!(text.starts_with("vertex,value\n"), "{method}");
    }
    let o = run(&["cluster", "--graph", path_str(&g), "--method", "nibble", "--seed", "4", "--target-volume", "92"]);
    let v = json(&o);
    assert_eq!(v["members"], serde_json::json!([0, 1, 2, 3, 4, 5, 6, 7, 8, 9]));
    let o = run(&["cluster", "--graph", path_str(&g), "--method", "crd", "--seeds", "4", "--format", "text"]);
    assert_eq!(stdout(&o), (0..10).map(|v| format!("{v}\n")).collect::<String>());
}

#[test]
fn improve_does_not_worsen_and_accepts_json_clusters() {
    let dir = tempfile::tempdir().unwrap();
    let g = ring(dir.path());
    let c = dir.path().join("c.txt");
    std::fs::write(&c, (0..=10).map(|v| format!("{v}\n")).collect::<String>()).unwrap();
    for method in ["mqi", "flowimprove", "simplelocal"] {
        let v = json(&run(&["improve", "--graph", path_str(&g), "--cluster", path_str(&c), "--method", method]));
        let trace = v["trace"].as_array().unwrap();
        assert!(v["conductance"].as_f64().unwrap() <= trace[0].as_f64().unwrap());
        let phi = v["conductance"].as_f64().unwrap();
        if method == "mqi" {
            // MQI can only shrink: clique 0 alone
            assert_eq!(phi, 2.0 / 92.0);
        } else {
            // growing into the neighbouring clique gives 2 / 184
            assert!(phi <= 2.0 / 92.0, "{method}: {phi}");
        }
        assert_eq!(v["complemented"], false);
    }
    let found = dir.path().join("found.json");
    let o = run(&["cluster", "--graph", path_str(&g), "--seed", "15", "--alpha", "0.1", "--out", path_str(&found)]);
    assert_eq!(o.status.code(), Some(0));
    json(&run(&["improve", "--graph", path_str(&g), "--cluster", path_str(&found)]));
}

#[test]
fn ncp_is_byte_identical_across_runs_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let g = ring(dir.path());
    let args = ["ncp", "--graph", path_str(&g), "--method", "acl", "--bins", "8", "--seeds-per-bin", "5", "--rng", "42"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    let b = run(&args);
    let one = run(&[&args[..], &["--threads", "1"]].concat());
    let eight = run(&[&args[..], &["--threads", "8"]].concat());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(one.stdout, eight.stdout);
    assert_eq!(a.stdout, one.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("bin_lo,bin_hi,method,seed,alpha,eps,rho,size,volume,cut,conductance\n"));
    let ten = text
        .lines()
        .skip(1)
        .find(|l| {
            let f: Vec<&str> = l.split(',').collect();
            f[0].parse::<usize>().unwrap() <= 10 && 10 <= f[1].parse::<usize>().unwrap()
        })
        .unwrap();
    assert!(ten.ends_with(",10,92,2,0.021739130434782608"), "{ten}");
}

#[test]
fn predict_and_eval() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("pp.el");
    let blocks = dir.path().join("blocks.csv");
    let o = run(&["gen", "planted", "--sizes", "30,30", "--p-in", "0.5", "--p-out", "0.02", "--rng", "3", "--blocks", path_str(&blocks), "--out", path_str(&g)]);
    assert_eq!(o.status.code(), Some(0));
    let labels = dir.path().join("labels.csv");
    std::fs::write(&labels, "0,0\n1,0\n30,1\n31,1\n").unwrap();
    let o = run(&["predict", "--graph", path_str(&g), "--labels", path_str(&labels)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let truth = std::fs::read_to_string(&blocks).unwrap();
    let correct = text
        .lines()
        .skip(1)
        .zip(truth.lines().skip(1))
        .filter(|(p, t)| p.split(',').nth(1) == t.split(',').nth(1))
        .count();
    assert!(correct >= 57, "{correct}/60 correct");

    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    std::fs::write(&a, "0\n1\n2\n").unwrap();
    std::fs::write(&b, "0\n1\n2\n").unwrap();
    let v = json(&run(&["eval", "--graph", path_str(&g), "--found", path_str(&a), "--target", path_str(&b)]));
    assert_eq!(v["precision"], 1.0);
    assert_eq!(v["recall"], 1.0);
    assert_eq!(v["precision_cardinality"], 1.0);
    assert_eq!(v["recall_cardinality"], 1.0);
}

#[test]
fn gen_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("small.el");
    let o = run(&["gen", "ring-of-cliques", "--cliques", "3", "--size", "3", "--out", path_str(&g)]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&run(&["stats", "--graph", path_str(&g)]));
    assert_eq!(v["n"], 9);
    assert_eq!(v["m"], 12);

    let pts = dir.path().join("pts.csv");
    let o = run(&["gen", "geometric", "--n", "300", "--radius", "0.1", "--rng", "5", "--points", path_str(&pts)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&pts).unwrap().lines().count(), 301);
    let again = run(&["gen", "geometric", "--n", "300", "--radius", "0.1", "--rng", "5"]);
    assert_eq!(again.stdout, o.stdout);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = ring(dir.path());
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["cluster", "--graph", path_str(&g), "--seed", "1", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["cluster", "--graph", "/no/such/file.el", "--seed", "1"]).status.code(), Some(1));
    assert_eq!(run(&["cluster", "--graph", path_str(&g)]).status.code(), Some(1));
    assert_eq!(run(&["cluster", "--graph", path_str(&g), "--seed", "1", "--alpha", "2"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["ncp", "--help"]).status.code(), Some(0));

    let bad = dir.path().join("bad.el");
    std::fs::write(&bad, "0 1\n1 2\n2 banana\n").unwrap();
    let o = run(&["stats", "--graph", path_str(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad.el") && err.contains("line 3"), "{err}");

    assert_eq!(run(&["cluster", "--graph", path_str(&g), "--seed", "100000"]).status.code(), Some(2));
}

#[test]
fn help_lists_defaults() {
    let o = run(&["cluster", "--help"]);
    let text = stdout(&o);
    for flag in ["--alpha", "--eps", "--rho", "--capacity", "--height", "--growth", "--target-volume", "--out"] {
        assert!(text.contains(flag), "{flag}");
    }
    assert!(text.contains("[default: 0.15]"));
}

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn edgebip(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edgebip")).args(args).output().expect("binary runs")
}

fn last_record(out: &Output) -> serde_json::Value {
    let text = String::from_utf8_lossy(&out.stdout);
    serde_json::from_str(text.lines().last().expect("a record")).expect("valid json")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

const C5: &str = "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n";
const K4: &str = "p edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n";

#[test]
fn solve_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write(dir.path(), "c5.graph", C5);
    let k4 = write(dir.path(), "k4.graph", K4);

    let out = edgebip(&["solve", "--input", &c5, "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = last_record(&out);
    assert_eq!(r["feasible"], true);
    assert_eq!(r["solution"].as_array().unwrap().len(), 1);

    let out = edgebip(&["solve", "--input", &k4, "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(last_record(&out)["feasible"], false);

    let out = edgebip(&["solve", "--input", &k4]);
    assert_eq!(last_record(&out)["cost"], 2);

    for engine in ["guo", "oracle"] {
        let out = edgebip(&["solve", "--input", &k4, "--k", "2", "--engine", engine]);
        assert_eq!(out.status.code(), Some(0), "{engine}");
    }
}

#[test]
fn malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.graph", "p edge 3 1\ne 1 9\n");
    let out = edgebip(&["solve", "--input", &bad, "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = edgebip(&["solve", "--input", &dir.path().join("missing.graph").display().to_string()]);
    assert_eq!(out.status.code(), Some(2));

    let ts = write(dir.path(), "deg.termsep", "p edge 3 2\ne 1 2\ne 1 3\nt 1 2\n");
    assert_eq!(edgebip(&["termsep", "--input", &ts]).status.code(), Some(2));
}

#[test]
fn termsep_engines_agree() {
    let dir = tempfile::tempdir().unwrap();
    let ts = write(dir.path(), "toy.termsep", "p edge 6 5\ne 5 1\ne 1 2\ne 2 3\ne 3 1\ne 3 6\nt 5 6\na 2\nk 2\n");
    let mut costs = Vec::new();
    for engine in ["branching", "guo", "oracle"] {
        let out = edgebip(&["termsep", "--input", &ts, "--engine", engine]);
        assert_eq!(out.status.code(), Some(0));
        let r = last_record(&out);
        assert!(r["a"].as_array().unwrap().contains(&serde_json::json!(2)), "seed honoured");
        costs.push(r["cost"].clone());
    }
    assert!(costs.windows(2).all(|w| w[0] == w[1]), "{costs:?}");
    assert_eq!(edgebip(&["termsep", "--input", &ts, "--k", "0"]).status.code(), Some(1));
}

#[test]
fn generate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.graph");
    let b = dir.path().join("b.graph");
    for p in [&a, &b] {
        let out = edgebip(&["generate", "--seed", "7", "--n", "12", "--k", "3", "--out", &p.display().to_string()]);
        assert!(out.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let out = edgebip(&["solve", "--input", &a.display().to_string()]);
    assert!(last_record(&out)["cost"].as_u64().unwrap() <= 3);

    let zero = dir.path().join("zero.graph");
    edgebip(&["generate", "--seed", "1", "--n", "10", "--k", "0", "--out", &zero.display().to_string()]);
    assert_eq!(last_record(&edgebip(&["solve", "--input", &zero.display().to_string()]))["cost"], 0);
}

#[test]
fn verify_and_bench() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().display().to_string();
    let out = edgebip(&["verify", "--input", &d]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());

    write(dir.path(), "c5.graph", C5);
    write(dir.path(), "k4.graph", K4);
    let out = edgebip(&["verify", "--input", &d]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().filter(|l| l.contains("\"ok\"")).count(), 2);

    let out = edgebip(&["bench", "--input", &d]);
    assert!(out.status.success());
    let r = last_record(&out);
    assert_eq!(r["kind"], "bench-summary");
    assert_eq!(r["instances"], 2);
}

#[test]
fn trace_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.graph", K4);
    let out_path = dir.path().join("out.jsonl");
    let out = edgebip(&["solve", "--input", &k4, "--k", "2", "--trace", "--out", &out_path.display().to_string()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&out_path).unwrap();
    assert!(text.lines().any(|l| l.contains("\"trace\"")));
    let last: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(last["kind"], "solve");
}

#[test]
fn records_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.graph", K4);
    let strip = |o: Output| {
        let mut v = last_record(&o);
        v.as_object_mut().unwrap().remove("wall_ms");
        v
    };
    assert_eq!(strip(edgebip(&["solve", "--input", &k4])), strip(edgebip(&["solve", "--input", &k4])));
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn eamod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eamod")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn build(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["build"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let out = eamod(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn build_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    for (args, dim) in [
        (vec!["d1", "--p", "3", "--k", "3"], 7),
        (vec!["dr", "--p", "3", "--k", "3", "-r", "2"], 21),
        (vec!["benson", "--p", "3", "--lambda", "0", "--mu", "1"], 3),
        (vec!["regular", "--p", "3", "--k", "2"], 9),
        (vec!["linear", "--p", "3", "--k", "2", "--span", "1,1"], 3),
    ] {
        let path = build(dir.path(), "m.json", &args);
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(v["format"], "eamod-v1");
        assert_eq!(v["dim"], dim, "{args:?}");
    }
    let out = eamod(&["build", "d1", "--p", "3", "--k", "2"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("dim 4"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("valid"));
}

#[test]
fn composite_builds() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let b = build(d, "b.json", &["benson", "--p", "3", "--lambda", "1", "--mu", "1"]);
    let t = build(d, "t.json", &["linear", "--p", "3", "--k", "1", "--span", "1"]);
    let cases: Vec<(Vec<&str>, u64)> = vec![
        (vec!["sum", "--input", b.to_str().unwrap(), "--with", b.to_str().unwrap()], 6),
        (vec!["tensor", "--input", b.to_str().unwrap(), "--with", b.to_str().unwrap()], 9),
        (vec!["wedge", "--input", b.to_str().unwrap(), "-r", "2"], 3),
        (vec!["dual", "--input", b.to_str().unwrap()], 3),
        (vec!["induce", "--input", t.to_str().unwrap(), "--k", "2", "--embed", "1,1"], 3),
    ];
    for (args, dim) in cases {
        let path = build(d, "out.json", &args);
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(v["dim"], dim, "{args:?}");
    }
}

#[test]
fn query_examples() {
    let dir = tempfile::tempdir().unwrap();
    let d1 = build(dir.path(), "d1.json", &["d1", "--p", "3", "--k", "3"]);
    let out = eamod(&["jordan", d1.to_str().unwrap(), "--alpha", "1,1,w", "--ext", "2"]);
    assert_eq!(json(&out)["type"], "[3][3][1]");

    let d22 = build(dir.path(), "d22.json", &["dr", "--p", "3", "--k", "2", "-r", "2"]);
    let out = eamod(&["variety", d22.to_str().unwrap(), "--poly", "pk", "--compare", "--ext", "2"]);
    let v = json(&out);
    assert_eq!(v["verdict"], "Equal");
    assert_eq!(v["points"].as_array().unwrap().len(), 10);

    let d21 = build(dir.path(), "d21.json", &["dr", "--p", "3", "--k", "3", "-r", "2"]);
    let out = eamod(&["decompose", d21.to_str().unwrap(), "--trials", "60", "--seed", "7"]);
    assert_eq!(json(&out)["status"], "NoSplitFound");

    let out = eamod(&["projective", d21.to_str().unwrap()]);
    assert_eq!(json(&out)["projective"], false);

    let out = eamod(&["green", d22.to_str().unwrap(), "--ext", "2"]);
    assert!(json(&out)["witness"].is_array());

    let out = eamod(&["generic", d1.to_str().unwrap(), "--ext", "4", "--trials", "24", "--seed", "7"]);
    assert_eq!(json(&out)["type"], "[3][3][1]");
}

#[test]
fn csv_output() {
    let dir = tempfile::tempdir().unwrap();
    let d22 = build(dir.path(), "d22.json", &["dr", "--p", "3", "--k", "2", "-r", "2"]);
    let out = eamod(&["variety", d22.to_str().unwrap(), "--ext", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "a1,a2,type,free");
    assert_eq!(lines.len(), 11);
}

#[test]
fn verify_exit_codes() {
    let out = eamod(&["verify", "--suite", "main-thm", "--p", "3", "--k", "2", "--ext", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["checks"][0]["pass"], true);

    let out = eamod(&["verify", "--suite", "basis-change", "--p", "5", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));

    // the p = 3 maximal-set check fails as documented
    let out = eamod(&["verify", "--suite", "jtd1", "--p", "3", "--k", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["checks"][0]["pass"], true);
    assert_eq!(v["checks"][1]["pass"], false);

    let out = eamod(&["verify", "--suite", "explore-k1modp", "--p", "3", "--k", "4", "--ext", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["checks"][0]["pass"].is_null());
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let d1 = build(dir.path(), "d1.json", &["d1", "--p", "3", "--k", "3"]);
    let out = eamod(&["jordan", d1.to_str().unwrap(), "--alpha", "1,1,x", "--ext", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 4"));
    let out = eamod(&["jordan", d1.to_str().unwrap(), "--alpha", "1,1,w"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(eamod(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(eamod(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(eamod(&["verify", "--suite", "main-thm", "--p", "3", "--k", "4"]).status.code(), Some(2));
    assert_eq!(eamod(&["build", "dr", "--p", "3", "--k", "2"]).status.code(), Some(2));
}

#[test]
fn bad_module_file_is_a_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"format":"eamod-v1","p":3,"k":1,"dim":1,"field":{"p":3,"m":1,"irr":[0,1]},"generators":[[[[1]]]]}"#).unwrap();
    let out = eamod(&["projective", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not nilpotent"));
}

#[test]
fn reports_are_reproducible_across_thread_counts() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_eamod"))
            .args(["verify", "--suite", "rank-lemma", "--p", "3", "--k", "3"])
            .env("EAMOD_THREADS", threads)
            .output()
            .unwrap()
    };
    let (a, b) = (run("1"), run("4"));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_eamod"))
        .args(["verify", "--suite", "basis-change"])
        .env("EAMOD_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

use pmdecomp::cli::run;
use serde_json::Value;
use std::path::Path;

/// Exit code, stdout and stderr of one invocation.
fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("pmdecomp").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let (code, out, err) = call(&all);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}{err}"));
    (code, v)
}

fn write(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_str().unwrap().to_string();
    let mut all = vec!["--out", path.as_str()];
    all.extend_from_slice(args);
    let (code, _, err) = call(&all);
    assert_eq!(code, 0, "{err}");
    path
}

#[test]
fn grid_matching_is_not_positive() {
    let dir = tempfile::tempdir().unwrap();
    let grid = write(dir.path(), "grid.json", &["gen", "grid"]);
    let (code, v) = json(&["check-positive", "--in", &grid, "--matching", "[[1,2,3],[4,5,6],[7,8,9]]"]);
    assert_eq!(code, 0);
    assert_eq!(v["positive"], false);
    assert_eq!(v["witness"]["walk"].as_array().unwrap().len(), 6);

    let (code, v) = json(&["walks", "--in", &grid, "--matching", "[[1,2,3],[4,5,6]]", "--root", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["positive"], true);
    assert_eq!(v["tree"]["root"], 1);
}

#[test]
fn decompose_then_verify_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "k6.json", &["decompose", "--complete", "6", "3"]);
    let (code, v) = json(&["verify", "--in", &path]);
    assert_eq!((code, v["valid"].clone(), v["parts"].clone()), (0, true.into(), 19.into()));

    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let part = doc["parts"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|p| p["edges"].as_array().unwrap().len() > 1)
        .unwrap();
    let first = part["edges"][0][0].to_string();
    part["certificate"]["weights"][first.as_str()] = "-100/1".into();
    std::fs::write(&path, doc.to_string()).unwrap();
    let (code, v) = json(&["verify", "--in", &path]);
    assert_eq!((code, v["valid"].clone()), (1, false.into()));
}

#[test]
fn pmd_methods_agree_on_a_loose_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(dir.path(), "c.json", &["gen", "loose-cycle", "--r", "3", "--m", "5"]);
    let (_, exact) = json(&["pmd", "--in", &c, "--exact"]);
    let (_, formula) = json(&["pmd", "--in", &c, "--formula"]);
    let (_, greedy) = json(&["pmd", "--in", &c, "--greedy"]);
    assert_eq!(exact["pmd"], 3);
    assert_eq!(formula["pmd"], 3);
    assert_eq!(formula["family"]["family"], "loose-cycle");
    assert!(greedy["parts"].as_u64().unwrap() >= 3);
}

#[test]
fn lss_script_and_classification() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", &["gen", "good-forest", "--edges", "4", "--r", "3"]);
    let (code, out, _) = call(&["lss", "--in", &f, "--d", "2", "--dialect", "m2"]);
    assert_eq!(code, 0);
    assert!(out.contains("I = ideal("));
    let (code, v) = json(&["lss", "--in", &f, "--d", "1", "--classify"]);
    assert_eq!((code, v["radical"].clone()), (0, true.into()));
}

#[test]
fn conjecture_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let report = write(dir.path(), "report.json", &["verify-conjecture", "--n-from", "4", "--n-to", "7"]);
    let (code, out, _) = call(&["verify", "--in", &report]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 4);
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(call(&["pmd", "--in", "x.json"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["verify", "--in", "/nonexistent/file.json"]).0, 1);
    let dir = tempfile::tempdir().unwrap();
    let grid = write(dir.path(), "grid.json", &["gen", "grid"]);
    assert_eq!(call(&["check-positive", "--in", &grid, "--matching", "[[1,2,3],[3,4,5]]"]).0, 1);
    assert_eq!(call(&["--help"]).0, 0);
}

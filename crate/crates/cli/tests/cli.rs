use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn torind(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torind")).args(args).output().expect("binary runs")
}

fn run(args: &[&str]) -> (i32, String) {
    let out = torind(args);
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

fn json_without_timings(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, stdout) = run(&full);
    let mut v: Value = serde_json::from_str(&stdout).expect("json report");
    v.as_object_mut().unwrap().remove("timings");
    (code, v)
}

#[test]
fn verify_complete_intersection_pair() {
    let (code, out) = run(&["verify", &path("complete_intersection.json"), &path("cyclic_pair.json"), "--cutoff", "10"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("statement: 2 ≤ ecodepth 2"), "{out}");
    assert!(out.contains("verdict: pass"));
}

#[test]
fn verify_after_one_reduction() {
    let (code, v) = json_without_timings(&["verify", &path("free_variable.json"), &path("cyclic_pair.json")]);
    assert_eq!(code, 0);
    let steps = v["result"]["steps"].as_array().unwrap();
    let reductions: Vec<&Value> = steps.iter().filter(|s| s["name"] == "reduction").collect();
    assert_eq!(reductions.len(), 1);
    assert_eq!(reductions[0]["detail"]["ecodepth_preserved"], true);
}

#[test]
fn ring_info_hypersurface() {
    let (code, out) = run(&["ring-info", &path("hypersurface.json")]);
    assert_eq!(code, 0);
    // K: R e -> R with e -> x; multiplication by x on {1, x} has rank 1, so
    // H_0 and H_1 both have dimension 2 - 1.
    assert!(out.contains("Koszul homology dims (1, 1)"), "{out}");
    assert!(out.contains("depth 0, ecodepth 1"), "{out}");
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ \"vars\": 1, ").unwrap();
    let out = torind(&["ring-info", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));

    std::fs::write(&bad, r#"{ "vars": 1, "gens": [[2]], "colour": 1 }"#).unwrap();
    assert_eq!(torind(&["ring-info", bad.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&bad, r#"{ "schema": "torind/9", "vars": 1, "gens": [[2]] }"#).unwrap();
    assert_eq!(torind(&["ring-info", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(torind(&["ring-info", "/nonexistent/ring.json"]).status.code(), Some(2));
}

#[test]
fn option_validation() {
    let ring = path("hypersurface.json");
    assert_eq!(torind(&["ring-info", &ring, "--cutoff", "0"]).status.code(), Some(2));
    assert_eq!(torind(&["ring-info", &ring, "--char", "12"]).status.code(), Some(2));
    assert_eq!(torind(&["ring-info", &ring, "--char", "101"]).status.code(), Some(0));
    let out = Command::new(env!("CARGO_BIN_EXE_torind")).args(["ring-info", &ring]).env("TORIND_THREADS", "zero").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_torind")).args(["ring-info", &ring]).env("TORIND_THREADS", "1").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_reports_are_reproducible() {
    let args = ["search", &path("square_zero.json"), "--cutoff", "6", "--seed", "11"];
    let (c1, a) = json_without_timings(&args);
    let (c2, b) = json_without_timings(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert_eq!(a["result"]["findings"].as_array().unwrap().len(), 0);
    assert_eq!(a["schema"], "torind/1");
    assert_eq!(a["p"], 32003);
}

#[test]
fn text_and_json_agree() {
    let ring = path("complete_intersection.json");
    let dir = tempfile::tempdir().unwrap();
    let modules = dir.path().join("kk.json");
    std::fs::write(&modules, r#"{ "modules": [ { "kind": "residue_field" }, { "kind": "residue_field" } ] }"#).unwrap();
    let m = modules.to_str().unwrap();
    let (code, text) = run(&["independence", &ring, m]);
    let (jcode, json) = json_without_timings(&["independence", &ring, m]);
    assert_eq!((code, jcode), (1, 1));
    assert_eq!(json["verdict"], "fail");
    assert!(text.contains("verdict: fail"));
    for w in json["witnesses"].as_array().unwrap() {
        assert!(text.contains(&format!("witness: {w}")), "{text}");
    }
    assert_eq!(json["witnesses"][0]["degree"], 1);
}

#[test]
fn out_file_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let out = torind(&["verify-dg", &path("exterior.json"), &path("dg_residue_field.json"), "--format", "json", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(v["statement"], "1 ≤ s = 1");
    assert_eq!(v["verdict"], "pass");
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1, "temporary file left behind");
}

#[test]
fn dg_commands() {
    let (code, out) = run(&["dg-check", &path("exterior.json"), &path("dg_residue_field.json")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("s = amp H(A) = 1"));
    let (code, v) = json_without_timings(&["syzygy", &path("exterior.json"), &path("dg_residue_field.json"), "--r", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["syzygy_profile"]["inf"], 1);
    assert_eq!(v["result"]["syzygy_profile"]["amp"], 0);
    // The algebra itself is perfect, so the DG bound does not apply to it.
    let dir = tempfile::tempdir().unwrap();
    let free = dir.path().join("free.json");
    std::fs::write(&free, r#"{ "kind": "algebra", "shift": 0 }"#).unwrap();
    let (code, out) = run(&["verify-dg", &path("exterior.json"), free.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("perfect"), "{out}");
}

#[test]
fn module_commands() {
    let ring = path("complete_intersection.json");
    let pair = path("cyclic_pair.json");
    let (code, out) = run(&["tor", &ring, &pair, "--cutoff", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("[1, 0, 0, 0, 0]"), "{out}");
    let (code, out) = run(&["resolve", &path("hypersurface.json"), &path("residue_field.json"), "--cutoff", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("betti [1, 1, 1, 1, 1, 1]"), "{out}");
    let (code, out) = run(&["reduce", &path("free_variable.json"), &pair]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("depth 1 -> 0, ecodepth 2 -> 2"), "{out}");
    let (code, _) = run(&["reduce", &ring, &pair]);
    assert_eq!(code, 1);
}

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewbrace")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

#[test]
fn info_reports() {
    let v = json(&["info", "c:4,2"]);
    assert_eq!(v["soc_order"], 2);
    assert_eq!(v["ann_order"], 2);
    assert_eq!(v["derived_order"], 2);
    assert_eq!(v["bicyclic"], false);
    assert_eq!(json(&["info", "trivial:cyclic:2"])["derived_order"], 1);
    assert_eq!(json(&["info", "bp:3"])["ann_order"], 3);
}

#[test]
fn multipliers() {
    assert_eq!(json(&["multiplier", "c:9,3"])["multiplier"], serde_json::json!([3]));
    assert_eq!(json(&["multiplier", "prod:c:3,3|c:4,2"])["multiplier"], serde_json::json!([2, 6]));
    assert_eq!(json(&["multiplier", "trivial:quaternion:8"])["multiplier"], serde_json::json!([2, 2, 2, 2]));
    assert_eq!(json(&["group-multiplier", "klein:4"])["multiplier"], serde_json::json!([2]));
    assert_eq!(json(&["h2b", "trivial:cyclic:2", "--modulus", "2"])["invariant_factors"], serde_json::json!([2, 2]));
}

#[test]
fn covers_isoclinism_and_exactness() {
    let v = json(&["covers", "trivial:cyclic:2"]);
    assert_eq!((v["count"].as_u64(), v["bound"].as_u64()), (Some(2), Some(2)));
    assert_eq!(json(&["isoclinic", "c:4,2", "bp:2"])["isoclinic"], true);
    assert_eq!(json(&["isoclinic", "trivial:cyclic:4", "c:4,2"])["isoclinic"], false);
    assert_eq!(json(&["hs-check", "c:9,3", "--modulus", "9"])["exact"], serde_json::json!([true, true, true, true]));
    assert_eq!(json(&["cover", "c:3,3"])["is_cover"], true);
}

#[test]
fn files_round_trip_and_output_is_deterministic() {
    let dir = std::env::temp_dir().join(format!("skewbrace-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let brace = dir.join("b3.json");
    let ext = dir.join("b3-ext.json");
    run(&["extension", "bp:3", "-o", ext.to_str().unwrap()]);
    let e: Value = serde_json::from_str(&std::fs::read_to_string(&ext).unwrap()).unwrap();
    std::fs::write(&brace, e["E"].to_string()).unwrap();
    assert_eq!(json(&["info", brace.to_str().unwrap()]), json(&["info", "bp:3"]));
    assert_eq!(json(&["hs-check", ext.to_str().unwrap()])["exact"], serde_json::json!([true, true, true, true]));
    let a = run(&["multiplier", "c:4,2"]).stdout;
    let b = run(&["multiplier", "c:4,2"]).stdout;
    assert_eq!(a, b);
    let pretty = run(&["info", "c:4,2", "--pretty"]).stdout;
    assert!(String::from_utf8(pretty).unwrap().contains("\n  \""));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["validate", "bp:3"]).status.code(), Some(0));
    assert_eq!(run(&["info", "bp:4"]).status.code(), Some(3));
    assert_eq!(run(&["info", "c:9,3", "--max-order", "5"]).status.code(), Some(2));
    assert_eq!(run(&["covers", "trivial:cyclic:3", "--max-classes", "2"]).status.code(), Some(2));
    let dir = std::env::temp_dir().join(format!("skewbrace-bad-{}.json", std::process::id()));
    std::fs::write(&dir, r#"{"order":2,"add":[[0,1],[1,0]],"circ":[[0,1],[1,1]]}"#).unwrap();
    let out = run(&["validate", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["valid"], false);
    std::fs::remove_file(&dir).unwrap();
}

#[test]
fn selftest_verb() {
    let out = run(&["selftest", "--filter", "multiplier"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 7);
    assert!(!text.contains("covers-of-zp"));
    let bad = run(&["selftest", "--filter", "bicyclic-multipliers", "--corrupt"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8(bad.stdout).unwrap().contains("[FAIL]  1 bicyclic-multipliers"));
}

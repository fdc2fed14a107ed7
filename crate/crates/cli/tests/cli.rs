use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn tile(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tile")).args(args).env_remove("TILEKIT_ELEMENT_CAP").env_remove("TILEKIT_NODE_BUDGET").output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn payload(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn decide_z_exit_codes() {
    let yes = tile(&["decide-z", "[0,1,5]"]);
    assert_eq!(code(&yes), 0);
    assert_eq!(payload(&yes)["verdict"], "is_tile");
    let no = tile(&["decide-z", "[0,1,3]"]);
    assert_eq!(code(&no), 1);
    assert_eq!(payload(&no)["verdict"], "not_tile");
    assert_eq!(code(&tile(&["decide-z", "[0]"])), 2);
    assert_eq!(code(&tile(&["decide-z", "0,1"])), 2);
    assert_eq!(code(&tile(&["--cap", "4", "decide-z", "[0,1,9,12,40]"])), 3);
}

#[test]
fn refute_fixtures() {
    let out = tile(&["refute", "--fixture", "sphere:free:2:2", "--radius", "3"]);
    assert_eq!(code(&out), 1);
    assert_eq!(payload(&out)["verdict"], "not_tile");
    let out = tile(&["refute", "--fixture", "ball:free:2:1", "--radius", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(payload(&out)["verdict"], "unknown");
    assert_eq!(code(&tile(&["refute", "--fixture", "ball:free:2:2", "--radius", "4", "--budget", "5"])), 3);
    assert_eq!(code(&tile(&["refute", "--fixture", "nonsense", "--radius", "3"])), 2);
}

#[test]
fn ztile_analyze_and_alias() {
    let out = tile(&["ztile", "analyze", "[0,1,2,3,4,5]"]);
    assert_eq!(code(&out), 0);
    let v = payload(&out);
    assert_eq!(v["T1"], true);
    assert_eq!(v["T2"], true);
    assert_eq!(v["decide_z_tile"]["verdict"], "is_tile");
    let alias = Command::new(env!("CARGO_BIN_EXE_ztile")).args(["analyze", "[0,1,2,3,4,5]"]).output().unwrap();
    assert_eq!(alias.stdout, out.stdout);
}

#[test]
fn fixture_round_trips_through_refute_and_greedy() {
    let dir = tempfile::tempdir().unwrap();
    let tile_path = dir.path().join("tile.json");
    let out = tile(&["fixture", "ball:free:2:1"]);
    assert_eq!(code(&out), 0);
    std::fs::write(&tile_path, &out.stdout).unwrap();
    assert_eq!(code(&tile(&["refute", "--tile", path_str(&tile_path), "--radius", "2"])), 0);

    let cover = dir.path().join("cover.json");
    let dot = dir.path().join("cover.dot");
    let out = tile(&["greedy", "--tile", path_str(&tile_path), "--radius", "4", "--out", path_str(&cover), "--dot", path_str(&dot)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("graph tiling {"));
    let out = tile(&["verify", "--tiling", path_str(&cover), "--core", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(payload(&out)["covered"], true);
}

#[test]
fn bigtile_build_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let art = dir.path().join("tiling.json");
    let args = ["bigtile", "build", "--group", "free:2", "--k", r#"["","a","b"]"#, "--mode", "relaxed", "--r", "2", "--radius", "4", "--out", path_str(&art)];
    let out = tile(&args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let summary = payload(&out);
    assert_eq!(summary["core_radius"], 4);
    assert_eq!(summary["xi"].as_str().unwrap().len(), 18);
    let first = std::fs::read(&art).unwrap();
    assert_eq!(code(&tile(&args)), 0);
    assert_eq!(std::fs::read(&art).unwrap(), first, "byte-identical artifacts");

    let out = tile(&["verify", "--tiling", path_str(&art), "--core", "4"]);
    assert_eq!(code(&out), 0);
    let out = tile(&["verify", "--tiling", path_str(&art), "--core", "5"]);
    assert_eq!(code(&out), 1, "the truncation only promises its core");
}

#[test]
fn bigtile_input_errors() {
    let base = ["bigtile", "build", "--radius", "2"];
    let with = |extra: &[&str]| tile(&base.iter().chain(extra).copied().collect::<Vec<_>>());
    assert_eq!(code(&with(&["--k", "[\"\",\"a\"]", "--mode", "paper", "--r", "3"])), 2);
    assert_eq!(code(&with(&["--k", "[\"\",\"ab\"]", "--r", "2"])), 2);
    assert_eq!(code(&with(&["--k", "not json"])), 2);
    assert_eq!(code(&with(&["--group", "z", "--k", "[\"\",\"a\"]"])), 2);
    assert_eq!(code(&with(&["--k", "[\"\",\"a\"]", "--budget", "1"])), 3);
    let single = with(&["--k", "[\"b\"]"]);
    assert_eq!(code(&single), 0);
    assert_eq!(payload(&single)["tile"]["elements"], serde_json::json!(["b", "ba"]));
}

#[test]
fn group_ball_and_caps() {
    let out = tile(&["group", "ball", "--group", "free:2", "--radius", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(payload(&out)["elements"], serde_json::json!(["", "a", "A", "b", "B"]));
    assert_eq!(code(&tile(&["--cap", "10", "group", "ball", "--group", "free:2", "--radius", "3"])), 3);
    let env = Command::new(env!("CARGO_BIN_EXE_tile"))
        .args(["group", "ball", "--group", "free:2", "--radius", "3"])
        .env("TILEKIT_ELEMENT_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(3));
}

#[test]
fn dot_export_is_limited() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("big.dot");
    let out = tile(&["greedy", "--fixture", "ball:free:2:1", "--radius", "8", "--dot", path_str(&dot)]);
    assert_eq!(code(&out), 2);
    assert!(!dot.exists());
}

#[test]
fn output_keys_are_sorted() {
    let out = tile(&["decide-z", "[0,1,5]"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let keys: Vec<&str> = text.lines().filter(|l| l.starts_with("  \"")).map(|l| l.trim().split('"').nth(1).unwrap()).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

use std::process::{Command, Output};

use serde_json::Value;

fn seaweed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seaweed")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn build_worked_example() {
    let out = seaweed(&["build", "--a", "3,1,5", "--b", "2,6,1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verified"], true);
    assert_eq!(v["dim_n"], 19);
    assert_eq!(v["orientation"], "<,>,>,<");
    // canonical output survives a parse and re-serialisation unchanged
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(text.ends_with("}\n") && !text.contains("\r"));
    let report = seaweed_core::io::report_from_json(&text).unwrap();
    assert_eq!(seaweed_core::io::report_to_json(&report).unwrap(), text);
}

#[test]
fn build_levi_case() {
    let out = seaweed(&["build", "--a", "9", "--b", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dim_n"], 0);
    assert!(v["richardson"].as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap()).all(|x| x == 0));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["build", "--a", "3,1,5", "--b", "2,6"][..],
        &["build", "--a", "3,x", "--b", "4"],
        &["build", "--a", "3,1,5", "--b", "2,6,1", "--n", "8"],
        &["module-ops", "--delta-dim", "1", "--orientation", "x"],
        &["module-ops", "--delta-dim", "1,2", "--orientation", ""],
        &["sweep", "--n", "9"],
        &["sweep", "--n", "3", "--jobs", "0"],
        &["frobnicate"],
    ] {
        assert_eq!(seaweed(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_matrix_file() {
    let dir = std::env::temp_dir().join(format!("seaweed-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.txt");
    std::fs::write(&good, "0 1\n0 0\n").unwrap();
    let out = seaweed(&["verify", "--a", "1,1", "--b", "2", "--matrix", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["ad_rank"], 1);
    let zero = dir.join("zero.txt");
    std::fs::write(&zero, "0 0\n0 0\n").unwrap();
    let out = seaweed(&["verify", "--a", "1,1", "--b", "2", "--matrix", zero.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let outside = dir.join("outside.txt");
    std::fs::write(&outside, "0 0\n1 0\n").unwrap();
    let out = seaweed(&["verify", "--a", "1,1", "--b", "2", "--matrix", outside.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["in_nilradical"], false);
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "0 1 2\n").unwrap();
    let out = seaweed(&["verify", "--a", "1,1", "--b", "2", "--matrix", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sweep_counts_and_jobs_independence() {
    let out = seaweed(&["sweep", "--n", "4", "--jobs", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((v["pairs"].as_u64(), v["verified"].as_u64()), (Some(64), Some(64)));
    let again = seaweed(&["sweep", "--n", "4", "--jobs", "3"]);
    assert_eq!(out.stdout, again.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_seaweed"))
        .args(["sweep", "--n", "4"])
        .env("SEAWEED_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(out.stdout, env.stdout);
    let one = json(&seaweed(&["sweep", "--n", "1"]));
    assert_eq!(one["pairs"], 1);
    let cumulative = json(&seaweed(&["sweep", "--n", "3", "--cumulative"]));
    assert_eq!(cumulative["pairs"], 1 + 4 + 16);
}

#[test]
fn oracle_is_deterministic() {
    let args = ["oracle", "--n", "5", "--samples", "30", "--pairs", "4", "--seed", "11"];
    let a = seaweed(&args);
    let b = seaweed(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["violations"], 0);
    let empty = seaweed(&["oracle", "--n", "4", "--samples", "0", "--pairs", "3"]);
    assert_eq!(empty.status.code(), Some(0));
}

#[test]
fn module_ops_worked_example() {
    let out = seaweed(&["module-ops", "--delta-dim", "1,2,1,3,2", "--orientation", "<,>,>,<"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let supports: Vec<Value> = v["summands"].as_array().unwrap().iter().map(|s| s["support"].clone()).collect();
    assert_eq!(supports, [serde_json::json!([2, 3, 4]), serde_json::json!([1, 2, 4, 5]), serde_json::json!([4, 5])]);
    assert_eq!(v["diagram"]["edges"].as_array().unwrap().len(), 6);

    let unit = json(&seaweed(&["module-ops", "--delta-dim", "0,0,1,0,0", "--orientation", "<,>,>,<"]));
    assert_eq!(unit["summands"].as_array().unwrap().len(), 1);

    // the representation output can be fed back in for analysis
    let dir = std::env::temp_dir().join(format!("seaweed-ops-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m.json");
    std::fs::write(&path, serde_json::to_string(&v["representation"]).unwrap()).unwrap();
    let a = json(&seaweed(&["module-ops", "--input", path.to_str().unwrap()]));
    assert_eq!(a["delta_dim"], serde_json::json!([1, 2, 1, 3, 2]));
    assert_eq!(a["ext1_self"], 0);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn diagram_formats() {
    let dot = seaweed(&["diagram", "--a", "3,1,5", "--b", "2,6,1"]);
    assert_eq!(dot.status.code(), Some(0));
    let text = String::from_utf8(dot.stdout).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches(" -> ").count(), 6);
    let j = json(&seaweed(&["diagram", "--delta-dim", "1,1", "--orientation", "<", "--format", "json"]));
    assert_eq!(j["diagram"]["nodes"].as_array().unwrap().len(), 2);
    assert_eq!(j["diagram"]["edges"].as_array().unwrap().len(), 1);
}

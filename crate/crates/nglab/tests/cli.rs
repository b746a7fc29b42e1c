use std::process::{Command, Output};

use serde_json::Value;

fn nglab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nglab")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn census_q3_t2() {
    let out = nglab(&["census", "--q", "3", "--t", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)[0];
    assert_eq!((r["n"].as_u64(), r["edges"].as_u64(), r["loops"].as_u64()), (Some(6), Some(5), Some(2)));
    assert_eq!(r["schema"], "nglab-output/1");
}

#[test]
fn verify_pairs_q5_t3() {
    let out = nglab(&["verify", "--theorem", "1a", "--q", "5", "--t", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)[0];
    assert_eq!(r["mismatches"], 0);
    assert_eq!(r["checked"], 4800);
}

#[test]
fn find_k46_q7() {
    let out = nglab(&["find-k46", "--q", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)[0];
    assert_eq!(r["left"].as_array().unwrap().len(), 4);
    assert_eq!(r["right"].as_array().unwrap().len(), 6);
}

#[test]
fn exit_codes() {
    assert_eq!(nglab(&["census", "--q", "6"]).status.code(), Some(3));
    assert_eq!(nglab(&["deg", "--q", "5", "--vertices", "0:9"]).status.code(), Some(3));
    let out = nglab(&["count-subgraphs", "--q", "5", "--name", "C4", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(!out.stderr.is_empty());
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_nglab"))
        .args(["count-subgraphs", "--q", "3", "--name", "K3"])
        .env("NGLAB_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn csv_output() {
    let out = nglab(&["--csv", "weil-check", "--q", "5", "--all-pairs"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 17);
    assert!(lines[0].starts_with("bound,branch,c1,c2,command"));
}

#[test]
fn config_file_supplies_flags() {
    let dir = std::env::temp_dir().join(format!("nglab-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.cfg");
    std::fs::write(&path, "# census defaults\nq = 3\nt = 2\n").unwrap();
    let out = nglab(&["census", "--config", path.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)[0]["n"], 6);
}

#[test]
fn sampled_output_repeats_for_a_seed() {
    let args = ["deg", "--q", "5", "--t", "4", "--extrema", "3", "--samples", "500", "--seed", "9"];
    let a = nglab(&args);
    let b = nglab(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn degree_of_a_triple_matches_enumeration() {
    let out = nglab(&["deg", "--q", "5", "--t", "3", "--vertices", "0:1,1:1,2:3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)[0];
    assert_eq!(r["degree"], r["brute_force"]);
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn rlsc(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rlsc"))
        .current_dir(dir)
        .env_remove("RLSC_WORK_LIMIT")
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn entry<'a>(report: &'a Value, method: &str) -> &'a Value {
    report["result"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["method"] == method)
        .unwrap_or_else(|| panic!("no {method} entry"))
}

fn tmp() -> (TempDir, PathBuf) {
    let dir = TempDir::new().unwrap();
    let path = dir.path().to_path_buf();
    (dir, path)
}

#[test]
fn bounds_worked_example() {
    let (_g, dir) = tmp();
    let out = rlsc(&dir, &["bounds", "--k", "2", "--n", "10", "--d", "2", "--w", "3", "--method", "all"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(entry(&r, "lll")["t"]["exact"], 13);
    assert_eq!(entry(&r, "union")["t"]["exact"], 14);
    assert_eq!(entry(&r, "agarwal")["t"]["exact"], 24);
    assert_eq!(entry(&r, "lower")["t"]["exact"], 4);
    assert_eq!(entry(&r, "cheng")["guaranteed"], false);
    assert_eq!(r["tool"], "rlsc");
    assert_eq!(r["params"]["k"], 2);
}

#[test]
fn bounds_k_one_and_sweep() {
    let (_g, dir) = tmp();
    let r = json(&rlsc(&dir, &["bounds", "--k", "1", "--n", "10", "--d", "2", "--w", "3"]));
    assert_eq!(entry(&r, "lll")["t"]["exact"], 7);
    assert_eq!(entry(&r, "union")["t"]["exact"], 7);
    let r = json(&rlsc(&dir, &["bounds", "--k", "2", "--n", "10", "--d", "2", "--method", "lll"]));
    let lll = entry(&r, "lll");
    assert_eq!((lll["t"]["exact"].as_u64(), lll["w"].as_u64()), (Some(13), Some(2)));
}

#[test]
fn usage_errors_exit_two() {
    let (_g, dir) = tmp();
    assert_eq!(rlsc(&dir, &["bounds", "--k", "3", "--n", "2"]).status.code(), Some(2));
    assert_eq!(rlsc(&dir, &["bounds", "--k", "x", "--n", "2"]).status.code(), Some(2));
    assert_eq!(rlsc(&dir, &["frobnicate"]).status.code(), Some(2));
    let out = rlsc(&dir, &["construct", "--k", "3", "--n", "20", "--d", "5", "--t", "3", "--out", "m.rlsc"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("lower bound") && stderr(&out).contains("= 13"), "{}", stderr(&out));
    assert!(!dir.join("m.rlsc").exists());
}

#[test]
fn construct_identity_and_verify() {
    let (_g, dir) = tmp();
    let out = rlsc(&dir, &["construct", "--method", "identity", "--n", "5", "--out", "id5.rlsc"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = fs::read_to_string(dir.join("id5.rlsc")).unwrap();
    assert_eq!(text, "RLSC 1\n5 5 - 0 - 1\n10000\n01000\n00100\n00010\n00001\n");
    let out = rlsc(&dir, &["verify", "id5.rlsc", "--k", "3", "--mode", "exact"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = json(&out);
    let checks = r["result"]["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["verdict"]["result"] == "pass"));
    assert_eq!(checks.last().unwrap()["property"]["name"], "superimposed");
}

#[test]
fn construct_mt_is_certified() {
    let (_g, dir) = tmp();
    let out = rlsc(&dir, &["construct", "--k", "2", "--n", "10", "--d", "2", "--seed", "7", "--out", "c.rlsc"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(r["seed"], 7);
    assert_eq!(r["result"]["rows"], 13);
    assert_eq!(r["result"]["log"]["outcome"], "success");
    let out = rlsc(&dir, &["verify", "c.rlsc"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["checks"].as_array().unwrap().len(), 3);
}

#[test]
fn construct_budget_exhaustion_exits_three() {
    let (_g, dir) = tmp();
    let out = rlsc(
        &dir,
        &["construct", "--k", "3", "--n", "12", "--d", "1", "--w", "2", "--t", "9", "--seed", "1", "--max-resamples", "5", "--out", "m.rlsc", "--report", "r.json"],
    );
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    let r: Value = serde_json::from_str(&fs::read_to_string(dir.join("r.json")).unwrap()).unwrap();
    assert_eq!(r["result"]["log"]["outcome"], "budget_exhausted");
    assert!(!dir.join("m.rlsc").exists());
}

#[test]
fn generated_seed_is_echoed() {
    let (_g, dir) = tmp();
    let out = rlsc(&dir, &["construct", "--k", "2", "--n", "8", "--d", "1", "--out", "c.rlsc"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let seed = r["seed"].as_u64().expect("seed echoed");
    let inv: Vec<&str> = r["invocation"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    let pos = inv.iter().position(|&a| a == "--seed").unwrap();
    assert_eq!(inv[pos + 1], seed.to_string());
}

#[test]
fn verify_reports_runlength_witness() {
    let (_g, dir) = tmp();
    fs::write(dir.join("gap.rlsc"), "RLSC 1\n6 2 - - - -\n00\n00\n10\n01\n10\n01\n").unwrap();
    let out = rlsc(&dir, &["verify", "gap.rlsc", "--d", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    let witness = &r["result"]["checks"][0]["verdict"]["witness"];
    assert_eq!(witness["kind"], "runlength");
    assert_eq!(witness["column"], 0);
    assert_eq!(witness["rows"], serde_json::json!([2, 4]));
}

#[test]
fn verify_work_guard() {
    let (_g, dir) = tmp();
    rlsc(&dir, &["construct", "--method", "identity", "--n", "60", "--out", "big.rlsc"]);
    let out = rlsc(&dir, &["verify", "big.rlsc", "--k", "8"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("row operations"), "{}", stderr(&out));
    let out = Command::new(env!("CARGO_BIN_EXE_rlsc"))
        .current_dir(&dir)
        .env("RLSC_WORK_LIMIT", "100")
        .args(["verify", "big.rlsc", "--k", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_rlsc"))
        .current_dir(&dir)
        .env("RLSC_WORK_LIMIT", "none")
        .args(["verify", "big.rlsc", "--k", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_monte_carlo_never_passes() {
    let (_g, dir) = tmp();
    rlsc(&dir, &["construct", "--method", "identity", "--n", "8", "--out", "id.rlsc"]);
    let out = rlsc(&dir, &["verify", "id.rlsc", "--k", "3", "--mode", "monte-carlo", "--trials", "1000", "--seed", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let last = r["result"]["checks"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(last["verdict"]["result"], "estimated");
    assert_eq!(last["verdict"]["violations"], 0);
}

#[test]
fn parse_errors_exit_two_with_position() {
    let (_g, dir) = tmp();
    fs::write(dir.join("bad.rlsc"), "RLSC 1\n2 2 - - - -\n10\n0x\n").unwrap();
    let out = rlsc(&dir, &["verify", "bad.rlsc", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 4, column 2"), "{}", stderr(&out));
}

#[test]
fn simulate_modes() {
    let (_g, dir) = tmp();
    rlsc(&dir, &["construct", "--method", "identity", "--k", "3", "--n", "5", "--out", "id.rlsc"]);
    let out = rlsc(&dir, &["simulate", "id.rlsc", "--mode", "nagt", "--positives", ""]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(r["result"]["runs"][0]["recovered"], serde_json::json!([]));
    let out = rlsc(&dir, &["simulate", "id.rlsc", "--mode", "nagt", "--all-up-to", "2", "--aggregate-only"]);
    let r = json(&out);
    assert_eq!(r["result"]["aggregate"]["runs"], 16);
    assert_eq!(r["result"]["aggregate"]["exactness_rate"], 1.0);
    assert!(r["result"].get("runs").is_none());
    let out = rlsc(&dir, &["simulate", "id.rlsc", "--mode", "nagt", "--positives", "1,9"]);
    assert_eq!(out.status.code(), Some(2));
    let out = rlsc(&dir, &["simulate", "id.rlsc", "--mode", "nagt", "--random", "5", "--size", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["seed"].is_u64());
}

#[test]
fn simulate_refuses_uncertified_matrix() {
    let (_g, dir) = tmp();
    fs::write(dir.join("dup.rlsc"), "RLSC 1\n2 3 - - - -\n110\n001\n").unwrap();
    let out = rlsc(&dir, &["simulate", "dup.rlsc", "--mode", "nagt", "--k", "2", "--all-up-to", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not certified"));
    let out = rlsc(&dir, &["simulate", "dup.rlsc", "--mode", "nagt", "--k", "2", "--all-up-to", "1", "--unverified"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["result"]["verified"], false);
    assert!(r["result"]["aggregate"]["exactness_rate"].as_f64().unwrap() < 1.0);
}

#[test]
fn enumerate_examples() {
    let (_g, dir) = tmp();
    let out = rlsc(&dir, &["enumerate", "--t", "5", "--w", "2", "--d", "1", "--format", "text"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "count 6\n10100\n10010\n01010\n10001\n01001\n00101\n"
    );
    let out = rlsc(&dir, &["enumerate", "--t", "4", "--w", "3", "--d", "1", "--format", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "count 0\n");
    let out = rlsc(&dir, &["enumerate", "--t", "3", "--w", "0", "--d", "2", "--format", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "count 1\n000\n");
    let r = json(&rlsc(&dir, &["enumerate", "--t", "200", "--w", "12", "--d", "5", "--limit", "2"]));
    assert_eq!(r["result"]["truncated"], true);
    assert_eq!(r["result"]["vectors"].as_array().unwrap().len(), 2);
}

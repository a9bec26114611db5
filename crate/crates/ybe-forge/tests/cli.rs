use std::path::PathBuf;
use std::process::{Command, Output};

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("ybe-forge-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn run(args: &[&str], cache: &PathBuf) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ybe-forge"))
        .args(args)
        .env("YBE_FORGE_CACHE_DIR", cache)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn exit_codes() {
    let c = scratch("codes");
    assert_eq!(code(&run(&["verify", "--m", "2", "--n", "4"], &c)), 0);
    assert_eq!(code(&run(&["verify", "--m", "2", "--n", "4", "--perturb"], &c)), 1);
    assert_eq!(code(&run(&["rmatrix", "--m", "2", "--n", "4", "--a", "0"], &c)), 2);
    assert_eq!(code(&run(&["frobnicate"], &c)), 2);
    assert_eq!(code(&run(&["verify", "--m", "2", "--n", "4", "--suite", "nope"], &c)), 2);
    assert_eq!(code(&run(&["rmatrix", "--m", "2", "--n", "4", "--format", "dot"], &c)), 2);
    assert_eq!(code(&run(&["rmatrix", "--m", "2", "--n", "4", "--t", "1"], &c)), 3);
    // <-2>_- has a pole at z = q^2
    assert_eq!(code(&run(&["verify", "--m", "2", "--n", "4", "--z", "1296/625"], &c)), 3);
}

#[test]
fn rmatrix_output_is_deterministic_and_cached() {
    let c = scratch("cache");
    let args = ["rmatrix", "--m", "2", "--n", "4"];
    let first = run(&args, &c);
    assert_eq!(code(&first), 0);
    let cached: Vec<_> = std::fs::read_dir(&c).unwrap().collect();
    assert_eq!(cached.len(), 1);
    let second = run(&args, &c);
    let fresh = run(&["rmatrix", "--m", "2", "--n", "4", "--no-cache"], &c);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, fresh.stdout);
    let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["meta"]["m"], 2);
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
}

#[test]
fn out_flag_and_tpg_formats() {
    let c = scratch("out");
    let path = c.join("g.dot");
    let o = run(&["tpg", "--m", "2", "--n", "4", "--a", "2", "--format", "dot", "--out", path.to_str().unwrap()], &c);
    assert_eq!(code(&o), 0);
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("graph ttpg_m2_n4_a2_b2 {"));
    let o = run(&["decompose", "--m", "2", "--n", "4", "--a", "2", "--b", "1"], &c);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.is_object() || v.is_array());
}

use std::process::{Command, Output};

use serde_json::Value;

const INTRO_V: &str = "5,8,9,10,1,2,11,3,4,6,7";
const INTRO_W: &str = "1,4,5,8,2,3,9,6,10,11,7";
const SMALL: &str = r#"{"lambda":[5,5,5,5,2,2],"mu":[2,1],"marked":[{"point":[4,0],"r":3},{"point":[4,2],"r":2},{"point":[6,3],"r":2}]}"#;
const LARGE: &str = r#"{"lambda":[10,10,10,10,8,4,4,4,2,2],"mu":[2,2],
 "marked":[{"point":[4,0],"r":3},{"point":[5,2],"r":4},{"point":[5,6],"r":3},{"point":[8,6],"r":4},{"point":[10,8],"r":2}]}"#;

fn klreg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klreg"))
        .args(args)
        .env_remove("KLREG_BUDGET")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn intro_pair() {
    let out = klreg(&[
        "pair", "--v", INTRO_V, "--w", INTRO_W, "--oracle", "--render",
    ]);
    assert!(out.status.success());
    let j = json(&out);
    assert_eq!(j["regularity"], 4);
    assert_eq!(j["a_invariant"], -10);
    assert_eq!(j["oracle"]["verdict"], "AGREE");
}

#[test]
fn equal_pair_has_regularity_zero() {
    let out = klreg(&["pair", "--v", "3412", "--w", "3412"]);
    assert!(out.status.success());
    let j = json(&out);
    assert_eq!(j["regularity"], 0);
    assert_eq!(j["a_invariant"], 0);
}

#[test]
fn large_ladder_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("large.json");
    std::fs::write(&file, LARGE).unwrap();
    let out = klreg(&["ladder", "--file", file.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let j = json(&out);
    assert_eq!(j["regularity"], 7);
    assert_eq!(j["a_invariant"], -33);
    assert_eq!(j["weight"], 40);
}

#[test]
fn export_ideal() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("small.json");
    let m2 = dir.path().join("ideal.m2");
    std::fs::write(&file, SMALL).unwrap();
    let out = klreg(&[
        "ladder",
        "--file",
        file.to_str().unwrap(),
        "--export-ideal",
        m2.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let j = json(&out);
    assert_eq!(j["regularity"], 4);
    assert_eq!(j["exported"]["ladder_generators"], 17);
    assert_eq!(j["exported"]["kl_generators"], 35);
    let script = std::fs::read_to_string(&m2).unwrap();
    assert!(script.starts_with("--") && script.contains("I = ideal(") && script.contains("I == J"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        klreg(&["pair", "--v", "12x", "--w", "123"]).status.code(),
        Some(2)
    );
    assert_eq!(
        klreg(&["pair", "--v", "1234567891", "--w", "1234567891"])
            .status
            .code(),
        Some(2)
    );
    // 321 pattern
    assert_eq!(
        klreg(&["pair", "--v", "321", "--w", "123"]).status.code(),
        Some(3)
    );
    // w not below v
    assert_eq!(
        klreg(&["pair", "--v", "123", "--w", "213"]).status.code(),
        Some(3)
    );
    assert_eq!(
        klreg(&["pair", "--v", "123", "--w", "1234"]).status.code(),
        Some(3)
    );
    let starved = Command::new(env!("CARGO_BIN_EXE_klreg"))
        .args(["pair", "--v", INTRO_V, "--w", INTRO_W, "--oracle"])
        .env("KLREG_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(starved.status.code(), Some(4));
    assert_eq!(
        klreg(&["ladder", "--file", "/nonexistent/ladder.json"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn output_is_deterministic() {
    let args = [
        "pair",
        "--v",
        INTRO_V,
        "--w",
        INTRO_W,
        "--render",
        "--recurrence",
    ];
    assert_eq!(klreg(&args).stdout, klreg(&args).stdout);
    let sweep = ["sweep", "--n", "5", "--samples", "50", "--seed", "9"];
    assert_eq!(klreg(&sweep).stdout, klreg(&sweep).stdout);
}

#[test]
fn sweep_small_n() {
    let out = klreg(&["sweep", "--n", "4"]);
    assert!(out.status.success());
    let j = json(&out);
    assert_eq!(j["verdict"], "AGREE");
    assert!(j["checked"].as_u64().unwrap() > 0);
}

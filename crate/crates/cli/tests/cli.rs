use std::path::PathBuf;
use std::process::{Command, Output};

fn tropkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropkit"))
        .args(args)
        .env_remove("TROPKIT_MONOMIAL_CAP")
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn selftest_passes() {
    let out = tropkit(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(!text.contains("FAIL"));
    assert!(text.contains("6/6 checks passed"));
}

#[test]
fn selftest_json() {
    let out = tropkit(&["selftest", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 6);
}

#[test]
fn toy_kex_agrees() {
    let out = tropkit(&["kex", "--preset", "toy", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("agreement=true"));
}

#[test]
fn kex_json_is_reproducible() {
    let a = tropkit(&["--json", "kex", "--seed", "11"]);
    let b = tropkit(&["kex", "--seed", "11", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["transcript"]["agreement"], true);
    assert_eq!(v["transcript"]["alice_key"], v["transcript"]["bob_key"]);
    assert!(v["key_space_log10"].as_f64().unwrap() >= 30.0);
}

#[test]
fn seed_is_required() {
    assert_eq!(tropkit(&["kex"]).status.code(), Some(2));
    assert_eq!(tropkit(&["classical-attack"]).status.code(), Some(2));
    assert_eq!(tropkit(&["aut-keygen", "--out-pub", "a", "--out-priv", "b"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(tropkit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(tropkit(&["kex", "--seed", "x"]).status.code(), Some(2));
    assert_eq!(tropkit(&["kex", "--preset", "huge", "--seed", "1"]).status.code(), Some(2));
    assert_eq!(
        tropkit(&["sat-reduce", &data("unsat.cnf"), "--solve", "--domain", "0,a"]).status.code(),
        Some(2)
    );
}

#[test]
fn sat_reduce_unsat_fixture() {
    let out = tropkit(&["sat-reduce", &data("unsat.cnf"), "--solve"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "x1 (x) y1 = 1\ny1 = 0\nx1 = 0\nunsolvable\n");
}

#[test]
fn sat_reduce_renders_clause() {
    let out = tropkit(&["sat-reduce", &data("clause.cnf")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("y1 (+) x2 (+) x3 = 0\n"));
    let out = tropkit(&["--json", "sat-reduce", &data("clause.cnf"), "--solve"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["solvable"], true);
    assert_eq!(v["system"]["equations"].as_array().unwrap().len(), 4);
    assert_eq!(v["assignment"], serde_json::json!([false, false, false]));
}

#[test]
fn sat_reduce_bad_input_fails() {
    let out = tropkit(&["sat-reduce", &data("bad_literal.cnf")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(tropkit(&["sat-reduce", &data("missing.cnf")]).status.code(), Some(1));
}

#[test]
fn sat_reduce_budget_exceeded() {
    let out = tropkit(&["sat-reduce", &data("clause.cnf"), "--solve", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn classical_attack_reports_rate() {
    let out = tropkit(&["--json", "classical-attack", "--k", "3", "--p", "31", "--trials", "5", "--seed", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["stats"]["trials"], 5);
    assert!(v["success_rate"].as_f64().unwrap() > 0.0);
    let bad = tropkit(&["classical-attack", "--p", "100", "--seed", "1"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn aut_round_trip_through_key_files() {
    let (pk, sk) = (scratch("toy.pub.json"), scratch("toy.priv.json"));
    let (pk, sk) = (pk.to_str().unwrap(), sk.to_str().unwrap());
    let out = tropkit(&["aut-keygen", "--preset", "toy", "--seed", "5", "--out-pub", pk, "--out-priv", sk]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let enc = tropkit(&["aut-encrypt", "--pub", pk, "--point", "-4,0,9"]);
    assert_eq!(enc.status.code(), Some(0));
    let c = stdout(&enc).trim().to_string();
    let dec = tropkit(&["aut-decrypt", "--priv", sk, "--point", &c]);
    assert_eq!(stdout(&dec).trim(), "-4,0,9");

    let enc = tropkit(&["--json", "aut-encrypt", "--pub", pk, "--point", "-4,0,9"]);
    let v: serde_json::Value = serde_json::from_slice(&enc.stdout).unwrap();
    let joined: Vec<String> =
        v["ciphertext"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
    assert_eq!(joined.join(","), c);

    let private: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(sk).unwrap()).unwrap();
    assert_eq!(private["factors"][0]["type"], "monomial");
    assert_eq!(private["factors"][1]["type"], "triangular");

    assert_eq!(tropkit(&["aut-encrypt", "--pub", pk, "--point", "1,2"]).status.code(), Some(1));
    assert_eq!(tropkit(&["aut-decrypt", "--priv", pk, "--point", "1,2,3"]).status.code(), Some(1));
}

#[test]
fn aut_keygen_is_reproducible() {
    let paths: Vec<PathBuf> = ["r1.pub", "r1.priv", "r2.pub", "r2.priv"].iter().map(|n| scratch(n)).collect();
    let p: Vec<&str> = paths.iter().map(|p| p.to_str().unwrap()).collect();
    tropkit(&["aut-keygen", "--preset", "toy", "--seed", "9", "--out-pub", p[0], "--out-priv", p[1]]);
    tropkit(&["aut-keygen", "--preset", "toy", "--seed", "9", "--out-pub", p[2], "--out-priv", p[3]]);
    assert_eq!(std::fs::read(p[0]).unwrap(), std::fs::read(p[2]).unwrap());
    assert_eq!(std::fs::read(p[1]).unwrap(), std::fs::read(p[3]).unwrap());
}

#[test]
fn monomial_cap_env_is_honored() {
    let (pk, sk) = (scratch("cap.pub"), scratch("cap.priv"));
    let out = Command::new(env!("CARGO_BIN_EXE_tropkit"))
        .args(["aut-keygen", "--preset", "toy", "--seed", "1", "--out-pub"])
        .arg(&pk)
        .arg("--out-priv")
        .arg(&sk)
        .env("TROPKIT_MONOMIAL_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_tropkit"))
        .args(["aut-keygen", "--seed", "1", "--out-pub", "x", "--out-priv", "y"])
        .env("TROPKIT_MONOMIAL_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

use std::path::Path;
use std::process::{Command, Output};

use orderforge::generators::standard_example;
use orderforge::io;

fn orderforge(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orderforge")).args(args).current_dir(dir).env_remove("ORDERFORGE_BUDGET").output().unwrap()
}

fn s3(dir: &Path) -> String {
    let f = dir.join("s3.json");
    io::write_text(&f, &io::poset_json(&standard_example(3).unwrap())).unwrap();
    f.display().to_string()
}

#[test]
fn dim_of_s3_prints_d() {
    let dir = tempfile::tempdir().unwrap();
    let out = orderforge(&["dim", &s3(dir.path())], dir.path());
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["d"], 3);
}

#[test]
fn verify_lemmas_seed_7() {
    let dir = tempfile::tempdir().unwrap();
    let out = orderforge(&["verify", "--suite", "lemmas", "--seed", "7"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_none(), "no repro files on success");
}

#[test]
fn malformed_json_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{\"elements\": [\"a\" \"b\"]}").unwrap();
    let out = orderforge(&["info", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1, column 19"), "{err}");
}

#[test]
fn budget_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("k6.json");
    let (k6, _) = orderforge::generators::kelly(6).unwrap();
    io::write_text(&f, &io::poset_json(&k6)).unwrap();
    let run = |budget: &str| {
        Command::new(env!("CARGO_BIN_EXE_orderforge")).arg("rho").arg(&f).env("ORDERFORGE_BUDGET", budget).output().unwrap()
    };
    assert_eq!(run("1").status.code(), Some(1), "a budget of one node is exceeded");
    assert_eq!(run("0").status.code(), Some(1));
    assert_eq!(run("100000").status.code(), Some(0));
}

#[test]
fn identical_inputs_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let gen = ["gen", "exposed", "--n", "4", "--seed", "9", "-o", "p.json", "--embedding", "e.json", "--pairs", "i.json"];
    assert!(orderforge(&gen, d).status.success());
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let t = format!("t{i}.json");
            assert!(orderforge(&["reduce", "p.json", "--embedding", "e.json", "--pipeline", "exposed", "--trace", &t], d).status.success());
            let mut bytes = std::fs::read(d.join(&t)).unwrap();
            bytes.extend(orderforge(&["draw", "p.json", "e.json", "--trees", "--pairs", "i.json", "--output-format", "svg"], d).stdout);
            bytes.extend(orderforge(&["exposed", "p.json", "e.json", "--pairs", "i.json", "--check", "lemmas"], d).stdout);
            bytes
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}

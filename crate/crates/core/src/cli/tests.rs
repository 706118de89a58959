use super::*;
use crate::verify::{Check, Violation};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("orderforge").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path(dir: &tempfile::TempDir, name: &str) -> String {
    dir.path().join(name).display().to_string()
}

fn json_of(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|e| panic!("{e}: {s}"))
}

#[test]
fn dim_of_s3() {
    let dir = tempfile::tempdir().unwrap();
    let f = path(&dir, "s3.json");
    io::write_text(Path::new(&f), &io::poset_json(&standard_example(3).unwrap())).unwrap();
    let (code, out, _) = call(&["dim", &f]);
    assert_eq!(code, 0);
    assert!(out.trim_start().starts_with("{\n  \"d\": 3"), "{out}");
    let (code, out, _) = call(&["dim", &f, "--pairs", "minmax"]);
    assert_eq!((code, json_of(&out)["d"].as_u64()), (0, Some(3)));
    let (_, out, _) = call(&["rho", &f]);
    assert_eq!(json_of(&out)["rho"], 3);
    let (_, out, _) = call(&["info", &f]);
    assert_eq!(json_of(&out), json!({"elements": 6, "height": 2, "minimal": 3, "maximal": 3, "cover_edges": 6}));
}

#[test]
fn malformed_input_exits_one_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = path(&dir, "bad.json");
    std::fs::write(&f, "{\"elements\": [\"a\",\n ]}").unwrap();
    let (code, out, err) = call(&["dim", &f]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("line 2, column 2"), "{err}");
    let (code, _, err) = call(&["dim", &path(&dir, "missing.json")]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(call(&[]).0, 1);
    assert_eq!(call(&["frobnicate"]).0, 1);
    assert_eq!(call(&["dim", "x.json", "--budget", "0"]).0, 1);
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("outerplanarity"));
    assert_eq!(call(&["gen", "sn", "--n", "0"]).0, 1);
}

#[test]
fn output_may_not_overwrite_input() {
    let dir = tempfile::tempdir().unwrap();
    let f = path(&dir, "p.json");
    call(&["gen", "kelly", "--n", "3", "-o", &f]);
    let (code, _, err) = call(&["reduce", &f, "--pipeline", "minmax", "-o", &f]);
    assert_eq!(code, 1);
    assert!(err.contains("also used"), "{err}");
}

#[test]
fn gen_is_deterministic() {
    let a = call(&["gen", "random", "--n", "9", "--seed", "4"]);
    let b = call(&["gen", "random", "--n", "9", "--seed", "4"]);
    assert_eq!((a.0, &a.1), (0, &b.1));
    let p = io::parse_poset(&a.1).unwrap();
    assert_eq!(p, random_poset(4, 9, 0.35));
}

#[test]
fn kelly_layering_and_outerplanarity() {
    let dir = tempfile::tempdir().unwrap();
    let (p, e) = (path(&dir, "k.json"), path(&dir, "k.emb.json"));
    assert_eq!(call(&["gen", "kelly", "--n", "5", "-o", &p, "--embedding", &e]).0, 0);
    let (code, out, _) = call(&["layering", &p, &e]);
    assert_eq!(code, 0);
    let v = json_of(&out);
    assert_eq!(v["count"], v["layers"].as_array().unwrap().len());
    let (_, out, _) = call(&["outerplanarity", &p, "--embedding", &e]);
    assert_eq!(json_of(&out)["k"], v["count"]);
    let (_, out, _) = call(&["kappa", &p]);
    assert_eq!(json_of(&out)["kappa"], 5);
}

#[test]
fn exposed_family_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let (p, e, i) = (path(&dir, "x.json"), path(&dir, "x.emb.json"), path(&dir, "x.pairs.json"));
    assert_eq!(call(&["gen", "exposed", "--n", "5", "--seed", "2", "-o", &p, "--embedding", &e, "--pairs", &i]).0, 0);
    for check in ["lemmas", "digraph", "separated", "bound"] {
        let r = path(&dir, &format!("{check}.json"));
        let (code, out, err) = call(&["exposed", &p, &e, "--pairs", &i, "--check", check, "--report", &r]);
        assert_eq!(code, 0, "{check}: {err}");
        assert_eq!(json_of(&out), json_of(&std::fs::read_to_string(&r).unwrap()));
    }
    let (_, out, _) = call(&["exposed", &p, &e, "--pairs", &i, "--check", "separated"]);
    assert_eq!(json_of(&out)["separated"], true);
}

#[test]
fn reduce_writes_trace() {
    let dir = tempfile::tempdir().unwrap();
    let (p, e) = (path(&dir, "k.json"), path(&dir, "k.emb.json"));
    call(&["gen", "kelly", "--n", "4", "-o", &p, "--embedding", &e]);
    for pipeline in ["minmax", "unfold", "exposed", "height"] {
        let t = path(&dir, &format!("{pipeline}.trace.json"));
        let (code, out, err) = call(&["reduce", &p, "--embedding", &e, "--pipeline", pipeline, "--trace", &t]);
        assert_eq!(code, 0, "{pipeline}: {err}");
        assert_eq!(json_of(&out)["sound"], true);
        let steps = json_of(&std::fs::read_to_string(&t).unwrap());
        let steps = steps.as_array().unwrap();
        assert!(!steps.is_empty(), "{pipeline}");
        for s in steps {
            for key in ["lemma", "inputs", "outputs", "inequality", "verified"] {
                assert!(s.get(key).is_some(), "{pipeline} step lacks {key}");
            }
        }
    }
    let (code, _, err) = call(&["reduce", &p, "--pipeline", "exposed"]);
    assert_eq!(code, 1, "{err}");
    let (code, _, err) = call(&["reduce", &p, "--pipeline", "unfold"]);
    assert_eq!(code, 0, "{err}");
}

#[test]
fn draw_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (p, e, i) = (path(&dir, "x.json"), path(&dir, "x.emb.json"), path(&dir, "x.pairs.json"));
    call(&["gen", "exposed", "--n", "3", "--seed", "1", "-o", &p, "--embedding", &e, "--pairs", &i]);
    let a = call(&["draw", &p, &e, "--trees", "--pairs", &i]);
    let b = call(&["draw", &p, &e, "--trees", "--pairs", &i]);
    assert_eq!(a.0, 0, "{}", a.2);
    assert_eq!(a.1, b.1);
    assert!(a.1.contains("blue-tree") && a.1.contains("red-tree"));
    let svg = call(&["draw", &p, &e, "--output-format", "svg"]);
    assert!(svg.1.starts_with("<svg"), "{}", svg.1);
}

#[test]
fn verify_lemmas_passes() {
    let dir = tempfile::tempdir().unwrap();
    let r = path(&dir, "r.json");
    let (code, out, err) = call(&["verify", "--suite", "lemmas", "--seed", "7", "--count", "4", "--report", &r]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(json_of(&out)["ok"], true);
    assert!(std::path::Path::new(&r).exists());
    assert_eq!(call(&["verify", "--suite", "nope"]).0, 1);
}

#[test]
fn invariant_violation_exits_two_with_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let t = path(&dir, "t.json");
    let cli = Cli::try_parse_from(["orderforge", "reduce", "p.json", "--pipeline", "minmax", "--trace", &t]).unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let e = Error::StepFailed { step: "min-max-reduction".into(), detail: "synthetic".into() };
    assert_eq!(finish(Err(e), &cli, &mut out, &mut err), 2);
    let artifact = json_of(&std::fs::read_to_string(format!("{t}.bug.json")).unwrap());
    assert!(artifact["error"].as_str().unwrap().contains("synthetic"));
    let o = Outcome { report: json!({"ok": false}), violated: true, raw: None };
    assert_eq!(finish(Ok(o), &cli, &mut out, &mut err), 2);
    assert_eq!(finish(Err(Error::Input("x".into())), &cli, &mut out, &mut err), 1);
}

#[test]
fn failures_write_repro_files() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = Check::new("synthetic", "1 <= 0");
    c.cases = 1;
    c.violations.push(Violation { detail: "lhs 1".into(), repro: json!({"poset": io::poset_file(&standard_example(2).unwrap())}) });
    let r = SuiteReport { suite: Suite::Lemmas, seed: 3, count: 1, checks: vec![c], known_gaps: vec![] };
    let files = write_repros(&r, "lemmas", dir.path()).unwrap();
    assert_eq!(files.len(), 1);
    let body = json_of(&std::fs::read_to_string(&files[0]).unwrap());
    assert_eq!(body["seed"], 3);
    io::parse_poset(&body["repro"]["poset"].to_string()).unwrap();
}

#[test]
fn text_format() {
    let (code, out, _) = call(&["--format", "text", "gen", "sn", "--n", "2", "-o", "/dev/null"]);
    assert_eq!(code, 0);
    assert!(out.contains("elements: 4"), "{out}");
}

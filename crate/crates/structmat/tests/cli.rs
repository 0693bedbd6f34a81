//! End-to-end checks of the command-line surface: file formats, exit codes,
//! and report determinism.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_structmat");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

struct Workdir(PathBuf);

impl Workdir {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("structmat-cli-{tag}-{}", std::process::id()));
        fs::create_dir_all(&dir).expect("mkdir");
        Workdir(dir)
    }

    fn file(&self, name: &str, contents: &str) -> String {
        let path = self.0.join(name);
        fs::write(&path, contents).expect("write");
        path.to_string_lossy().into_owned()
    }

    fn path(&self, name: &str) -> String {
        self.0.join(name).to_string_lossy().into_owned()
    }
}

impl Drop for Workdir {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

#[test]
fn preorder_pipeline_close_then_validate_then_compose() {
    let dir = Workdir::new("preorder");
    let rel = dir.file("rel.json", r#"{"n":3,"pairs":[[1,2],[2,3]]}"#);
    let closed = dir.path("closed.json");

    let out = run(&["preorder", "validate", "--in", &rel]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["valid"], false);

    let out = run(&["preorder", "close", "--in", &rel, "--out", &closed]);
    assert!(out.status.success());
    let closed_doc: Value = serde_json::from_str(&fs::read_to_string(&closed).unwrap()).unwrap();
    assert_eq!(
        closed_doc["pairs"],
        serde_json::json!([[1, 1], [1, 2], [1, 3], [2, 2], [2, 3], [3, 3]])
    );

    let out = run(&["preorder", "validate", "--in", &closed]);
    assert_eq!(stdout_json(&out)["valid"], true);

    let out = run(&["preorder", "compose", "--in", &closed, "--in2", &closed]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["n"], 9);

    // strict composition rejects the unclosed relation, --close-theta accepts
    let out = run(&["preorder", "compose", "--in", &rel, "--in2", &rel]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["preorder", "compose", "--in", &rel, "--in2", &rel, "--close-theta"]);
    assert!(out.status.success());
}

#[test]
fn check_structural_exit_codes() {
    let dir = Workdir::new("check");
    let upper = dir.file("upper.json", r#"{"n":2,"pairs":[[1,1],[1,2],[2,2]]}"#);
    let lower = dir.file("lower.json", r#"{"n":2,"pairs":[[1,1],[2,1],[2,2]]}"#);
    let m = dir.file(
        "m.json",
        r#"{"ring":{"kind":"mod","modulus":5},"n":2,"entries":[[2,1],[0,3]]}"#,
    );

    let out = run(&["check", "structural", "--matrix", &m, "--theta", &upper]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["structural"], true);

    let out = run(&["check", "structural", "--matrix", &m, "--theta", &lower]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["structural"], false);
}

#[test]
fn matrix_operations_on_integer_docs() {
    let dir = Workdir::new("matrix");
    let m = dir.file(
        "m.json",
        r#"{"ring":{"kind":"int"},"n":2,"entries":[["1","2"],["3","4"]]}"#,
    );

    let out = run(&["matrix", "det", "--in", &m]);
    assert_eq!(stdout_json(&out)["det"], "-2");

    let out = run(&["matrix", "adj", "--in", &m]);
    assert_eq!(
        stdout_json(&out)["entries"],
        serde_json::json!([["4", "-2"], ["-3", "1"]])
    );

    let out = run(&["matrix", "preadj", "--in", &m]);
    assert_eq!(
        stdout_json(&out)["entries"],
        serde_json::json!([["4", "-2"], ["-3", "1"]])
    );

    let out = run(&["matrix", "charpoly", "--in", &m]);
    assert_eq!(stdout_json(&out)["coeffs"], serde_json::json!(["-2", "-5", "1"]));

    // det = -2 is not a unit of the integers
    let out = run(&["matrix", "inv", "--in", &m]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["invertible"], false);
}

#[test]
fn matrix_inverse_methods_and_certificates() {
    let dir = Workdir::new("inv");
    let m = dir.file(
        "m.json",
        r#"{"ring":{"kind":"mod","modulus":5},"n":2,"entries":[[1,2],[3,4]]}"#,
    );

    for (method, tag) in [
        ("adjugate", "adjugate"),
        ("charpoly", "char_poly"),
        ("annihilator", "monic_annihilator"),
        ("power", "power_order"),
        ("nilgeom", "nil_geometric"),
    ] {
        let out = run(&["matrix", "inv", "--in", &m, "--method", method]);
        assert!(out.status.success(), "method {method} failed");
        let v = stdout_json(&out);
        assert_eq!(v["method"], tag);
        assert_eq!(v["verified"], true);
        assert_eq!(
            v["inverse"]["entries"],
            serde_json::json!([[3, 1], [4, 2]]),
            "method {method} returned a different inverse"
        );
    }
}

#[test]
fn jacobson_example_via_cli() {
    let dir = Workdir::new("jacobson");
    // A = [[y, 1-yx], [0, x]] over the xy = 1 algebra
    let a = dir.file(
        "a.json",
        r#"{"ring":{"kind":"jacobson","base":{"kind":"rationals"}},
            "n":2,
            "theta":{"n":2,"pairs":[[1,1],[1,2],[2,2]]},
            "entries":[
              [[["1",1,0]], [["1",0,0],["-1",1,1]]],
              [[],          [["1",0,1]]]
            ]}"#,
    );
    let upper = dir.file("upper.json", r#"{"n":2,"pairs":[[1,1],[1,2],[2,2]]}"#);

    // the library refuses to invert it
    let out = run(&["matrix", "inv", "--in", &a]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["invertible"], false);

    // but the preadjoint exists and is upper triangular: [[x, -(1-yx)], [0, y]]
    let out = run(&["matrix", "preadj", "--in", &a]);
    assert!(out.status.success());
    let pre = stdout_json(&out);
    assert_eq!(
        pre["entries"],
        serde_json::json!([
            [[["1", 0, 1]], [["-1", 0, 0], ["1", 1, 1]]],
            [[], [["1", 1, 0]]]
        ])
    );

    // the known explicit inverse is lower triangular and fails the check
    let a_inv = dir.file(
        "a_inv.json",
        r#"{"ring":{"kind":"jacobson","base":{"kind":"rationals"}},
            "n":2,
            "entries":[
              [[["1",0,1]], []],
              [[["1",0,0],["-1",1,1]], [["1",1,0]]]
            ]}"#,
    );
    let out = run(&["check", "structural", "--matrix", &a_inv, "--theta", &upper]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn demo_subcommand_is_green() {
    let out = run(&["demo", "jacobson"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["failure_count"], 0);
    assert_eq!(v["trials"], 7);
}

#[test]
fn proptest_runs_and_is_deterministic_modulo_wall_time() {
    let args = [
        "proptest",
        "--suite",
        "closure",
        "--ring",
        r#"{"kind":"mod","modulus":5}"#,
        "--n",
        "3",
        "--trials",
        "25",
        "--seed",
        "7",
    ];
    let first = run(&args);
    assert!(first.status.success());
    let second = run(&args);
    let mut a = stdout_json(&first);
    let mut b = stdout_json(&second);
    assert_eq!(a["failure_count"], 0);
    assert_eq!(a["trials"], 25);
    assert_eq!(a["seed"], 7);
    a["wall_ms"] = Value::Null;
    b["wall_ms"] = Value::Null;
    assert_eq!(a, b, "reports must be deterministic given (suite, scenario)");
}

#[test]
fn proptest_rejects_unsupported_combinations() {
    let out = run(&[
        "proptest",
        "--suite",
        "closure",
        "--ring",
        r#"{"kind":"jacobson","base":{"kind":"rationals"}}"#,
        "--n",
        "2",
        "--trials",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("counterexample"), "stderr was: {err}");
}

#[test]
fn proptest_exhaustive_mode() {
    let out = run(&[
        "proptest",
        "--suite",
        "closure",
        "--ring",
        r#"{"kind":"mod","modulus":2}"#,
        "--n",
        "2",
        "--exhaustive",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["trials"], 36);
    assert_eq!(v["failure_count"], 0);
}

#[test]
fn proptest_accepts_fixed_theta_files() {
    let dir = Workdir::new("fixed-theta");
    let bare = dir.file("bare.json", r#"{"n":2,"pairs":[[1,2]]}"#);

    // strict by default
    let out = run(&[
        "proptest", "--suite", "adjoint",
        "--ring", r#"{"kind":"mod","modulus":6}"#,
        "--n", "2", "--trials", "10", "--seed", "1",
        "--theta", &bare,
    ]);
    assert_eq!(out.status.code(), Some(2));

    // closure opt-in fills in the diagonal
    let out = run(&[
        "proptest", "--suite", "adjoint",
        "--ring", r#"{"kind":"mod","modulus":6}"#,
        "--n", "2", "--trials", "10", "--seed", "1",
        "--theta", &bare, "--close-theta",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["failure_count"], 0);
}

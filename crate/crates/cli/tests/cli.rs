use std::path::{Path, PathBuf};
use std::process::Command;

use quadlie_core::dblext::{g_lambda_mu, partition_map};
use quadlie_core::json::{qla_to_json, skew_to_json};
use quadlie_core::{GaussScalar, Partition};
use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn quadlie(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_quadlie"))
        .args(args)
        .env_remove("QUADLIE_FACTOR_BOUND")
        .output()
        .unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
    }
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn build(dir: &TempDir, file: &str, flag: &str, value: &str) -> PathBuf {
    let path = dir.path().join(file);
    let r = quadlie(&["build", flag, value, "-o", p(&path)]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    path
}

fn write(dir: &TempDir, file: &str, text: &str) -> PathBuf {
    let path = dir.path().join(file);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(t: &str) -> GaussScalar {
    t.parse().unwrap()
}

fn assert_error(r: &Run, code: i32, kind: &str) {
    assert_eq!(r.code, code, "{}", r.stdout);
    assert_eq!(r.stdout.trim().lines().count(), 1);
    let v = r.json();
    assert_eq!(v["error"], kind);
    assert!(v["message"].is_string());
}

#[test]
fn g4_has_dup_three() {
    let dir = TempDir::new().unwrap();
    let g4 = build(&dir, "g4.json", "--name", "g4");
    let v = quadlie(&["dup", p(&g4)]).json();
    assert_eq!(v["dup"], 3);
    assert_eq!(v["kind"], "S3");
}

#[test]
fn four_admits_three_partitions() {
    let v = quadlie(&["enumerate-partitions", "4"]).json();
    assert_eq!(v["count"], 3);
    assert_eq!(
        v["partitions"],
        serde_json::json!([[1, 1, 1, 1], [2, 2], [3, 1]])
    );
}

#[test]
fn iso_distinguishes_g_lambda_mu() {
    let dir = TempDir::new().unwrap();
    let file = |name: &str, l: &str, m: &str| {
        write(
            &dir,
            name,
            &qla_to_json(&g_lambda_mu(&s(l), &s(m)).unwrap()),
        )
    };
    let g12 = file("g12.json", "1", "2");
    let g11 = file("g11.json", "1", "1");
    let g1m = file("g1m.json", "1", "-1");
    let v = quadlie(&["iso", p(&g12), p(&g11)]).json();
    assert_eq!(v["isomorphic"], false);
    let v = quadlie(&["iso", p(&g1m), p(&g11)]).json();
    assert_eq!(v["isomorphic"], true);
}

#[test]
fn built_algebras_pass_check() {
    let dir = TempDir::new().unwrap();
    let sources = [
        ("--name", "g3:1"),
        ("--name", "g3:2+i"),
        ("--name", "g4"),
        ("--name", "g4:3/5"),
        ("--name", "g5"),
        ("--name", "g6"),
        ("--jordan", "even:2"),
        ("--jordan", "odd:2"),
        ("--jordan", "scaled:2:i"),
        ("--partition", "3,2,2"),
        ("--partition", "5,1,1"),
    ];
    for (k, (flag, value)) in sources.iter().enumerate() {
        let path = build(&dir, &format!("a{k}.json"), flag, value);
        let v = quadlie(&["check", p(&path)]).json();
        assert_eq!(v["invariant_form"], true, "{value}");
        assert_eq!(v["jacobi"], true, "{value}");
    }
}

#[test]
fn build_prints_to_stdout_without_output() {
    let v = quadlie(&["build", "--name", "g4"]).json();
    assert_eq!(v["dim"], 4);
    assert!(v["brackets"].is_array());
}

#[test]
fn build_from_skew_file() {
    let dir = TempDir::new().unwrap();
    let c = partition_map(&"3".parse::<Partition>().unwrap()).unwrap();
    let skew = write(&dir, "c.json", &skew_to_json(&c));
    let g = build(&dir, "g.json", "--skew", p(&skew));
    let v = quadlie(&["check", p(&g)]).json();
    assert_eq!(v["nilpotent"], true);
    let inv = quadlie(&["invariant", p(&skew)]).json();
    assert_eq!(inv["nilpotent"], serde_json::json!([3]));
}

#[test]
fn invariant_of_partition_algebra() {
    let dir = TempDir::new().unwrap();
    let g = build(&dir, "g.json", "--partition", "3,2,2");
    let v = quadlie(&["invariant", p(&g)]).json();
    assert_eq!(v["nilpotent"], serde_json::json!([3, 2, 2]));
    assert_eq!(v["invertible"], serde_json::json!([]));
}

#[test]
fn qdim_and_extract_on_g4() {
    let dir = TempDir::new().unwrap();
    let g4 = build(&dir, "g4.json", "--name", "g4");
    let v = quadlie(&["qdim", p(&g4)]).json();
    assert_eq!(v["qdim"], 2);
    assert_eq!(v["formula_holds"], true);
    let v = quadlie(&["extract", p(&g4)]).json();
    assert_eq!(v["verified"], true);
    assert_eq!(v["core_dim"], 2);
    assert_eq!(v["cbar_char_poly"], serde_json::json!(["-1", "0", "1"]));
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = build(&dir, "a.json", "--jordan", "scaled:2:1+i");
    let b = build(&dir, "b.json", "--jordan", "scaled:2:-1-i");
    for args in [
        vec!["iso", p(&a), p(&b)],
        vec!["extract", p(&a)],
        vec!["dup", p(&a)],
        vec!["qdim", p(&b)],
    ] {
        let first = quadlie(&args);
        assert_eq!(first.code, 0);
        assert_eq!(first.stdout, quadlie(&args).stdout);
    }
    assert_eq!(quadlie(&["iso", p(&a), p(&b)]).json()["i_isomorphic"], true);
}

#[test]
fn parse_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    assert_error(&quadlie(&["dup", "/no/such/file.json"]), 2, "IoError");
    let bad = write(&dir, "bad.json", "{\"dim\": 2");
    assert_error(&quadlie(&["check", p(&bad)]), 2, "FormatError");
    let scalar = write(&dir, "s.json", r#"{"dim":1,"gram":[["1/0"]]}"#);
    assert_error(&quadlie(&["check", p(&scalar)]), 2, "FormatError");
    assert_error(&quadlie(&["frobnicate"]), 2, "UsageError");
    assert_error(&quadlie(&["build"]), 2, "UsageError");
}

#[test]
fn domain_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let flat = write(
        &dir,
        "flat.json",
        r#"{"dim":2,"gram":[["0","1"],["1","0"]]}"#,
    );
    assert_error(&quadlie(&["dup", p(&flat)]), 1, "AbelianError");
    assert_error(
        &quadlie(&["build", "--partition", "2,1"]),
        1,
        "NotAdmissiblePartition",
    );
    let g3 = build(&dir, "g3.json", "--name", "g3:1");
    assert_error(&quadlie(&["extract", p(&g3)]), 1, "NotSolvable");
}

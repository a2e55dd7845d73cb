//! End-to-end tests against the built binary: exit codes, output shape,
//! and byte determinism.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const FIXTURES: &str = "
category A { objects a b; arrow f : a -> b }
monoid F2 { elements u z; unit u; table { z*z=z; z*u=z; u*z=z; u*u=u } }
poset V { points x y z; rel x <= y; rel x <= z }
space S { points x y; opens {} {x} {x, y} }
site J over A { cover b : { f } }
presheaf P over A { at a : { m }; at b : { n, o }; act f : n -> m; act f : o -> m }
presheaf Q over A { at a : { w } }
presheaf R over F2 { at pt : { s, t }; act z : s -> s; act z : t -> s }
family F over A { index i j; member i = P; member j = Q }
";

fn write_fixtures(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("ws.dsl");
    std::fs::write(&path, FIXTURES).unwrap();
    path
}

fn fintopos(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fintopos"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn classify_reports_the_walking_arrow() {
    let dir = tempfile::tempdir().unwrap();
    let ws = write_fixtures(dir.path());
    let out = fintopos(&["classify", "A", "-i", ws.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["command"], "classify");
    assert_eq!(v["values"]["ax2"], true);
    assert_eq!(v["values"]["ax_minus2"], true);
    assert_eq!(v["values"]["ax_inf"], false);
    assert_eq!(v["values"]["string_length"], "5");
    assert_eq!(v["values"]["container_sizes"], serde_json::json!([1, 0]));
}

#[test]
fn gamma_uses_the_label_set_flag() {
    let dir = tempfile::tempdir().unwrap();
    let ws = write_fixtures(dir.path());
    let out = fintopos(&[
        "gamma",
        "A",
        "-i",
        ws.to_str().unwrap(),
        "--set",
        "p,q,r",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["values"]["gamma2_sizes"], serde_json::json!([3, 0]));
    assert_eq!(v["values"]["gamma0_sizes"], serde_json::json!([3, 3]));
    assert_eq!(v["values"]["gamma_minus2_sizes"], serde_json::json!([1, 3]));
}

#[test]
fn unknown_names_and_commands_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let ws = write_fixtures(dir.path());
    let out = fintopos(&["pi0", "NOPE", "-i", ws.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NOPE"));

    let out = fintopos(&["frobnicate", "A", "-i", ws.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown command"));

    let out = fintopos(&["classify", "A", "-i", "/definitely/missing.dsl"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn syntax_errors_carry_position_and_expected_tokens() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.dsl");
    std::fs::write(&path, "category A {\n  objcets a\n}").unwrap();
    let out = fintopos(&["validate", "-i", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2, column 3"), "stderr: {err}");
    assert!(err.contains("objects"), "stderr: {err}");
}

#[test]
fn refusals_exit_2_and_failures_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("disc.dsl");
    std::fs::write(&path, "category D { objects a b }").unwrap();
    let out = fintopos(&["container", "D", "-i", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["checks"][0]["status"], "refused");

    let bad = dir.path().join("bad.dsl");
    std::fs::write(&bad, "category X { objects a; arrow f : a -> z }").unwrap();
    let out = fintopos(&["validate", "-i", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn budget_refusals_surface_the_budget() {
    let dir = tempfile::tempdir().unwrap();
    let ws = write_fixtures(dir.path());
    let out = fintopos(&[
        "props",
        "A",
        "-i",
        ws.to_str().unwrap(),
        "--budget",
        "50",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["witness"].as_str().unwrap_or("").contains("budget of 50")));
}

#[test]
fn full_corpus_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let ws = write_fixtures(dir.path());
    let file = ws.to_str().unwrap();
    let runs: &[&[&str]] = &[
        &["validate", "-i", file],
        &["classify", "A", "-i", file],
        &["classify", "F2", "-i", file],
        &["classify", "V", "-i", file],
        &["container", "A", "-i", file],
        &["omega", "A", "-i", file],
        &["pi0", "P", "-i", file],
        &["sections", "P", "-i", file],
        &["gamma", "A", "-i", file],
        &["reflect", "P", "-i", file],
        &["fam", "P", "-i", file],
        &["fam", "F", "-i", file],
        &["site", "J", "-i", file],
        &["space", "S", "-i", file],
        &["props", "F2", "-i", file],
        &["battery", "A", "-i", file],
    ];
    for args in runs {
        let a = fintopos(args);
        let b = fintopos(args);
        assert_eq!(a.stdout, b.stdout, "args: {args:?}");
        assert_eq!(a.status.code(), b.status.code(), "args: {args:?}");
        assert_ne!(a.stdout.len(), 0, "args: {args:?}");
    }
}

#[test]
fn multiple_input_files_share_one_namespace() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.dsl");
    let two = dir.path().join("two.dsl");
    std::fs::write(&one, "category A { objects a b; arrow f : a -> b }").unwrap();
    std::fs::write(&two, "presheaf P over A { at a : { x } }").unwrap();
    let out = fintopos(&[
        "pi0",
        "P",
        "-i",
        one.to_str().unwrap(),
        two.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["values"]["count"], 1);
}

#[test]
fn battery_flag_extends_props() {
    let dir = tempfile::tempdir().unwrap();
    let ws = write_fixtures(dir.path());
    let out = fintopos(&[
        "props",
        "F2",
        "-i",
        ws.to_str().unwrap(),
        "--battery",
        "R",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let battery: Vec<&str> = v["values"]["battery"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert!(battery.contains(&"R"));
}

#[test]
fn text_format_renders_statuses() {
    let dir = tempfile::tempdir().unwrap();
    let ws = write_fixtures(dir.path());
    let out = fintopos(&[
        "classify",
        "A",
        "-i",
        ws.to_str().unwrap(),
        "--format",
        "text",
    ]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("command: classify"));
    assert!(text.contains("PASS"));
    assert!(text.contains("string_length = \"5\""));
}

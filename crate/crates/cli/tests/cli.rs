use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn curvecal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvecal"))
        .args(args)
        .env_remove("CURVECAL_MAX_EXP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = curvecal(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).expect("valid JSON")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("curvecal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn intersect_examples() {
    assert_eq!(ok(&["intersect", "-g", "1", "a1", "b1"]), "1\n");
    assert_eq!(ok(&["intersect", "-g", "1", "a1", "a1"]), "0\n");
    assert_eq!(
        ok(&["intersect", "-g", "1", "a1^2 b1^3", "a1 b1^-1"]),
        "-5\n"
    );
    assert_eq!(
        json(&["intersect", "-g", "2", "a1", "b2", "--json"])["pairing"],
        0
    );
}

#[test]
fn degree_bound_and_express() {
    assert_eq!(
        ok(&["degree-bound", "-g", "1", "a1^2 b1^3", "a1 b1^-1"]),
        "5\n"
    );
    assert_eq!(ok(&["express", "-g", "1", "a1^2 b1^3"]), "2·α₁ + 3·β₁\n");
    assert_eq!(ok(&["express", "-g", "1", "a1 b1 a1^-1 b1^-1"]), "0\n");
    let v = json(&["express", "-g", "2", "a1^3 b2", "--json"]);
    assert_eq!(v["dot_alpha"], serde_json::json!([0, -1]));
    assert_eq!(v["dot_beta"], serde_json::json!([3, 0]));
}

#[test]
fn pi1_json_example() {
    let v = json(&["pi1", "-g", "1", "a1^3 b1^5", "--json"]);
    assert_eq!(v["pi1"], "Z/5");
    assert_eq!(v["relators"], serde_json::json!(["b1^5"]));
    assert_eq!(ok(&["pi1", "-g", "1", "a1^3 b1^5"]), "< b1 | b1^5 >\nZ/5\n");
}

#[test]
fn classify_words_and_file_agree() {
    let path = scratch("sum.txt", "genus 2\n# connected sum\na1 b1^2\na2 b2^3\n");
    let from_file = json(&["classify", "--diagram", path.to_str().unwrap(), "--json"]);
    let from_args = json(&["classify", "-g", "2", "a1 b1^2", "a2 b2^3", "--json"]);
    assert_eq!(from_file, from_args);
    assert_eq!(from_file["pi1"], "Z/2 * Z/3");
    assert_eq!(from_file["finite"], false);
    assert_eq!(from_file["prime"], false);

    let text = ok(&["classify", "-g", "2", "a1 b1^2", "a2 b2^3"]);
    assert!(text.contains("pi1: Z/2 * Z/3"));
    assert!(text.contains("finite: false"));

    let v = json(&["classify", "-g", "2", "b1 b2", "b1 b2^-1", "--json"]);
    assert_eq!(v["pi1"], "undecided");
}

#[test]
fn basis_check_reports_one_based_sigma() {
    let v = json(&[
        "basis-check",
        "-g",
        "2",
        "--theta",
        "b2",
        "b1",
        "--gamma",
        "a2^-1",
        "a1^-1",
        "--json",
    ]);
    assert_eq!(v["unimodular"], true);
    assert_eq!(v["block_permutation"], serde_json::json!([2, 1]));
    assert_eq!(v["matrix"]["det"], 1);

    let v = json(&[
        "basis-check",
        "-g",
        "1",
        "--theta",
        "a1^2",
        "--gamma",
        "b1",
        "--json",
    ]);
    assert_eq!(v["unimodular"], false);
    assert_eq!(v["block_permutation"], Value::Null);
    assert_eq!(v["matrix"]["H"], serde_json::json!([[2, 0], [0, 1]]));
}

#[test]
fn diagram_reduce_trace() {
    let path = scratch(
        "diagram.json",
        r#"{"m_order":["p","q","r","s"],"mprime_order":["p","q","s","r"],"signs":{"p":1,"q":-1,"r":1,"s":1}}"#,
    );
    let v = json(&["diagram-reduce", path.to_str().unwrap(), "--json"]);
    assert_eq!(v["trace"], serde_json::json!([["p", "q"]]));
    assert_eq!(v["diagram"]["m_order"], serde_json::json!(["r", "s"]));
    assert_eq!(v["steps"], 1);
}

#[test]
fn cobordism_normalize_cancels_unit_pair() {
    let chain = |p: i64| {
        format!(
            r#"{{"records":[{{"id":"min","index":0}},{{"id":"p","index":1,"incidence":{{"q":{p}}}}},{{"id":"q","index":2}},{{"id":"max","index":3}}]}}"#
        )
    };
    let unit = scratch("unit.json", &chain(-1));
    let v = json(&["cobordism-normalize", unit.to_str().unwrap(), "--json"]);
    assert_eq!(v["final_type"], serde_json::json!([1, 0, 0, 1]));
    assert_eq!(v["moves"].as_array().unwrap().len(), 1);

    let lens = scratch("lens.json", &chain(5));
    let v = json(&["cobordism-normalize", lens.to_str().unwrap(), "--json"]);
    assert_eq!(v["final_type"], serde_json::json!([1, 1, 1, 1]));
    assert!(v["moves"].as_array().unwrap().is_empty());
}

#[test]
fn lens_table_matches_orders() {
    let v = json(&["lens-table", "--max-p", "12", "--json"]);
    let rows = v.as_array().unwrap();
    assert!(!rows.is_empty());
    for row in rows {
        let p = row["p"].as_i64().unwrap();
        let want = if p == 1 {
            "1".to_string()
        } else {
            format!("Z/{p}")
        };
        assert_eq!(row["pi1"], want.as_str());
    }
    let text = ok(&["lens-table", "--max-p", "12"]);
    assert_eq!(text.lines().count(), rows.len() + 1);
}

#[test]
fn word_file_indirection() {
    let path = scratch("word.txt", "a1^3 b1^5\n");
    let arg = format!("@{}", path.display());
    assert_eq!(ok(&["intersect", "-g", "1", &arg, "a1"]), "-5\n");
}

#[test]
fn exit_codes() {
    assert_eq!(curvecal(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        curvecal(&["intersect", "-g", "1", "a1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        curvecal(&["intersect", "-g", "0", "a1", "b1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(curvecal(&["classify"]).status.code(), Some(2));

    let out = curvecal(&["intersect", "-g", "1", "a2", "b1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("genus"));
    assert_eq!(
        curvecal(&["intersect", "-g", "1", "a1 ^", "b1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(curvecal(&["pi1", "-g", "2", "b1"]).status.code(), Some(1));
}

#[test]
fn exponent_limit_from_environment() {
    let run = |limit: &str| {
        Command::new(env!("CARGO_BIN_EXE_curvecal"))
            .args(["intersect", "-g", "1", "a1^40", "b1"])
            .env("CURVECAL_MAX_EXP", limit)
            .output()
            .unwrap()
    };
    assert_eq!(run("39").status.code(), Some(1));
    let out = run("40");
    assert!(out.status.success());
    assert_eq!(stdout(&out), "40\n");
    assert_eq!(run("zero").status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["lens-table", "--max-p", "20", "--json"];
    assert_eq!(ok(&args), ok(&args));
}

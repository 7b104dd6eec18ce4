use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affmon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    json_of(&out)
}

#[test]
fn classgroup_of_quadric() {
    let v = ok(&["classgroup", "--name", "quadric"]);
    assert_eq!(v["free_rank"], 1);
    assert_eq!(v["invariant_factors"], json!([]));
    assert_eq!(v["height_one_primes"], 4);
    assert_eq!(v["generator_classes"].as_array().unwrap().len(), 4);
    assert_eq!(
        ok(&["classgroup", "--monoid", &data("quadric.json")])["group"],
        "Z"
    );
}

#[test]
fn classgroup_of_a_n() {
    let v = ok(&["classgroup", "--name", "a_n", "--param", "4"]);
    assert_eq!(v["free_rank"], 0);
    assert_eq!(v["invariant_factors"], json!([5]));
}

#[test]
fn canonical_of_twisted() {
    let v = ok(&["canonical", "--name", "twisted"]);
    assert_eq!(v["omega_generators"], json!([[1, 1], [1, 2]]));
    assert_eq!(v["principal"], false);
    assert_eq!(v["c"], Value::Null);
    assert!(v["gp_basis"].is_array());
    let g = ok(&["gorenstein", "--monoid", &data("twisted.json")]);
    assert_eq!(g["principal"], false);
}

#[test]
fn gorenstein_of_a_n() {
    let v = ok(&["gorenstein", "--name", "a_n", "--param", "3"]);
    assert_eq!(v["c"], json!([1, 1]));
    assert_eq!(v["principal"], true);
}

#[test]
fn type2d_of_a_3() {
    let v = ok(&["type2d", "--name", "a_n", "--param", "3"]);
    assert_eq!(v, json!({ "b": 4, "a": 3, "A_type": true }));
}

#[test]
fn info_and_spectrum() {
    let v = ok(&["info", "--monoid", &data("twisted.json")]);
    assert_eq!(v["rank"], 2);
    assert_eq!(v["saturated"], true);
    assert_eq!(v["rays"], json!([[1, 0], [1, 3]]));
    assert_eq!(v["hilbert_basis"].as_array().unwrap().len(), 4);
    let s = ok(&["spec", "--name", "quadric"]);
    assert_eq!(s["count"], 10);
    assert_eq!(s["max_chain_length"], 3);
}

#[test]
fn saturate_fills_the_gap() {
    let v = ok(&["saturate", "--monoid", &data("gapped.json")]);
    let gens = v["generators"].as_array().unwrap();
    assert!(gens.contains(&json!([1, 2])));
    let info = ok(&["info", "--monoid", &data("gapped.json")]);
    assert_eq!(info["saturated"], false);
    assert_eq!(info["hilbert_basis"], Value::Null);
}

#[test]
fn ideal_operations() {
    let twisted = data("twisted.json");
    let v = ok(&[
        "ideal",
        "--monoid",
        &twisted,
        "--ideal",
        &data("omega.json"),
    ]);
    assert_eq!(v["divisorial"], true);
    assert_eq!(v["divisor"], json!([1, 1]));
    let v = ok(&[
        "ideal",
        "--monoid",
        &twisted,
        "--ideal",
        &data("rays.json"),
        "--op",
        "star",
    ]);
    assert_eq!(v["generators"], json!([[0, 0]]));
    let v = ok(&[
        "ideal",
        "--monoid",
        &twisted,
        "--ideal",
        &data("omega.json"),
        "--op",
        "product",
        "--other",
        &data("omega.json"),
    ]);
    assert_eq!(v["divisorial"], true);
    assert_eq!(v["divisor"], json!([2, 2]));
    let v = ok(&[
        "ideal",
        "--monoid",
        &twisted,
        "--ideal",
        &data("rays.json"),
        "--op",
        "product",
        "--other",
        &data("rays.json"),
    ]);
    assert_eq!(v["generators"], json!([[2, 0], [2, 3], [2, 6]]));
    assert_eq!(v["divisorial"], false);
    assert_eq!(v["divisor"], Value::Null);
    let missing = run(&[
        "ideal",
        "--monoid",
        &twisted,
        "--ideal",
        &data("omega.json"),
        "--op",
        "colon",
    ]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn oracle_verify() {
    let args = [
        "oracle",
        "verify",
        "--monoid",
        &data("twisted.json"),
        "--bound",
        "8",
        "--seed",
        "5",
        "--trials",
        "4",
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let v = json_of(&first);
    assert_eq!(v["passed"], true);
    assert_eq!(v["seed"], 5);
    assert_eq!(first.stdout, run(&args).stdout);
}

#[test]
fn domain_errors_exit_1() {
    let out = run(&["classgroup", "--monoid", &data("gapped.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"]["code"], "not_saturated");
    let out = run(&["type2d", "--name", "quadric"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"]["code"], "wrong_rank");
    let out = run(&["info", "--name", "jungian", "--param", "4", "--param", "2"]);
    assert_eq!(json_of(&out)["error"]["code"], "invalid_parameters");
}

#[test]
fn malformed_input_exits_2() {
    for file in ["truncated.json", "ragged.json", "does_not_exist.json"] {
        let out = run(&["info", "--monoid", &data(file)]);
        assert_eq!(out.status.code(), Some(2), "{file}");
        assert!(json_of(&out)["error"]["code"].is_string());
    }
}

#[test]
fn bad_invocations_exit_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["info"]).status.code(), Some(2));
    assert_eq!(
        run(&[
            "info",
            "--name",
            "twisted",
            "--monoid",
            &data("twisted.json")
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn text_output_matches_json() {
    let out = run(&["type2d", "--name", "twisted", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "A_type: false\na: 1\nb: 3\n"
    );
}

#[test]
fn output_is_byte_stable() {
    let args = [
        "classgroup",
        "--name",
        "jungian",
        "--param",
        "5",
        "--param",
        "2",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

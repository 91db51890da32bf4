mod common;

use std::process::{Command, Output};

use serde_json::{json, Value};

use common::assert_valid;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chemhull"))
        .args(args)
        .env_remove("CHEMHULL_FORMAT")
        .env_remove("CHEMHULL_EPS")
        .env_remove("CHEMHULL_LIMIT")
        .env_remove("CHEMHULL_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn polytope_human_and_json() {
    let o = run(&["polytope", "-n", "8", "-m", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("7 vertices, 8 facets"), "{text}");
    assert!(text.contains("(0, 4, 0, 0, 4)"));
    let v = json_of(&["polytope", "-n", "8", "-m", "8", "--json"]);
    assert_valid("polytope", &v);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 7);

    let v = json_of(&["polytope", "-n", "8", "-m", "12", "--json"]);
    assert_eq!(v["dim"], 0);
    let p = &v["vertices"][0];
    assert_eq!([&p["m22"], &p["m23"], &p["m33"]], [&json!(0), &json!(0), &json!(12)]);
}

#[test]
fn invalid_pair_exits_2_with_bound() {
    let o = run(&["polytope", "-n", "8", "-m", "13"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("7 <= m <= 12"), "{err}");
}

#[test]
fn optimize_examples() {
    let v = json_of(&[
        "optimize", "-n", "8", "-m", "8", "--preset", "randic", "--min", "--json",
    ]);
    assert_valid("optimization", &v);
    assert_eq!(v["arg_points"][0]["name"], "P88-V4");
    assert!((v["optimal_value"].as_f64().unwrap() - 3.6427).abs() < 1e-4);

    let v = json_of(&[
        "optimize", "-n", "20", "-m", "22", "--preset", "randic", "--max", "--json",
    ]);
    let arg = v["arg_points"].as_array().unwrap();
    assert_eq!(arg.len(), 1);
    assert_eq!(
        (arg[0]["m12"].as_i64(), arg[0]["m13"].as_i64(), arg[0]["m33"].as_i64()),
        (Some(0), Some(0), Some(5))
    );

    let v = json_of(&[
        "optimize",
        "-n",
        "9",
        "-m",
        "8",
        "--formula",
        "1/(i*j)",
        "--max",
        "--json",
    ]);
    assert!((v["optimal_value"].as_f64().unwrap() - 2.5).abs() < 1e-12);
    let pts: Vec<(i64, i64, i64)> = v["arg_points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            (
                p["m12"].as_i64().unwrap(),
                p["m13"].as_i64().unwrap(),
                p["m33"].as_i64().unwrap(),
            )
        })
        .collect();
    assert_eq!(pts, vec![(2, 0, 0), (3, 0, 0)]);
}

#[test]
fn human_and_json_numbers_agree() {
    let v = json_of(&[
        "optimize", "-n", "8", "-m", "8", "--preset", "randic", "--min", "--json",
    ]);
    let text = stdout(&run(&["optimize", "-n", "8", "-m", "8", "--preset", "randic", "--min"]));
    let value = v["optimal_value"].as_f64().unwrap();
    assert!(text.contains(&format!("optimum {value}")), "{text}");
    for c in v["candidates"].as_array().unwrap() {
        assert!(text.contains(&format!("value {}", c["value"].as_f64().unwrap())));
    }
}

#[test]
fn syntax_error_exits_3_with_caret() {
    let o = run(&["optimize", "-n", "8", "-m", "8", "--formula", "1/(i-j", "--min"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("1/(i-j\n      ^"), "{err}");
}

#[test]
fn optimize_with_witnesses() {
    let v = json_of(&[
        "optimize",
        "-n",
        "8",
        "-m",
        "8",
        "--preset",
        "randic",
        "--min",
        "--realize",
        "--json",
    ]);
    let w = &v["witnesses"][0];
    assert_valid("graph", w);
    assert_eq!(w["counts"], json!([0, 4, 0, 0, 4]));
}

#[test]
fn realize_formats() {
    let o = run(&["realize", "-n", "8", "-m", "8", "-p", "0,4,4", "--dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("graph G {") && dot.contains("(0,4,0,0,4)"), "{dot}");
    let v = json_of(&["realize", "-n", "8", "-m", "8", "-p", "0,4,4", "--json"]);
    assert_valid("graph", &v);
    assert_eq!(
        run(&["realize", "-n", "8", "-m", "8", "-p", "3,0,0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["realize", "-n", "8", "-m", "8", "-p", "1,2"]).status.code(),
        Some(2)
    );
}

#[test]
fn seed_env_override_is_honoured() {
    let with_env = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_chemhull"))
            .args(["realize", "-n", "14", "-m", "16", "-p", "2,2,10", "--json"])
            .env("CHEMHULL_SEED", seed)
            .output()
            .unwrap()
    };
    let a = with_env("7");
    let b = with_env("7");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let o = Command::new(env!("CARGO_BIN_EXE_chemhull"))
        .args(["presets"])
        .env("CHEMHULL_FORMAT", "json")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_valid("presets", &v);
}

#[test]
fn verify_and_limit() {
    let o = run(&["verify", "-n", "8", "-m", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Match"));
    let o = run(&["verify", "--up-to", "7"]);
    assert_eq!(o.status.code(), Some(0));
    // valid pairs: m from n-1 to floor(3n/2)
    assert_eq!(stdout(&o).lines().count(), 2 + 4 + 4 + 5 + 5);
    assert_eq!(run(&["verify", "-n", "11", "-m", "12"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "-n", "9", "-m", "9", "--limit", "8"]).status.code(),
        Some(2)
    );
}

#[test]
fn enumerate_ndjson_and_report() {
    let o = run(&["enumerate", "-n", "5", "-m", "5", "--dedupe"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(!lines.is_empty());
    for l in &lines {
        assert_valid("graph", l);
    }
    // (0,2,1) in five coordinates: m22 = 0, m23 = 2
    assert!(lines.iter().any(|l| l["counts"] == json!([0, 2, 0, 2, 1])));

    let v = json_of(&["enumerate", "-n", "8", "-m", "8", "--report", "--json"]);
    assert_valid("enumeration", &v);
    assert_eq!(v["polytope"]["vertices"].as_array().unwrap().len(), 7);
    let labeled = run(&["enumerate", "-n", "4", "-m", "3"]);
    assert_eq!(stdout(&labeled).lines().count(), 16);
}

#[test]
fn catalog_and_classify() {
    let v = json_of(&["catalog", "-n", "16", "-m", "15", "--json"]);
    assert_eq!(v["points"].as_array().unwrap().len(), 7);
    let table = json_of(&["catalog", "--table", "--json"]);
    assert!(table.as_array().unwrap().len() >= 21 + 29 + 3);
    let v = json_of(&["classify", "--preset", "abs", "--json"]);
    assert_eq!(v["classification"]["path_unique_min"], "holds");
    assert_eq!(v["classification"]["cycle_unique_min"], "holds");
}

#[test]
fn schemas_reject_malformed_documents() {
    let s = common::schema("polytope");
    assert!(!s.is_valid(
        &json!({"n": 8, "m": 8, "dim": 3, "regime": {"kind": {"kind": "tree"}, "parity": 0},
        "vertices": [{"name": "P88-V1", "m12": 0, "m13": 0, "m33": 0, "labels": []}],
        "facets": [], "equalities": []})
    ));
    assert!(!common::schema("error").is_valid(&json!({"code": "oops", "message": "", "detail": null})));
}

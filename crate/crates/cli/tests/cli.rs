use std::path::PathBuf;
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

fn toro(args: &[&str]) -> Output {
    toro_env(args, &[])
}

fn toro_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_toro"));
    c.args(args).env_remove("TORO_THREADS");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn schema(name: &str) -> JSONSchema {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
    JSONSchema::compile(&v).expect("schema compiles")
}

fn assert_valid(name: &str, v: &Value) {
    let s = schema(name);
    let msgs: Vec<String> = match s.validate(v) {
        Ok(()) => return,
        Err(errs) => errs.map(|e| format!("{e} at {}", e.instance_path)).collect(),
    };
    panic!("{name} schema rejects output: {msgs:?}\n{v:#}");
}

/// Runs with `--format json`, checks the status and validates stdout.
fn json_run(schema_name: &str, args: &[&str], status: i32) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = toro(&a);
    assert_eq!(out.status.code(), Some(status), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is json");
    assert_valid(schema_name, &v);
    assert_eq!(v["status"], status);
    v
}

/// Checks a failing run: nothing on stdout, one schema-valid error object on stderr.
fn error_run(args: &[&str], status: i32, kind: &str) -> Value {
    let out = toro(args);
    assert_eq!(out.status.code(), Some(status));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&out.stderr).expect("stderr is json");
    assert_valid("error", &v);
    assert_eq!(v["error"], kind);
    assert_eq!(v["status"], status);
    v
}

fn stdout(args: &[&str]) -> String {
    let out = toro(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn fock_relations_pass() {
    let v = json_run("relations", &["relations", "--module", "fock", "--n", "3", "--k", "0", "--max-degree", "6"], 0);
    assert_eq!(v["passed"], true);
    assert_eq!(v["report"]["labels_checked"], 30);
}

#[test]
fn vector_relations_pass() {
    for m in ["vector", "vector-bar"] {
        let v = json_run("relations", &["relations", "--module", m, "--n", "4", "--k", "2", "--u", "q1^2", "--max-degree", "4"], 0);
        assert_eq!(v["passed"], true);
    }
}

#[test]
fn resonant_tensor_is_ill_defined() {
    let args = ["relations", "--module", "tensor-vv", "--n", "3", "--k", "1", "--l", "0", "--ratio", "q1^1", "--max-degree", "2"];
    let v = json_run("relations", &args, 2);
    let witness = &v["report"]["ill_defined"][0]["detail"];
    assert!(witness.as_str().unwrap().contains("pole at support"), "{witness}");
}

#[test]
fn generic_tensor_passes() {
    let args = ["relations", "--module", "tensor-vv", "--k", "1", "--ratio", "q^3*d", "--max-degree", "2"];
    json_run("relations", &args, 0);
}

#[test]
fn macmahon_relations_and_invalid_gamma() {
    json_run("relations", &["relations", "--module", "macmahon-vacuum", "--max-degree", "3"], 0);
    json_run("relations", &["relations", "--module", "n", "--alpha", "1", "--beta", "1", "--max-degree", "3"], 0);
    error_run(&["relations", "--module", "macmahon", "--gamma", "1"], 1, "NotColorless");
}

#[test]
fn special_module_errors() {
    error_run(&["level", "--module", "special", "--alpha", "1", "--beta", "1", "--box", "2,2,2"], 1, "NotSpecial");
    error_run(&["level", "--module", "special", "--alpha", "1", "--beta", "1"], 1, "MissingArgument");
    let v = json_run("level", &["level", "--module", "special", "--alpha", "1", "--beta", "1", "--box", "1,1,3"], 0);
    assert_eq!(v["level"]["text"], "q^2");
}

#[test]
fn g_character_matches_weyl_sum_and_kt() {
    let base = ["character", "--module", "g", "--n", "3", "--mu", "2,1,1", "--nu", "2,2,2", "--max-degree", "10"];
    for method in ["weyl-sum", "kt", "enumerate"] {
        let mut a = base.to_vec();
        a.extend(["--compare", method]);
        let v = json_run("character", &a, 0);
        assert_eq!(v["compare"]["identical"], true);
        assert_eq!(v["dimensions"], v["compare"]["series"]);
    }
}

#[test]
fn vacuum_character() {
    assert_eq!(stdout(&["character", "--module", "macmahon-vacuum", "--max-degree", "7"]), "1,1,3,6,13,24,48,86\n");
    let v = json_run("character", &["character", "--module", "macmahon-vacuum", "--max-degree", "7", "--compare", "enumerate"], 0);
    assert_eq!(v["compare"]["first_mismatch"], Value::Null);
}

#[test]
fn fock_character_is_partition_numbers() {
    let v = json_run("character", &["character", "--module", "fock", "--max-degree", "10"], 0);
    assert_eq!(v["dimensions"], serde_json::json!([1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]));
    let tsv = stdout(&["character", "--module", "fock", "--max-degree", "3", "--compare", "enumerate", "--format", "tsv"]);
    assert_eq!(tsv, "degree\tdimension\tenumerate\n0\t1\t1\n1\t1\t1\n2\t2\t2\n3\t3\t3\n");
}

#[test]
fn compare_without_closed_form_is_invalid() {
    error_run(&["character", "--module", "fock", "--compare", "weyl-sum"], 1, "NoClosedForm");
    error_run(&["character", "--module", "macmahon", "--gamma", "3,2,1", "--compare", "enumerate"], 1, "NoClosedForm");
}

#[test]
fn young_render_golden() {
    let k0 = stdout(&["render", "--type", "young", "--parts", "7,4,2,2", "--n", "3", "--k", "0"]);
    let want0 = " 0  2  1  0  2  1 _0_~2~\n 1  0  2 _1_~0~\n 2  1 ~0~\n 0 _2_\n~1~\n";
    assert_eq!(k0, want0);
    let k2 = stdout(&["render", "--type", "young", "--parts", "7,4,2,2", "--n", "3", "--k", "2"]);
    let want2 = " 2  1  0  2  1  0 _2_~1~\n 0  2  1 _0_~2~\n 1  0 ~2~\n 2 _1_\n~0~\n";
    assert_eq!(k2, want2);
    assert_eq!(stdout(&["render", "--type", "young", "--parts", ""]), "~0~\n");
}

#[test]
fn plane_render_golden() {
    let s = stdout(&["render", "--type", "plane", "--alpha", "3,1", "--beta", "4,3,1,1", "--gamma", "3,2,1", "--n", "3", "--k", "0"]);
    let want = "        0\n      1   2\n    2   0   1\n      1   2   0\n    2   0   1\n      1   2   0\n    2   0   1\n  0   1   2   0\n1   2   0   1\n  0   1   2   0\n1   2   0   1\n  0   1   2\n    2   0\n";
    assert_eq!(s, want);
    let v = json_run("render", &["render", "--type", "plane", "--layers", "2,1/1"], 0);
    assert_eq!(v["type"], "plane");
    assert_eq!(stdout(&["render", "--type", "plane"]), "(empty)\n");
}

#[test]
fn malformed_input_is_rejected() {
    error_run(&["render", "--type", "young", "--parts", "1,2"], 1, "MalformedPartition");
    error_run(&["render", "--type", "young", "--parts", "a"], 1, "MalformedPartition");
    error_run(&["render", "--type", "plane", "--layers", "1/2"], 1, "MalformedPlanePartition");
    error_run(&["relations", "--module", "tensor-vv", "--ratio", "x^2"], 1, "MalformedMonomial");
    error_run(&["relations", "--module", "tensor-vv"], 1, "MissingArgument");
    error_run(&["relations", "--module", "fock", "--ratio", "q"], 1, "UnusedArgument");
    error_run(&["relations", "--module", "fock", "--n", "2"], 1, "UnsupportedN");
    error_run(&["relations", "--module", "fock", "--k", "3"], 1, "BadColor");
    error_run(&["relations", "--module", "nope"], 1, "Usage");
    error_run(&["frobnicate"], 1, "Usage");
    error_run(&["level", "--module", "g", "--nu", "1"], 1, "NotColorless");
}

#[test]
fn levels() {
    let cases: [(&[&str], &str); 5] = [
        (&["--module", "vector"], "1"),
        (&["--module", "fock"], "q"),
        (&["--module", "macmahon-vacuum"], "K"),
        (&["--module", "macmahon-vacuum", "--k-value", "q^3"], "q^3"),
        (&["--module", "g", "--mu", "2,1,1", "--nu", "2,2,2"], "q^(-3/2)*d^(3/2)"),
    ];
    for (args, want) in cases {
        let mut a = vec!["level"];
        a.extend_from_slice(args);
        let v = json_run("level", &a, 0);
        assert_eq!(v["level"]["text"], want, "{args:?}");
    }
    error_run(&["level", "--module", "macmahon-vacuum", "--k-value", "q1"], 1, "NonGenericK");
}

#[test]
fn colorless_report() {
    let v = json_run("colorless", &["colorless", "--parts", "3,2,1", "--n", "3"], 0);
    assert_eq!(v["colorless"], true);
    assert_eq!(v["v"], serde_json::json!([[1, 0, 0], [0, 1, 0], [0, 0, 1]]));
    let v = json_run("colorless", &["colorless", "--parts", "1", "--n", "3"], 0);
    assert_eq!(v["colorless"], false);
    error_run(&["colorless", "--parts", "1", "--n", "1"], 1, "UnsupportedN");
}

#[test]
fn orbit_reports() {
    let v = json_run("orbit", &["orbit", "--n", "4"], 0);
    assert_eq!(v["minimal"].as_array().unwrap().len(), 24);
    let v = json_run("orbit", &["orbit", "--n", "3", "--nu", "2,1"], 0);
    assert_eq!(v["is_minimal"], true);
    assert!(!v["steps"].as_array().unwrap().is_empty());
    error_run(&["orbit", "--n", "3", "--nu", "2,1,1"], 1, "NotColorless");
    error_run(&["orbit", "--n", "3", "--nu", "4,1,1"], 1, "WidthViolation");
}

#[test]
fn resonance_reports() {
    let v = json_run("resonance", &["resonance", "--ratio", "q1^3"], 0);
    assert_eq!(v["classification"]["kind"], "ill-defined");
    assert_eq!(v["brute_force"]["agree"], true);
    let v = json_run("resonance", &["resonance", "--ratio", "q2"], 0);
    assert_eq!(v["classification"]["kind"], "submodule");
    let v = json_run("resonance", &["resonance", "--ratio", "q^3"], 0);
    assert_eq!(v["classification"]["kind"], "irreducible");
    let v = json_run("resonance", &["resonance", "--pair", "fock", "--k", "1", "--ratio", "q2^2*q1", "--max-degree", "3"], 0);
    assert_eq!(v["classification"], serde_json::json!({ "kind": "submodule", "a": 0, "b": 1 }));
    assert_eq!(v["submodule_relations"]["passed"], true);
    let v = json_run("resonance", &["resonance", "--pair", "fock", "--ratio", "q2^-1"], 0);
    assert_eq!(v["classification"]["kind"], "quotient");
}

#[test]
fn truncated_scan_reports_mismatch() {
    // a submodule whose vanishing coefficient lies outside a window of width 1
    let v = json_run("resonance", &["resonance", "--ratio", "q2*q1^6", "--window", "1"], 3);
    assert_eq!(v["classification"]["kind"], "submodule");
    assert_eq!(v["brute_force"]["agree"], false);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["relations", "--module", "macmahon-general", "--alpha", "1", "--beta", "1", "--max-degree", "3", "--format", "json"];
    let a = toro_env(&args, &[("TORO_THREADS", "1")]);
    let b = toro_env(&args, &[("TORO_THREADS", "4")]);
    let c = toro(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let bad = toro_env(&args, &[("TORO_THREADS", "zero")]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    let out = toro(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("relations"));
}

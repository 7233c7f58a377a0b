use serde_json::Value;

use super::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("gowerslab").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = call(args);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}"));
    (code, v)
}

fn without_runtime(mut v: Value) -> Value {
    v["meta"].as_object_mut().unwrap().remove("runtime_ms");
    v
}

#[test]
fn gamma_reports_value_and_tail() {
    let (code, v) = json(&["primes", "gamma", "--pmax", "100000"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "primes gamma");
    let g = v["result"]["value"].as_f64().unwrap();
    assert!((g - 0.5189).abs() < 1e-4, "{g}");
    assert!(v["result"]["tail_bound"].as_f64().unwrap() > 0.0);
    assert_eq!(v["meta"]["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn key_identity_passes() {
    let (code, v) = json(&["bracket", "verify", "--case", "key", "--n-max", "10000"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["passed"], true);
    assert_eq!(v["result"]["n_checked"], 10000);
    assert_eq!(v["meta"]["precision"], "rational");
    // rationals travel as "p/q" strings
    assert!(v["params"]["params"][0].as_str().unwrap().contains('/'));
}

#[test]
fn usage_errors_exit_2() {
    let (code, out, err) = call(&["gowers", "norm", "--k", "7", "--domain", "cyclic", "--n", "8", "--phase", "n/8"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("--k"));
    let (code, _, err) = call(&["primes", "gamma", "--frobnicate"]);
    assert_eq!(code, 2);
    assert!(err.contains("Usage"));
    let (code, _, err) = call(&["equidist", "weyl", "--params", "{not json"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
    let (code, _, _) = call(&["nil", "eval", "--group", "free5", "--seq", "{}"]);
    assert_eq!(code, 2);
}

#[test]
fn failed_verification_exits_1() {
    let p = r#"{"case":"v","alpha":"3/11","beta":"1/10","n":300,"eps":0.01,"m":3}"#;
    let (code, v) = json(&["verify", "l1", "--params", p, "--seed", "3"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["passed"], false);
    assert!(v["result"]["invocation"].as_str().unwrap().ends_with("--seed 3"));
}

#[test]
fn output_is_reproducible_and_thread_independent() {
    let base = ["gowers", "quadruples", "--n", "24", "--phase", "3/7*n*n", "--shifts", "1..8"];
    let runs: Vec<Value> = ["1", "2", "1"]
        .iter()
        .map(|t| {
            let mut a = base.to_vec();
            a.extend(["--threads", t]);
            let (code, v) = json(&a);
            assert_eq!(code, 0);
            without_runtime(v)
        })
        .collect();
    assert_eq!(serde_json::to_string(&runs[0]).unwrap(), serde_json::to_string(&runs[1]).unwrap());
    assert_eq!(runs[0], runs[2]);
    assert!(runs[0]["result"]["meets_bound"].as_bool().unwrap());
}

#[test]
fn seeded_parameters_are_reproducible() {
    let a = ["bracket", "verify", "--case", "trilinear", "--n-max", "20", "--seed", "9"];
    let (c1, v1) = json(&a);
    let (c2, v2) = json(&a);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(without_runtime(v1.clone()), without_runtime(v2));
    let (_, other) = json(&["bracket", "verify", "--case", "trilinear", "--n-max", "20", "--seed", "10"]);
    assert_ne!(v1["params"]["form"], other["params"]["form"]);
}

#[test]
fn nil_eval_defaults_to_csv() {
    let (code, out, _) = call(&["nil", "eval", "--group", "free3", "--seq", r#"{"alpha":"1/3","beta":"2/5","gamma":"1/7"}"#, "--n-max", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out, "n,phase\n1,0/1\n2,0/1\n3,3/7\n4,4/7\n");
    let (code, v) = json(&["nil", "eval", "--group", "free2:2", "--seq", r#"{"xi":["1/3","1/5"]}"#, "--coord", "2,1", "--n-max", "3", "--output", "json"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["phases"].as_array().unwrap().len(), 3);
}

#[test]
fn power_check_and_norm() {
    let (code, v) = json(&["nil", "power-check", "--params", r#"{"alpha":"1/3","beta":"2/5","gamma":"1/7","n_max":40}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["max_residual"], 0.0);
    let (code, v) = json(&["gowers", "norm", "--domain", "cyclic", "--k", "3", "--n", "13", "--phase", "2/13*n*n", "--precision", "rational"]);
    assert_eq!(code, 0);
    assert!((v["result"]["norm"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn csv_flattens_nested_results() {
    let (code, out, _) = call(&["equidist", "relation", "--params", r#"{"alphas":["1/2","1/3"]}"#, "--output", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "key,value\nfound,true\nrelation.m.0,2\nrelation.m.1,0\nrelation.residual,0.0\n");
}

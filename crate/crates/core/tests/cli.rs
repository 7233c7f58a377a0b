use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_gowerslab"));
    c.env_remove("GOWERSLAB_THREADS");
    c
}

fn strip_runtime(out: &Output) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    v["meta"].as_object_mut().unwrap().remove("runtime_ms");
    v
}

#[test]
fn exit_codes() {
    let ok = bin().args(["bracket", "verify", "--case", "key", "--n-max", "2000"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(ok.stderr.is_empty());

    let usage = bin().args(["gowers", "norm", "--k", "9"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    assert!(usage.stdout.is_empty());

    let p = r#"{"case":"v","alpha":"3/11","beta":"1/10","n":300,"eps":0.01,"m":3}"#;
    let fail = bin().args(["verify", "l1", "--params", p]).output().unwrap();
    assert_eq!(fail.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&fail.stderr).trim(), "verification failed");
}

#[test]
fn thread_count_from_env_does_not_change_output() {
    let args = ["gowers", "norm", "--domain", "interval", "--k", "2", "--n", "40", "--phase", "{5/7*n}*n"];
    let a = bin().args(args).env("GOWERSLAB_THREADS", "1").output().unwrap();
    let b = bin().args(args).env("GOWERSLAB_THREADS", "3").output().unwrap();
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(strip_runtime(&a), strip_runtime(&b));
}

#[test]
fn sumset_reads_stdin() {
    let mut child = bin()
        .args(["sumset", "lev", "--input", "-", "--params", r#"{"n":60}"#])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let set: String = (1..=60).filter(|x| x % 3 != 1).map(|x| format!("{x}\n")).collect();
    child.stdin.take().unwrap().write_all(format!("x\n{set}").as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["command"], "sumset lev");
}

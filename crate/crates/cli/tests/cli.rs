use std::process::{Command, Output};

use qsymx_core::QSymElement;

fn qsymx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsymx"))
        .args(args)
        .env_remove("QSYMX_MAX_DEGREE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_examples() {
    let o = qsymx(&["eval", "--char", "zeta-minus", "--basis", "M", "--comp", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1/2");

    let o = qsymx(&["eval", "--char", "zeta-plus", "--basis", "M", "--comp", "3"]);
    assert_eq!(stdout(&o).trim(), "0");

    let o = qsymx(&["eval", "--char", "zeta", "--perm", "123"]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn verify_cg8_passes() {
    let o = qsymx(&["verify", "--id", "cg8", "--depth", "standard"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("cg8"), "{out}");
    assert!(out.contains("pass"));
}

#[test]
fn verify_all_json() {
    let o = qsymx(&["--json", "verify", "--all", "--depth", "small"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let reports = v.as_array().unwrap();
    assert!(reports.len() >= 28);
    assert!(reports.iter().all(|r| r["status"] == "pass"));
}

#[test]
fn usage_errors_exit_2_without_stdout() {
    for args in [
        &["eval", "--char", "zeta", "--comp", "2,0"][..],
        &["eval", "--char", "zeta"][..],
        &["eval", "--char", "bogus", "--comp", "1"][..],
        &["verify", "--id", "no_such_identity"][..],
        &["table", "--char", "zeta", "--degree", "12"][..],
        &["mul", "--left", "M[1", "--right", "1"][..],
        &["eval", "--char", "zeta-inv", "--perm", "21"][..],
        &["frobnicate"][..],
    ] {
        let o = qsymx(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?} wrote to stdout");
    }
    let o = qsymx(&["eval", "--char", "zeta", "--comp", "1,-2"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("positive"));
}

#[test]
fn degree_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qsymx"))
        .args(["table", "--char", "zeta-minus", "--degree", "11"])
        .env("QSYMX_MAX_DEGREE", "11")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1024);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));

    let o = Command::new(env!("CARGO_BIN_EXE_qsymx"))
        .args(["table", "--char", "zeta", "--degree", "15"])
        .env("QSYMX_MAX_DEGREE", "40")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn element_json_round_trips() {
    let o = qsymx(&["--json", "mul", "--basis", "F", "--left", "2,1", "--right", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let json = stdout(&o);
    let product: QSymElement = serde_json::from_str(&json).unwrap();
    let text = qsymx(&["mul", "--basis", "F", "--left", "2,1", "--right", "1"]);
    let parsed: QSymElement = stdout(&text).trim().parse().unwrap();
    assert_eq!(product, parsed);

    // the JSON is accepted back as input
    let again = qsymx(&["--json", "convert", "--to", "F", "--elem", json.trim()]);
    let back: QSymElement = serde_json::from_str(&stdout(&again)).unwrap();
    assert_eq!(back, product);
}

#[test]
fn algebra_operations() {
    let o = qsymx(&["antipode", "--elem", "M[2,1]"]);
    assert_eq!(stdout(&o).trim(), "M[1,2] + M[3]");
    let o = qsymx(&["convert", "--to", "F", "--elem", "M[2]"]);
    assert_eq!(stdout(&o).trim(), "-F[1,1] + F[2]");
    let o = qsymx(&["coproduct", "--elem", "M[1]"]);
    assert_eq!(stdout(&o).trim(), "1 ⊗ M[1] + M[1] ⊗ 1");
}

#[test]
fn decompose_matches_closed_forms() {
    let o = qsymx(&["decompose", "--degree", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("0 differ"), "{out}");
    assert!(!out.contains("MISMATCH"));

    let o = qsymx(&["--json", "decompose", "--degree", "5", "--char", "zeta-inv"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mismatches"], 0);
    assert_eq!(v["rows"].as_array().unwrap().len(), 32);
}

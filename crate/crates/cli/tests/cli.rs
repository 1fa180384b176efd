use std::process::{Command, Output};

use serde_json::Value;

fn p1h(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_p1h")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn sum_of_two_identities_is_equivalent_to_its_expansion() {
    let o = p1h(&["equiv", "--field", "Q", "(X^2-1)/X", "X/1+X/1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).trim(), "equivalent");
}

#[test]
fn classify_json_is_stable() {
    let o = p1h(&["classify", "--field", "F3", "--json", "X/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        r#"{"coherent":true,"degree":1,"kind":"pointed","resultant":2,"witt":{"disc":"nonresidue","rank":1}}"#
    );
}

#[test]
fn inequivalent_inputs_exit_one() {
    let o = p1h(&["equiv", "--json", "X/1", "X/2"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["equivalent"], Value::Bool(false));

    let o = p1h(&["certify", "--json", "--field", "F5", "X/1", "X/2"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "not-equivalent");
}

#[test]
fn certificates_verify_and_tampering_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let p = path.to_str().unwrap();
    let o = p1h(&["certify", "--field", "Q", "(X^2+3X)/(1/2)", "X^2/(1/2)", "--out", p]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = p1h(&["verify", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("valid"));

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["target"]["B"] = serde_json::json!(["1/3"]);
    std::fs::write(&path, v.to_string()).unwrap();
    let o = p1h(&["verify", "--json", p]);
    assert_eq!(o.status.code(), Some(1));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["valid"], Value::Bool(false));
    assert!(r["reason"].as_str().unwrap().contains("target"), "{r}");

    // a coefficient changed inside a step
    let o = p1h(&["certify", "--field", "F5", "(X^2+X+1)/(2X+3)", "(X^2+4)/(3X+1)", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let a = &mut v["steps"][0]["A"][0];
    let bumped = match a.as_array().and_then(|c| c.first()).and_then(Value::as_i64) {
        Some(c) => serde_json::json!([(c + 1) % 5]),
        None => serde_json::json!([1]),
    };
    let old = std::mem::replace(a, bumped);
    assert_ne!(*a, old);
    std::fs::write(&path, v.to_string()).unwrap();
    let o = p1h(&["verify", p]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("invalid"));
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &["classify", "X^2/("][..],
        &["classify", "--field", "F4", "X/1"],
        &["equiv", "(X+1)/(X+1)", "X/1"],
        &["reduce-kt", "T,1;0,1"],
        &["oracle", "--q", "7", "--n", "1"],
    ] {
        let o = p1h(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = p1h(&["verify", "/nonexistent/certificate.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn arithmetic_commands() {
    let o = p1h(&["oplus", "X/1", "X/1"]);
    assert_eq!(stdout(&o).trim(), "(X^2 - 1)/(X)");
    let o = p1h(&["cfrac", "--json", "(X^2-1)/X"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    let o = p1h(&["bezout", "--json", "--field", "F3", "X/2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["matrix"], serde_json::json!([[2]]));
    let o = p1h(&["reduce-kt", "--json", "--field", "F3", "T,1;1,0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["at_0"], v["at_1"]);
}

#[test]
fn unpointed_and_projective_space() {
    let o = p1h(&["--unpointed", "equiv", "--field", "F5", "X/1", "X/4"]);
    assert_eq!(o.status.code(), Some(0));
    let o = p1h(&["equiv", "--unpointed", "--field", "F5", "1 0 ; 0 1", "1 0 ; 0 2"]);
    assert_eq!(o.status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pd.json");
    let p = path.to_str().unwrap();
    let o = p1h(&["pd-certify", "--field", "F3", "(X^2+1, X, 2)", "--out", p]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(p1h(&["verify", p]).status.code(), Some(0));
    let o = p1h(&["pd-equiv", "--field", "F3", "(X^2, X, 1)", "(X, 1, 1)"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn small_oracle_agrees() {
    let o = p1h(&["oracle", "--json", "--q", "3", "--n", "1", "--d", "1", "--workers", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["agreement"], Value::Bool(true));
    assert_eq!(v["points"], 6);
}

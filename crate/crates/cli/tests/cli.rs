use std::process::{Command, Output};

use serde_json::Value;

fn qdisc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdisc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = qdisc(&a);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).expect("valid json")
}

#[test]
fn normal_forms() {
    let v = json(&["nf", "z^* z"]);
    assert_eq!(v["normal_form"], "(1 - q^2) + q^2 z z^*");
    assert_eq!(v["schema_version"], "qdisc/1");
    let v = json(&["nf", "t12 t21", "--algebra", "c_sl2_q"]);
    assert_eq!(v["normal_form"], "-q^-1 + q^-1 t11 t22");
    let v = json(&["nf", "f0 z", "--algebra", "finite"]);
    assert_eq!(v["normal_form"], "0");
}

#[test]
fn action() {
    let o = qdisc(&["act", "F", "z"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "q^(1/2)");
    let o = qdisc(&["act", "K", "z^2", "--algebra", "holo"]);
    assert_eq!(stdout(&o).trim(), "q^4 z^2");
}

#[test]
fn fock_matrix_is_row_major_strings() {
    let v = json(&["fock", "z^*", "--N", "2"]);
    let m = v["matrix"].as_array().unwrap();
    assert_eq!(m.len(), 3);
    assert_eq!(m[0][1], "1 - q^2");
    assert!(m.iter().flat_map(|r| r.as_array().unwrap()).all(Value::is_string));
    let v = json(&["fock", "z", "--N", "3", "--q0", "0.5"]);
    let x = v["orthonormal"][1][0].as_f64().unwrap();
    assert!((x - 0.75f64.sqrt()).abs() < 1e-12);
}

#[test]
fn integral_values() {
    let v = json(&["integral", "z f0 z^*", "--q0", "1/2"]);
    assert_eq!(v["value"], "q^-2 - 1");
    assert!((v["numeric"].as_f64().unwrap() - 3.0).abs() < 1e-12);
}

#[test]
fn rootdata_json() {
    let v = json(&["rootdata", "E8"]);
    assert_eq!(v["positive_roots"].as_array().unwrap().len(), 120);
    assert_eq!(v["l0_candidates"].as_array().unwrap().len(), 0);
    assert_eq!(v["cartan"]["matrix"][0][0], "2");
    let v = json(&["rootdata", "A3"]);
    assert_eq!(v["l0_candidates"].as_array().unwrap().len(), 3);
    assert_eq!(qdisc(&["rootdata", "Q7"]).status.code(), Some(2));
}

#[test]
fn demos() {
    let o = qdisc(&["rmatrix-demo"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(1 - q^2) + q^2 z z^*"));
    let v = json(&["flag-demo"]);
    let lambdas: Vec<&str> = v["quasi_commutation"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["lambda"].as_str().unwrap())
        .collect();
    assert_eq!(lambdas, ["q^-2", "1", "q^2"]);
    assert_eq!(v["z_z_prime"], "1");
    assert_eq!(v["action_match"].as_array().unwrap().len(), 4 * 9);
}

#[test]
fn exit_codes() {
    assert_eq!(qdisc(&["verify"]).status.code(), Some(2));
    assert_eq!(qdisc(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(qdisc(&["nf", "z +"]).status.code(), Some(2));
    assert_eq!(qdisc(&["nf", "w"]).status.code(), Some(2));
    assert_eq!(qdisc(&["nf", "z", "--algebra", "nope"]).status.code(), Some(2));
    assert_eq!(qdisc(&["nf", "z", "--q0", "x"]).status.code(), Some(2));
    assert_eq!(qdisc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_report() {
    let o = qdisc(&["verify", "rmatrix", "rootdata", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema_version"], "qdisc-verify/1");
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"].as_array().unwrap().len(), 2);
    assert_eq!(v["options"]["q0"], "1/4");
    let o = qdisc(&["verify", "scalars"]);
    assert!(stdout(&o).contains("PASS"));
}

use std::process::{Command, Output};

use serde_json::Value;

fn qsphere(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsphere")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim().to_string()
}

#[test]
fn normalize_examples() {
    // z2 zs2 + (1 - q^2) z1 zs1 reduces further by z1 zs1 + z2 zs2 = 1
    assert_eq!(stdout(&qsphere(&["normalize", "--n", "2", "zs2*z2"])), "-q^2*z1*zs1 + 1");
    assert_eq!(
        stdout(&qsphere(&["normalize", "--n", "2", "z2*zs2 + (1 - q^2)*z1*zs1"])),
        stdout(&qsphere(&["normalize", "--n", "2", "zs2*z2"]))
    );
    assert_eq!(stdout(&qsphere(&["normalize", "--n", "2", "z1*zs1 + z2*zs2"])), "1");
    assert_eq!(stdout(&qsphere(&["normalize", "0"])), "0");
    assert!(stdout(&qsphere(&["normalize", "--n", "2", "z1*zs1 @ zs2*z2"])).contains(" @ "));
}

#[test]
fn parse_errors_report_position() {
    let o = qsphere(&["normalize", "z1 +* 2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 4"));
    let o = qsphere(&["normalize", "--n", "2", "z3"]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn eval_examples() {
    assert_eq!(stdout(&qsphere(&["eval", "--q", "1/2", "q^2*zs1*z1 + zs2*z2 - 1"])), "0");
    assert_eq!(stdout(&qsphere(&["eval", "--q", "2/3", "q - q"])), "0");
    assert_eq!(stdout(&qsphere(&["eval", "--q", "1/2", "1 - q^2"])), "3/4");
    let o = qsphere(&["eval", "--q", "0", "q"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_passes_and_exits_zero() {
    let o = qsphere(&["verify", "--suite", "antipode-q", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("antipode-q n=2: "));
    assert!(!stdout(&o).contains("FAIL"));
    let o = qsphere(&["verify", "--suite", "sphere", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn structured_report_schema() {
    let o = qsphere(&["verify", "--suite", "sphere,projections", "--n", "1,2", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let reports = v.as_array().unwrap();
    let order: Vec<(String, u64)> =
        reports.iter().map(|r| (r["suite"].as_str().unwrap().to_string(), r["n"].as_u64().unwrap())).collect();
    let expected = [("sphere", 1), ("sphere", 2), ("projections", 1), ("projections", 2)];
    assert_eq!(order, expected.map(|(s, n)| (s.to_string(), n)).to_vec());
    for r in reports {
        let checks = r["checks"].as_array().unwrap();
        for c in checks {
            for key in ["name", "status", "lhs", "rhs"] {
                assert!(c.get(key).is_some(), "missing {key}");
            }
        }
        let pass = checks.iter().filter(|c| c["status"] == "pass").count() as u64;
        assert_eq!(r["summary"]["pass"].as_u64(), Some(pass));
        assert_eq!(r["summary"]["fail"].as_u64(), Some(0));
        assert!(r["timing"]["totalMillis"].is_u64());
    }
}

#[test]
fn structured_output_is_deterministic_apart_from_timing() {
    let args =
        ["verify", "--suite", "antipode-flip,coinvariants", "--n", "2", "--format", "structured", "--workers", "3"];
    let strip = |o: Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        for r in v.as_array_mut().unwrap() {
            r.as_object_mut().unwrap().remove("timing");
        }
        v
    };
    assert_eq!(strip(qsphere(&args)), strip(qsphere(&args)));
}

#[test]
fn bohm_report_records_the_psi_exponent_finding() {
    let o = qsphere(&["verify", "--suite", "bohm-theorem", "--n", "2", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let check = v[0]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"].as_str().unwrap().contains("ψ(W_ij) exponent"))
        .expect("exponent check present");
    assert_eq!(check["status"], "pass");
    assert!(check["rhs"].as_str().unwrap().contains("erratum"));
}

#[test]
fn invalid_configurations_are_usage_errors() {
    for args in [
        vec!["verify", "--suite", "nope"],
        vec!["verify", "--n", "5"],
        vec!["verify", "--max-degree", "13"],
        vec!["verify", "--q", "0", "--suite", "sphere"],
        vec!["verify", "--format", "xml"],
    ] {
        assert_eq!(qsphere(&args).status.code(), Some(2), "{args:?}");
    }
}

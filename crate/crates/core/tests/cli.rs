use std::process::{Command, Output};

fn eqml(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqml")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    eqml(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = eqml(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn documented_exit_codes() {
    assert_eq!(code(&["parse", "A + B <-> 2C"]), 0);
    assert_eq!(code(&["parse", "2 A +"]), 2);
    assert_eq!(code(&["ml-degree", "0A <-> B"]), 2);
    assert_eq!(code(&["ml-degree", "A + B <-> C + D + E"]), 3);
    assert_eq!(code(&["ml-degree", "2A <-> 3B", "--method", "curve"]), 3);
    assert_eq!(code(&["mle", "A + B <-> 2C", "--ke", "4", "--counts", "1,1,0"]), 5);
    assert_eq!(code(&["mle", "A + B <-> 2C", "--ke", "4", "--counts", "30,30,40"]), 0);
    assert_eq!(code(&["catalog"]), 0);
}

#[test]
fn identical_invocations_give_identical_bytes() {
    for args in [
        vec!["ml-degree", "A + B <-> 2C", "--method", "both", "--seed", "11", "--output", "json"],
        vec!["mle", "A + B <-> 3C", "--ke", "1", "--counts", "4,5,6", "--output", "json"],
        vec!["catalog", "--output", "tsv"],
    ] {
        let a = eqml(&args);
        let b = eqml(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn json_reports_carry_schema_fields() {
    let v = json(&["ml-degree", "A + B <-> 3C", "--ke", "1", "--method", "both", "--output", "json"]);
    assert!(v["tool_version"].is_string());
    let f = &v["faithful"];
    for key in [
        "reaction",
        "ke",
        "parameter_space_count",
        "fiber_degree",
        "variety_count_quotient",
        "degeneracy",
        "caveats",
        "tool_version",
    ] {
        assert!(f.get(key).is_some(), "missing {key}");
    }
    assert_eq!(f["parameter_space_count"], 9);
    assert_eq!(v["curve"]["ml_degree"], 3);
    assert!(v["comparison"].as_array().unwrap().iter().any(|l| l.as_str().unwrap().contains("fiber degree 3")));

    let v = json(&["mle", "A <-> B", "--ke", "1", "--counts", "7,3", "--output", "json"]);
    for key in ["optimum", "log_likelihood", "observed_ml_count", "caveats", "tool_version"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let p: Vec<f64> = v["optimum"].as_array().unwrap().iter().map(|s| s.as_str().unwrap().parse().unwrap()).collect();
    assert!((p[0] - 0.5).abs() < 1e-12 && (p[1] - 0.5).abs() < 1e-12);

    let v = json(&["catalog", "--output", "json"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 17);
    assert_eq!(v["passed"], true);
    let row = rows.iter().find(|r| r["reaction"] == "3A + 3B <-> 3C").unwrap();
    assert_eq!(row["status"], "discrepancy_documented");
    assert_eq!(row["published_value"], 9);
}

#[test]
fn nonphysical_constant_warns_without_failing() {
    let out = eqml(&["ml-degree", "A <-> B", "--ke", "-1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().starts_with("warning:"));
    assert!(text.contains("parameter-space count: 0"));
}

#[test]
fn tolerance_flags_are_accepted() {
    let out = eqml(&[
        "mle", "A + B <-> 2C", "--ke", "4", "--counts", "30,30,40", "--tol-residual", "1e-8", "--tol-cluster", "1e-6",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("optimum: 2.5"));
}

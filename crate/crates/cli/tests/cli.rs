use std::process::{Command, Output};

fn ellreg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellreg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_all_json() {
    let o = ellreg(&["verify", "--all", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 31);
    let keys: Vec<_> = arr[0].as_object().unwrap().keys().cloned().collect();
    for k in ["name", "lhs", "rhs", "abs_err", "rel_err", "tolerance", "pass", "runtime_ms", "paper_location"] {
        assert!(keys.iter().any(|x| x == k), "missing {}", k);
    }
    assert!(arr.iter().all(|r| r["pass"] == true));
}

#[test]
fn verify_table_summary() {
    let o = ellreg(&["verify", "--prefix", "hyp_"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("3/3 checks passed"));
}

#[test]
fn impossible_tolerance_exits_one() {
    let o = ellreg(&["verify", "--check", "thm_L27", "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn qexpand_theta3() {
    let o = ellreg(&["qexpand", "theta3(q)", "--order", "240", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"[[0,"1"],[24,"2"],[96,"2"],[216,"2"]]"#);
}

#[test]
fn qexpand_rational_coefficients() {
    let o = ellreg(&["qexpand", "1/3 * theta2(q)", "--order", "240", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"[[6,"2/3"],[54,"2/3"],[150,"2/3"]]"#);
}

#[test]
fn lvalue_both_routes_agree() {
    let o = ellreg(&["lvalue", "--curve", "32", "--method", "both", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["difference"].as_f64().unwrap() <= 1e-8);
    assert_eq!(v["results"].as_array().unwrap().len(), 2);
}

#[test]
fn hyp_subcommands() {
    let o = ellreg(&["hyp", "ftilde", "--alpha", "1/4", "--beta", "1/4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("45.32552910886"));
    let o = ellreg(&["hyp", "eval", "--params", "1/2,1/2,1,3/2,3/4"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["qexpand", "eta(q", "--order", "48"],
        vec!["verify", "--bogus"],
        vec!["verify", "--check", "nonexistent"],
        vec!["verify", "--order", "0"],
        vec!["lvalue", "--curve", "27", "--method", "integral"],
        vec!["hyp", "ftilde", "--alpha", "1.5", "--beta", "0.5"],
    ] {
        let o = ellreg(&args);
        assert_eq!(o.status.code(), Some(2), "{:?}", args);
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn malformed_expression_reports_offset() {
    let o = ellreg(&["qexpand", "eta(q) + )", "--order", "48"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("byte 9"), "{}", err);
}

#[test]
fn help_goes_to_stdout() {
    let o = ellreg(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("qexpand"));
}

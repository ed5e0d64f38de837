use ellreg::verify::{
    all_pass, check_names, run_all, run_check, CheckReport, CheckStatus, Side, VerifyConfig, VerifyError,
};

fn strip_time(mut r: Vec<CheckReport>) -> Vec<CheckReport> {
    for x in &mut r {
        x.runtime_ms = 0.0;
    }
    r
}

#[test]
fn full_suite_passes_in_registry_order() {
    let reports = run_all(&VerifyConfig::default(), None).unwrap();
    for r in &reports {
        println!("{:<24} pass={} abs={:.3e} rel={:.3e} tol={:.1e} {:?}", r.name, r.pass, r.abs_err, r.rel_err, r.tolerance, r.note);
    }
    let names: Vec<_> = reports.iter().map(|r| r.name.as_str()).collect();
    assert_eq!(names, check_names());
    assert!(all_pass(&reports));
}

#[test]
fn prefix_filter() {
    let cfg = VerifyConfig { order24: 480, ..Default::default() };
    let qs = run_all(&cfg, Some("qs_")).unwrap();
    assert_eq!(qs.len(), 12);
    assert!(qs.iter().all(|r| r.lhs == Side::Exact("exact".into()) && r.abs_err == 0.0));
    let none = run_all(&cfg, Some("zz")).unwrap();
    assert!(none.is_empty() && all_pass(&none));
}

#[test]
fn unknown_check() {
    assert_eq!(
        run_check("nonexistent", &VerifyConfig::default()),
        Err(VerifyError::UnknownCheck("nonexistent".into()))
    );
}

#[test]
fn reports_are_reproducible() {
    let cfg = VerifyConfig { seed: Some(7), jobs: Some(3), ..Default::default() };
    let a = strip_time(run_all(&cfg, Some("num_")).unwrap());
    let b = strip_time(run_all(&cfg, Some("num_")).unwrap());
    assert_eq!(a, b);
    assert!(all_pass(&a));
    let c = strip_time(run_all(&VerifyConfig { seed: Some(8), ..cfg }, Some("num_")).unwrap());
    assert_ne!(a, c);
}

#[test]
fn failed_theorem_forces_dependent_failure() {
    let cfg = VerifyConfig { tolerance: Some(1e-300), ..Default::default() };
    let r = run_check("reg_final_32", &cfg).unwrap();
    assert_eq!(r.depends_on, Some("thm_L32"));
    assert!(!r.pass);
    assert_eq!(r.status, CheckStatus::Fail);
    assert!(r.note.unwrap().contains("thm_L32"));
}

#[test]
fn thm_l32_within_tolerance() {
    let r = run_check("thm_L32", &VerifyConfig::default()).unwrap();
    assert!(r.pass && r.abs_err <= 1e-7);
}

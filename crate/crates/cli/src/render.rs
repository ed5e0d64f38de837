use std::fmt::Write as _;

use ellreg::qseries::FormalSeries;
use ellreg::verify::{CheckReport, CheckStatus, Side};

/// 17 significant digits; JSON has no NaN, so non-finite values become null.
pub fn number(x: f64) -> String {
    if x.is_finite() {
        format!("{:.16e}", x)
    } else {
        "null".to_string()
    }
}

fn string(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn side(s: &Side) -> String {
    match s {
        Side::Real(x) => number(*x),
        Side::Exact(t) => string(t),
    }
}

/// One report as a JSON object with a fixed field order.
pub fn report_json(r: &CheckReport) -> String {
    format!(
        "{{\"name\":{},\"lhs\":{},\"rhs\":{},\"abs_err\":{},\"rel_err\":{},\"tolerance\":{},\"pass\":{},\"runtime_ms\":{},\"paper_location\":{}}}",
        string(&r.name),
        side(&r.lhs),
        side(&r.rhs),
        number(r.abs_err),
        number(r.rel_err),
        number(r.tolerance),
        r.pass,
        number(r.runtime_ms),
        string(&r.paper_location),
    )
}

pub fn reports_json(reports: &[CheckReport]) -> String {
    let items: Vec<String> = reports.iter().map(report_json).collect();
    format!("[{}]", items.join(","))
}

fn status_label(r: &CheckReport) -> &'static str {
    match r.status {
        CheckStatus::Pass => "PASS",
        CheckStatus::Fail => "FAIL",
        CheckStatus::NonzeroNegative => "WARN",
    }
}

pub fn reports_table(reports: &[CheckReport]) -> String {
    let width = reports.iter().map(|r| r.name.len()).max().unwrap_or(4).max(4);
    let mut out = String::new();
    let _ = writeln!(out, "{:<width$}  {:<6}{:>11}{:>11}{:>11}", "check", "status", "abs_err", "rel_err", "tol");
    for r in reports {
        let _ = write!(
            out,
            "{:<width$}  {:<6}{:>11.3e}{:>11.3e}{:>11.3e}",
            r.name,
            status_label(r),
            r.abs_err,
            r.rel_err,
            r.tolerance
        );
        if let Some(note) = &r.note {
            let _ = write!(out, "  {}", note);
        }
        out.push('\n');
    }
    let passed = reports.iter().filter(|r| r.pass).count();
    let _ = writeln!(out, "{}/{} checks passed", passed, reports.len());
    out
}

/// `[[e, "p/q"], ...]` with exponents in 24ths.
pub fn series_json(s: &FormalSeries) -> String {
    let items: Vec<String> = s.dump().iter().map(|(e, c)| format!("[{},{}]", e, string(c))).collect();
    format!("[{}]", items.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_keep_seventeen_digits() {
        assert_eq!(number(0.1), "1.0000000000000001e-1");
        assert_eq!(number(f64::NAN), "null");
    }
}

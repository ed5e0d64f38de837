//! Registry of named checks covering the exact q-series identities, numeric
//! lemmas, the three L-value formulas, the hypergeometric structure and the
//! regulator coefficient chain.

mod exact;
mod numeric;

use std::f64::consts::PI;
use std::time::Instant;

use rayon::prelude::*;

use crate::qseries::{RealPeriod, DEFAULT_ORDER24, DENOM};
use exact::ExactOutcome;
use numeric::Measured;

pub use numeric::closed_form_l2;

/// One side of a check: a number, or a symbolic note for exact checks.
#[derive(Clone, Debug, PartialEq)]
pub enum Side {
    Real(f64),
    Exact(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// A quantity expected to be positive is negative but nonzero.
    NonzeroNegative,
}

/// Outcome of one check.
///
/// `pass` holds iff an exact check matched every coefficient, or the error
/// is within `tolerance`; for the relative checks (`reg_*`) the error in
/// question is `rel_err`.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub lhs: Side,
    pub rhs: Side,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub runtime_ms: f64,
    /// Plain statement of what is being checked.
    pub paper_location: String,
    pub status: CheckStatus,
    /// Check whose failure forces this one to fail.
    pub depends_on: Option<&'static str>,
    /// Exponent numerator (in 24ths) of the first differing coefficient.
    pub first_mismatch: Option<i64>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    /// Exact checks compare coefficients through `q^(order24/24)`.
    pub order24: i64,
    /// Replaces every numeric tolerance when set.
    pub tolerance: Option<f64>,
    /// Adds seeded random sample points to the numeric lemmas.
    pub seed: Option<u64>,
    pub extra_points: usize,
    pub jobs: Option<usize>,
    pub series_terms: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            order24: DEFAULT_ORDER24,
            tolerance: None,
            seed: None,
            extra_points: 2,
            jobs: None,
            series_terms: crate::lseries::DEFAULT_TERMS,
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum VerifyError {
    #[error("unknown check: {0}")]
    UnknownCheck(String),
    #[error("order must be a positive multiple of 24, got {0}")]
    InvalidOrder(i64),
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

/// Per-curve constants of the regulator comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct RegulatorConstants {
    pub conductor: u32,
    /// `ΔF̃ = F̃(pairs.0) − F̃(pairs.1)`.
    pub pairs: ((f64, f64), (f64, f64)),
    /// Coefficient of `ΔF̃` in the regulator formula.
    pub prefactor: f64,
    /// Expected `ΔF̃ / L(E, 2)`.
    pub ratio: f64,
    pub final_coefficient: f64,
    pub real_period: RealPeriod,
}

impl RegulatorConstants {
    pub fn for_conductor(n: u32) -> Option<Self> {
        let sp = PI.sqrt();
        let (third, two_thirds) = (1.0 / 3.0, 2.0 / 3.0);
        Some(match n {
            27 => RegulatorConstants {
                conductor: 27,
                pairs: ((third, third), (two_thirds, two_thirds)),
                prefactor: -(3f64.sqrt() / (2.0 * PI)).sqrt() / 6.0,
                ratio: 81.0 * 3f64.sqrt() / (2.0 * PI),
                final_coefficient: -1.5,
                real_period: RealPeriod::Sqrt2PiOverSqrt3,
            },
            32 => RegulatorConstants {
                conductor: 32,
                pairs: ((0.25, 0.5), (0.75, 0.5)),
                prefactor: -(2f64.sqrt()) / (16.0 * sp),
                ratio: 64.0 / PI,
                final_coefficient: -0.5,
                real_period: RealPeriod::Sqrt2Pi,
            },
            64 => RegulatorConstants {
                conductor: 64,
                pairs: ((0.25, 0.25), (0.75, 0.75)),
                prefactor: -1.0 / (16.0 * sp),
                ratio: 128.0 / PI,
                final_coefficient: -0.5,
                real_period: RealPeriod::SqrtPi,
            },
            _ => return None,
        })
    }

    pub fn all() -> Vec<Self> {
        [27, 32, 64].iter().filter_map(|&n| Self::for_conductor(n)).collect()
    }
}

#[derive(Clone, Copy)]
enum Kind {
    Exact,
    Abs(f64),
    Rel(f64),
    Positive,
}

struct CheckDef {
    name: &'static str,
    statement: &'static str,
    kind: Kind,
}

const fn def(name: &'static str, statement: &'static str, kind: Kind) -> CheckDef {
    CheckDef { name, statement, kind }
}

static REGISTRY: [CheckDef; 31] = [
    def("qs_etatotheta", "eta(q^4)^2 eta(q^8)^2 = theta2(q^2)^2 theta4(q^4)^2 / 4", Kind::Exact),
    def("qs_cond64_identity", "eta(q^8)^8 / (eta(q^4)^2 eta(q^16)^2) = theta2(q^2)^2 theta4(q^8)^2 / 4", Kind::Exact),
    def("qs_jacobifor1", "eta(q^2)^5 / (eta(q)^2 eta(q^4)^2) = theta3(q); eta(q)^2 / eta(q^2) = theta4(q)", Kind::Exact),
    def("qs_jacobifor2", "eta(q^8)^3 = theta2(q^4) theta3(q^4) theta4(q^4) / 2", Kind::Exact),
    def("qs_triple_product", "eta(q^8)^3 = sum (-1)^n (2n+1) q^((2n+1)^2)", Kind::Exact),
    def("qs_theta2_duplication", "2 theta2(q^2) theta3(q^2) = theta2(q)^2", Kind::Exact),
    def("qs_lambert", "Lambert series for theta2(q)^2 and theta3(q)^2", Kind::Exact),
    def("qs_theta2sq_diff", "theta2(q^2)^2 = theta3(q)^2 - theta3(q^2)^2", Kind::Exact),
    def("qs_ramanujan_E2", "3 theta3(q)^4 = 4 L(q^4) - L(q)", Kind::Exact),
    def("qs_seriescal2", "sum r chi4(nr) q^(nr) = theta2 theta3 (theta3^2 - theta2^2)(q^4) / 2", Kind::Exact),
    def("qs_theta_iq", "theta3(iq) = theta3(q^4) + i theta2(q^4)", Kind::Exact),
    def("qs_theta34", "theta3(q) theta4(q) = theta4(q^2)^2", Kind::Exact),
    def("num_seriescal1", "double exponential sum = log(theta3(q^8)/theta2(q^8)) / 2, q = exp(-2 pi u)", Kind::Abs(1e-10)),
    def("num_eta_involution", "eta(exp(-2 pi/t)) = sqrt(t) eta(exp(-2 pi t)) and the derived eta quotient", Kind::Abs(1e-10)),
    def("num_ramanujan_param", "theta2, theta3 at q, q^2, q^4 with q = exp(-y(x)) in terms of z(x)", Kind::Abs(1e-9)),
    def("num_measure", "theta3(q)^4 dq/q = dx/(x(1-x))", Kind::Abs(1e-6)),
    def("num_log_expansion_32", "log((1 - sqrt(1-x))/sqrt(x)) as a power series in sqrt(1-x)", Kind::Abs(1e-10)),
    def("num_log_expansion_64", "log((1 + (1-x)^(1/4))/(1 - (1-x)^(1/4))) as a power series in (1-x)^(1/4)", Kind::Abs(1e-10)),
    def("num_beta_table", "beta values B(1/4, n/2), B(3/4, n/2) via Pochhammer symbols", Kind::Abs(1e-11)),
    def("thm_L27", "L(E_27, 2) as a combination of two 3F2(1) values", Kind::Abs(1e-7)),
    def("thm_L32", "L(E_32, 2) as a combination of two 3F2(1) values, both numerical routes", Kind::Abs(1e-7)),
    def("thm_L64", "L(E_64, 2) as a combination of two 3F2(1) values, both numerical routes", Kind::Abs(1e-7)),
    def("hyp_thomae_invariance", "Thomae transformation on the six L-value 3F2 parameter sets", Kind::Abs(2e-10)),
    def("hyp_ftilde_routes", "F~ by definition vs the single-3F2 route, six pairs", Kind::Abs(1e-9)),
    def("hyp_ftilde_positive", "F~ differences entering the regulators are positive", Kind::Positive),
    def("reg_27", "dF~(1/3,1/3; 2/3,2/3) = 81 sqrt(3)/(2 pi) L(E_27, 2)", Kind::Rel(1e-6)),
    def("reg_32", "dF~(1/4,1/2; 3/4,1/2) = 64/pi L(E_32, 2)", Kind::Rel(1e-6)),
    def("reg_64", "dF~(1/4,1/4; 3/4,3/4) = 128/pi L(E_64, 2)", Kind::Rel(1e-6)),
    def("reg_final_27", "regulator = -3/2 L'(E_27, 0) Omega_R", Kind::Rel(1e-6)),
    def("reg_final_32", "regulator = -1/2 L'(E_32, 0) Omega_R", Kind::Rel(1e-6)),
    def("reg_final_64", "regulator = -1/2 L'(E_64, 0) Omega_R", Kind::Rel(1e-6)),
];

/// Check names in registry order.
pub fn check_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|d| d.name).collect()
}

fn validate(cfg: &VerifyConfig) -> Result<(), VerifyError> {
    if cfg.order24 <= 0 || cfg.order24 % DENOM != 0 {
        return Err(VerifyError::InvalidOrder(cfg.order24));
    }
    if let Some(t) = cfg.tolerance {
        if !(t > 0.0) {
            return Err(VerifyError::InvalidTolerance(t));
        }
    }
    Ok(())
}

fn blank(d: &CheckDef, tolerance: f64) -> CheckReport {
    CheckReport {
        name: d.name.to_string(),
        lhs: Side::Exact("exact".into()),
        rhs: Side::Exact("exact".into()),
        abs_err: 0.0,
        rel_err: 0.0,
        tolerance,
        pass: false,
        runtime_ms: 0.0,
        paper_location: d.statement.to_string(),
        status: CheckStatus::Fail,
        depends_on: None,
        first_mismatch: None,
        note: None,
    }
}

fn fail_with(mut r: CheckReport, msg: String) -> CheckReport {
    r.lhs = Side::Exact(format!("error: {}", msg));
    r.rhs = Side::Exact("not evaluated".into());
    r.abs_err = f64::NAN;
    r.rel_err = f64::NAN;
    r.note = Some(msg);
    r
}

fn numeric_fn(name: &str) -> fn(&VerifyConfig) -> Result<Measured, String> {
    match name {
        "num_seriescal1" => numeric::num_seriescal1,
        "num_eta_involution" => numeric::num_eta_involution,
        "num_ramanujan_param" => numeric::num_ramanujan_param,
        "num_measure" => numeric::num_measure,
        "num_log_expansion_32" => numeric::num_log_expansion_32,
        "num_log_expansion_64" => numeric::num_log_expansion_64,
        "num_beta_table" => numeric::num_beta_table,
        "thm_L27" => |c| numeric::thm_l(27, c),
        "thm_L32" => |c| numeric::thm_l(32, c),
        "thm_L64" => |c| numeric::thm_l(64, c),
        "hyp_thomae_invariance" => numeric::hyp_thomae_invariance,
        "hyp_ftilde_routes" => numeric::hyp_ftilde_routes,
        "reg_27" => |c| numeric::reg(27, c),
        "reg_32" => |c| numeric::reg(32, c),
        "reg_64" => |c| numeric::reg(64, c),
        "reg_final_27" => |c| numeric::reg_final(27, c),
        "reg_final_32" => |c| numeric::reg_final(32, c),
        "reg_final_64" => |c| numeric::reg_final(64, c),
        _ => unreachable!("not a numeric check: {}", name),
    }
}

fn effective_tol(kind: Kind, cfg: &VerifyConfig) -> f64 {
    match kind {
        Kind::Exact | Kind::Positive => 0.0,
        Kind::Abs(t) | Kind::Rel(t) => cfg.tolerance.unwrap_or(t),
    }
}

/// `thm_L*` check a `reg_final_*` check depends on.
fn dependency(name: &str) -> Option<&'static str> {
    match name {
        "reg_final_27" => Some("thm_L27"),
        "reg_final_32" => Some("thm_L32"),
        "reg_final_64" => Some("thm_L64"),
        _ => None,
    }
}

fn execute(d: &CheckDef, cfg: &VerifyConfig) -> CheckReport {
    let tol = effective_tol(d.kind, cfg);
    let mut r = blank(d, tol);
    match d.kind {
        Kind::Exact => match exact::run(d.name, cfg.order24) {
            Ok(ExactOutcome::Equal) => {
                r.pass = true;
                r.status = CheckStatus::Pass;
            }
            Ok(ExactOutcome::Mismatch { exponent24, lhs, rhs }) => {
                let at = exact::exponent_label(exponent24);
                r.lhs = Side::Exact(format!("coeff {} = {}", at, lhs));
                r.rhs = Side::Exact(format!("coeff {} = {}", at, rhs));
                r.first_mismatch = Some(exponent24);
                r.note = Some(format!("first mismatch at {}", at));
            }
            Err(e) => r = fail_with(r, e.to_string()),
        },
        Kind::Positive => match numeric::hyp_ftilde_positive(cfg) {
            Ok(min) => {
                r.lhs = Side::Real(min);
                r.rhs = Side::Real(0.0);
                r.abs_err = (-min).max(0.0);
                r.rel_err = r.abs_err;
                r.status = if min > 0.0 {
                    CheckStatus::Pass
                } else if min < 0.0 {
                    CheckStatus::NonzeroNegative
                } else {
                    CheckStatus::Fail
                };
                r.pass = r.status != CheckStatus::Fail;
            }
            Err(e) => r = fail_with(r, e),
        },
        Kind::Abs(_) | Kind::Rel(_) => match numeric_fn(d.name)(cfg) {
            Ok(m) => {
                r.lhs = Side::Real(m.lhs);
                r.rhs = Side::Real(m.rhs);
                r.abs_err = m.abs_err();
                r.rel_err = m.rel_err();
                let err = if matches!(d.kind, Kind::Rel(_)) { r.rel_err } else { r.abs_err };
                r.pass = err <= tol;
                r.status = if r.pass { CheckStatus::Pass } else { CheckStatus::Fail };
            }
            Err(e) => r = fail_with(r, e),
        },
    }
    if let Some(dep) = dependency(d.name) {
        r.depends_on = Some(dep);
        let dep_def = REGISTRY.iter().find(|x| x.name == dep).expect("dependency registered");
        if !execute(dep_def, cfg).pass {
            r.pass = false;
            r.status = CheckStatus::Fail;
            r.note = Some(format!("{} failed", dep));
        }
    }
    r
}

/// Runs one check by name.
pub fn run_check(name: &str, cfg: &VerifyConfig) -> Result<CheckReport, VerifyError> {
    validate(cfg)?;
    let d = REGISTRY.iter().find(|d| d.name == name).ok_or_else(|| VerifyError::UnknownCheck(name.into()))?;
    let start = Instant::now();
    let mut r = execute(d, cfg);
    r.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(r)
}

/// Runs every check whose name starts with `prefix` (all when `None`), in
/// parallel, returning reports in registry order.
pub fn run_all(cfg: &VerifyConfig, prefix: Option<&str>) -> Result<Vec<CheckReport>, VerifyError> {
    validate(cfg)?;
    let names: Vec<&str> = REGISTRY
        .iter()
        .map(|d| d.name)
        .filter(|n| prefix.is_none_or(|p| n.starts_with(p)))
        .collect();
    let job = || names.par_iter().map(|n| run_check(n, cfg)).collect::<Result<Vec<_>, _>>();
    match cfg.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| VerifyError::Pool(e.to_string()))?
            .install(job),
        None => job(),
    }
}

pub fn all_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_consistent() {
        let names = check_names();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
        assert_eq!(names.iter().filter(|n| n.starts_with("qs_")).count(), 12);
        for n in &names {
            if let Some(dep) = dependency(n) {
                assert!(names.contains(&dep));
            }
        }
    }

    #[test]
    fn rejects_bad_config() {
        let cfg = VerifyConfig { order24: 100, ..Default::default() };
        assert_eq!(run_check("qs_theta34", &cfg), Err(VerifyError::InvalidOrder(100)));
        let cfg = VerifyConfig { tolerance: Some(0.0), ..Default::default() };
        assert!(run_all(&cfg, None).is_err());
    }

    #[test]
    fn regulator_ratios_follow_from_prefactors() {
        // prefactor · ratio = final · (N/4π²) · Ω_R
        for rc in RegulatorConstants::all() {
            let lhs = rc.prefactor * rc.ratio;
            let rhs = rc.final_coefficient * rc.conductor as f64 / (4.0 * PI * PI) * rc.real_period.value();
            assert!((lhs / rhs - 1.0).abs() < 1e-14, "N={}", rc.conductor);
        }
    }
}

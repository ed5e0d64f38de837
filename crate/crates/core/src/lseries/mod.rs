//! `L(E_N, 2)` by the approximate functional equation and by a theta-function
//! integral, and `L′(E_N, 0)` from the functional equation.

mod quad;

use std::f64::consts::PI;
use std::time::Instant;

use crate::qseries::{cuspform_coeffs, CurveSpec, SeriesError};
use crate::specfun::{exp_integral_e1, theta, upper_gamma2, SpecFunError};

pub use quad::{gauss_legendre, QuadConfig};

/// Default number of Dirichlet coefficients for the series route.
pub const DEFAULT_TERMS: usize = 500;
/// Truncation tolerance the series route must certify.
pub const SERIES_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LMethod {
    Series,
    ThetaIntegral,
}

impl LMethod {
    pub fn name(self) -> &'static str {
        match self {
            LMethod::Series => "series",
            LMethod::ThetaIntegral => "theta_integral",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LValueResult {
    pub conductor: u32,
    pub method: LMethod,
    pub value: f64,
    pub error_bound: f64,
    pub terms_or_nodes: usize,
    pub runtime_ms: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum LSeriesError {
    #[error("{terms} terms leave a truncation bound of {bound:e}, above {tolerance:e}")]
    TooFewTerms { terms: usize, bound: f64, tolerance: f64 },
    #[error("no theta-integral representation for conductor {0}")]
    NoIntegral(u32),
    #[error("quadrature error estimate {estimate:e} exceeds {tolerance:e}")]
    QuadratureFailed { estimate: f64, tolerance: f64 },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

/// Bound on `Σ_{n>M}` of the series summands, using `|a_n| ≤ d(n)√n ≤ 2n`
/// and `E₁(x) ≤ e^{−x}/x`.
pub fn series_tail_bound(conductor: u32, terms: usize) -> f64 {
    let c = 2.0 * PI / (conductor as f64).sqrt();
    let m1 = (terms + 1) as f64;
    2.0 * (1.0 / m1 + 2.0 * c) * (-c * m1).exp() / (1.0 - (-c).exp())
}

/// `L(E, 2) = Σ a_n [Γ(2, x_n)/n² + ε (2π)²/N · E₁(x_n)]`, `x_n = 2πn/√N`.
pub fn lvalue2_series(curve: &CurveSpec, terms: usize) -> Result<LValueResult, LSeriesError> {
    lvalue2_series_with_tol(curve, terms, SERIES_TOLERANCE)
}

pub fn lvalue2_series_with_tol(
    curve: &CurveSpec,
    terms: usize,
    tolerance: f64,
) -> Result<LValueResult, LSeriesError> {
    let start = Instant::now();
    let tail = series_tail_bound(curve.conductor, terms);
    if !(tail <= tolerance) {
        return Err(LSeriesError::TooFewTerms { terms, bound: tail, tolerance });
    }
    let a = cuspform_coeffs(curve, terms)?;
    let n_f = curve.conductor as f64;
    let c = 2.0 * PI / n_f.sqrt();
    let eps = curve.root_number as f64;
    let dual = 4.0 * PI * PI / n_f;
    let mut sum = 0.0;
    let mut abs = 0.0;
    for (i, &an) in a.iter().enumerate() {
        if an == 0 {
            continue;
        }
        let n = (i + 1) as f64;
        let x = c * n;
        let w = upper_gamma2(x)? / (n * n) + eps * dual * exp_integral_e1(x)?;
        sum += an as f64 * w;
        abs += (an as f64 * w).abs();
    }
    let rounding = 16.0 * f64::EPSILON * abs;
    Ok(LValueResult {
        conductor: curve.conductor,
        method: LMethod::Series,
        value: sum,
        error_bound: tail + rounding,
        terms_or_nodes: terms,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Power `m` with the log factor `log(θ₃(q^m)/θ₂(q^m))` for the given conductor.
fn log_power(conductor: u32) -> Option<f64> {
    match conductor {
        32 => Some(2.0),
        64 => Some(4.0),
        _ => None,
    }
}

/// `θ₂θ₃(θ₃² − θ₂²)(q) · log(θ₃(q^m)/θ₂(q^m))` at `q = e^{−2πu}`.
///
/// Below `u0` the factors are rewritten with `τ ↦ −1/τ` so that every
/// theta series is evaluated at a nome no larger than `e^{−π/(4 u0)}`.
pub fn theta_integrand(conductor: u32, u: f64, u0: f64) -> Result<f64, LSeriesError> {
    let m = log_power(conductor).ok_or(LSeriesError::NoIntegral(conductor))?;
    if u <= 0.0 {
        return Ok(0.0);
    }
    if u >= u0 {
        let q = (-2.0 * PI * u).exp();
        let (t2, t3) = (theta::theta2(q)?, theta::theta3(q)?);
        // log θ₂(q^m) taken analytically; q^m underflows far out
        let qm = q.powf(m);
        let log = theta::theta3(qm)?.ln() - 2f64.ln() + 0.5 * PI * u * m - theta::theta2_reduced(qm)?.ln();
        return Ok(t2 * t3 * (t3 - t2) * (t3 + t2) * log);
    }
    let t = 2.0 * u;
    let p = (-PI / t).exp();
    let (t3, t4) = (theta::theta3(p)?, theta::theta4(p)?);
    let diff = theta::theta3_minus_theta4(p)?;
    let head = t4 * t3 * diff * (t3 + t4) / (t * t);
    let r = (-PI / (m * t)).exp();
    let log = (theta::theta3_minus_theta4(r)? / theta::theta4(r)?).ln_1p();
    Ok(head * log)
}

/// `L(E, 2) = (π/N) ∫₀¹ θ₂θ₃(θ₃²−θ₂²)(q) log(θ₃(q^m)/θ₂(q^m)) dq/q` for `N ∈ {32, 64}`.
pub fn lvalue2_theta_integral(curve: &CurveSpec, cfg: &QuadConfig) -> Result<LValueResult, LSeriesError> {
    let start = Instant::now();
    let n = curve.conductor;
    log_power(n).ok_or(LSeriesError::NoIntegral(n))?;
    let mut err = None;
    let mut f = |u: f64| match theta_integrand(n, u, cfg.u0) {
        Ok(v) => v,
        Err(e) => {
            err.get_or_insert(e);
            f64::NAN
        }
    };
    let coarse = quad::composite(&mut f, cfg, 1);
    let fine = quad::composite(&mut f, cfg, 2);
    // tail beyond u_max: |F(u)| decays like u·e^{−πu/2}
    let tail = f(cfg.u_max).abs() * 4.0 / PI;
    if let Some(e) = err {
        return Err(e);
    }
    let scale = PI / n as f64 * 2.0 * PI;
    let estimate = scale * ((fine.value - coarse.value).abs() + tail + 64.0 * f64::EPSILON * fine.abs);
    if !(estimate <= cfg.tolerance) {
        return Err(LSeriesError::QuadratureFailed { estimate, tolerance: cfg.tolerance });
    }
    Ok(LValueResult {
        conductor: n,
        method: LMethod::ThetaIntegral,
        value: scale * fine.value,
        error_bound: estimate,
        terms_or_nodes: fine.nodes,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// `L′(E, 0) = ε N/(2π)² · L(E, 2)`.
pub fn lprime0(curve: &CurveSpec, l2: f64) -> f64 {
    curve.root_number as f64 * curve.conductor as f64 / (4.0 * PI * PI) * l2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_bound_and_too_few_terms() {
        let c64 = CurveSpec::new(64).unwrap();
        assert!(series_tail_bound(64, 500) < 1e-100);
        assert!(matches!(lvalue2_series(&c64, 10), Err(LSeriesError::TooFewTerms { .. })));
    }

    #[test]
    fn integrand_regimes_meet() {
        for n in [32, 64] {
            for u in [0.2, 0.25, 0.3] {
                let direct = theta_integrand(n, u, 0.0).unwrap();
                let modular = theta_integrand(n, u, 1.0).unwrap();
                assert!((direct - modular).abs() < 1e-13 * direct.abs().max(1.0), "N={} u={}", n, u);
            }
        }
    }

    #[test]
    fn integrand_vanishes_at_both_ends() {
        for n in [32, 64] {
            assert!(theta_integrand(n, 15.0, 0.25).unwrap().abs() < 1e-7);
            assert!(theta_integrand(n, 0.01, 0.25).unwrap().abs() < 1e-7);
        }
        assert!(matches!(theta_integrand(27, 1.0, 0.25), Err(LSeriesError::NoIntegral(27))));
    }

    #[test]
    fn lprime_scaling() {
        let c32 = CurveSpec::new(32).unwrap();
        assert!((lprime0(&c32, 2.0) - 2.0 * lprime0(&c32, 1.0)).abs() < 1e-15);
        assert!((lprime0(&c32, 1.0) - 8.0 / (PI * PI)).abs() < 1e-15);
    }
}

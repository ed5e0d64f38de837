use std::f64::consts::PI;

use super::SpecFunError;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Lanczos sum and shifted argument for `x ≥ 1/2`.
fn lanczos(x: f64) -> (f64, f64) {
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    (a, x + LANCZOS_G + 0.5)
}

fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        // reflection keeps the Lanczos sum in its accurate range
        return PI / ((PI * x).sin() * gamma_unchecked(1.0 - x));
    }
    if x > 171.7 {
        return f64::INFINITY;
    }
    let (a, t) = lanczos(x);
    // split the power to delay overflow near the top of the range
    let p = t.powf((x - 0.5) / 2.0);
    (2.0 * PI).sqrt() * p * (p * (-t).exp()) * a
}

/// Gamma function for `x > 0`.
pub fn gamma(x: f64) -> Result<f64, SpecFunError> {
    if !(x > 0.0) {
        return Err(SpecFunError::NonPositiveArgument { name: "gamma", x });
    }
    Ok(gamma_unchecked(x))
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64, SpecFunError> {
    if !(x > 0.0) {
        return Err(SpecFunError::NonPositiveArgument { name: "ln_gamma", x });
    }
    if x < 0.5 {
        return Ok((PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x)?);
    }
    let (a, t) = lanczos(x);
    Ok(0.5 * (2.0 * PI).ln() + (x - 0.5) * t.ln() - t + a.ln())
}

/// Rising factorial `(a)_n = a (a+1) ⋯ (a+n−1)`.
///
/// Uses an error-free product transformation, so the relative error stays
/// at a few ulps independent of `n` until the result overflows.
pub fn pochhammer(a: f64, n: u64) -> f64 {
    let mut p = 1.0f64;
    let mut err = 0.0f64;
    for k in 0..n {
        let x = a + k as f64;
        if x == 0.0 {
            return 0.0;
        }
        let hi = p * x;
        let lo = p.mul_add(x, -hi);
        err = err.mul_add(x, lo);
        p = hi;
        if !p.is_finite() {
            return p;
        }
    }
    p + err
}

/// Beta function `Γ(α)Γ(β)/Γ(α+β)` for `α, β > 0`.
pub fn beta(alpha: f64, beta: f64) -> Result<f64, SpecFunError> {
    if !(alpha > 0.0) {
        return Err(SpecFunError::NonPositiveArgument { name: "beta", x: alpha });
    }
    if !(beta > 0.0) {
        return Err(SpecFunError::NonPositiveArgument { name: "beta", x: beta });
    }
    if alpha + beta < 150.0 {
        Ok(gamma_unchecked(alpha) * gamma_unchecked(beta) / gamma_unchecked(alpha + beta))
    } else {
        Ok((ln_gamma(alpha)? + ln_gamma(beta)? - ln_gamma(alpha + beta)?).exp())
    }
}

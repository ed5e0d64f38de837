use super::SpecFunError;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Exponential integral `E₁(x) = ∫_x^∞ e^{−t}/t dt` for `x > 0`.
pub fn exp_integral_e1(x: f64) -> Result<f64, SpecFunError> {
    if !(x > 0.0) || x.is_infinite() {
        return Err(SpecFunError::NonPositiveArgument { name: "exp_integral_e1", x });
    }
    if x <= 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..60 {
            term *= -x / k as f64;
            let add = term / k as f64;
            sum += add;
            if add.abs() < 1e-18 {
                break;
            }
        }
        return Ok(-EULER_GAMMA - x.ln() - sum);
    }
    // modified Lentz on the even continued fraction
    let tiny = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..500 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    Ok(h * (-x).exp())
}

/// `Γ(2, x) = (1 + x) e^{−x}` for `x ≥ 0`.
pub fn upper_gamma2(x: f64) -> Result<f64, SpecFunError> {
    if !(x >= 0.0) {
        return Err(SpecFunError::NonPositiveArgument { name: "upper_gamma2", x });
    }
    Ok((1.0 + x) * (-x).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        assert!((exp_integral_e1(1.0).unwrap() - 0.219_383_934_395_520_3).abs() < 1e-15);
        assert!((exp_integral_e1(0.1).unwrap() - 1.822_923_958_419_390_7).abs() < 1e-14);
        let v = exp_integral_e1(2.0).unwrap();
        assert!(((v - 0.048_900_510_708_061_12) / v).abs() < 1e-13);
    }

    #[test]
    fn branches_meet() {
        let below = exp_integral_e1(1.0).unwrap();
        let above = exp_integral_e1(1.0 + 1e-12).unwrap();
        assert!((below - above).abs() < 1e-11);
    }

    #[test]
    fn upper_gamma() {
        assert_eq!(upper_gamma2(0.0).unwrap(), 1.0);
        assert!((upper_gamma2(2.0).unwrap() - 3.0 * (-2f64).exp()).abs() < 1e-16);
        assert!(upper_gamma2(-1.0).is_err());
        assert!(exp_integral_e1(0.0).is_err());
    }
}

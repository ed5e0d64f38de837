use num_rational::BigRational;
use num_traits::Zero;

use crate::qexpr::{eval_expr, parse};
use crate::qseries::{
    chi_series_lemma_lhs, chi_series_lemma_rhs, eta_cubed_series, identity_equal, lambert_theta2sq,
    lambert_theta3sq, theta, twist_by_i, FormalSeries, SeriesError, ThetaKind, DENOM,
};

/// Result of comparing two exact series.
pub(crate) enum ExactOutcome {
    Equal,
    Mismatch { exponent24: i64, lhs: BigRational, rhs: BigRational },
}

fn dsl(text: &str, order24: i64) -> Result<FormalSeries, SeriesError> {
    let ast = parse(text).expect("registry expressions parse");
    Ok(eval_expr(&ast, order24)?)
}

fn compare(a: &FormalSeries, b: &FormalSeries, order24: i64) -> Result<ExactOutcome, SeriesError> {
    let r = identity_equal(a, b, order24)?;
    Ok(match r.first_mismatch {
        None => ExactOutcome::Equal,
        Some(e) => ExactOutcome::Mismatch { exponent24: e, lhs: a.coeff(e), rhs: b.coeff(e) },
    })
}

fn compare_dsl(lhs: &str, rhs: &str, order24: i64) -> Result<ExactOutcome, SeriesError> {
    compare(&dsl(lhs, order24)?, &dsl(rhs, order24)?, order24)
}

/// First failure among several identities, or equality if all hold.
fn all_of(parts: Vec<Result<ExactOutcome, SeriesError>>) -> Result<ExactOutcome, SeriesError> {
    for p in parts {
        let outcome = p?;
        if let ExactOutcome::Mismatch { .. } = outcome {
            return Ok(outcome);
        }
    }
    Ok(ExactOutcome::Equal)
}

pub(crate) fn run(name: &str, order24: i64) -> Result<ExactOutcome, SeriesError> {
    match name {
        "qs_etatotheta" => {
            compare_dsl("eta(q^4)^2 * eta(q^8)^2", "1/4 * theta2(q^2)^2 * theta4(q^4)^2", order24)
        }
        "qs_cond64_identity" => compare_dsl(
            "eta(q^8)^8 / (eta(q^4)^2 * eta(q^16)^2)",
            "1/4 * theta2(q^2)^2 * theta4(q^8)^2",
            order24,
        ),
        "qs_jacobifor1" => all_of(vec![
            compare_dsl("eta(q^2)^5 / (eta(q)^2 * eta(q^4)^2)", "theta3(q)", order24),
            compare_dsl("eta(q)^2 / eta(q^2)", "theta4(q)", order24),
        ]),
        "qs_jacobifor2" => {
            compare_dsl("eta(q^8)^3", "1/2 * theta2(q^4) * theta3(q^4) * theta4(q^4)", order24)
        }
        "qs_triple_product" => {
            dsl("eta(q^8)^3", order24).and_then(|a| compare(&a, &eta_cubed_series(order24), order24))
        }
        "qs_theta2_duplication" => compare_dsl("2 * theta2(q^2) * theta3(q^2)", "theta2(q)^2", order24),
        "qs_lambert" => all_of(vec![
            dsl("theta2(q)^2", order24).and_then(|a| compare(&a, &lambert_theta2sq(order24), order24)),
            dsl("theta3(q)^2", order24).and_then(|a| compare(&a, &lambert_theta3sq(order24), order24)),
        ]),
        "qs_theta2sq_diff" => compare_dsl("theta2(q^2)^2", "theta3(q)^2 - theta3(q^2)^2", order24),
        "qs_ramanujan_E2" => compare_dsl("3 * theta3(q)^4", "4 * L(q^4) - L(q)", order24),
        "qs_seriescal2" => compare(&chi_series_lemma_lhs(order24), &chi_series_lemma_rhs(order24), order24),
        "qs_theta_iq" => {
            let (re, im) = twist_by_i(&theta(ThetaKind::Theta3, 1, order24))
                .expect("theta3 has integral exponents");
            all_of(vec![
                compare(&re, &theta(ThetaKind::Theta3, 4, order24), order24),
                compare(&im, &theta(ThetaKind::Theta2, 4, order24), order24),
            ])
        }
        "qs_theta34" => compare_dsl("theta3(q) * theta4(q)", "theta4(q^2)^2", order24),
        _ => unreachable!("not an exact check: {}", name),
    }
}

/// `q^(e/24)` with the exponent in lowest terms.
pub(crate) fn exponent_label(e24: i64) -> String {
    let r = BigRational::new(e24.into(), DENOM.into());
    if r.is_zero() {
        "q^0".to_string()
    } else {
        format!("q^({})", r)
    }
}

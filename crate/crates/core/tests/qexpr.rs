use ellreg::qexpr::{eval_expr, parse, ExprAst, ParseError};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = ExprAst> {
    prop_oneof![
        (1i64..20).prop_map(ExprAst::Eta),
        (1i64..20).prop_map(ExprAst::Theta2),
        (1i64..20).prop_map(ExprAst::Theta3),
        (1i64..20).prop_map(ExprAst::Theta4),
        (1i64..20).prop_map(ExprAst::EisensteinL),
        (-50i64..50, 1i64..12).prop_map(|(n, d)| ExprAst::ratio(n, d)),
    ]
}

fn tree() -> impl Strategy<Value = ExprAst> {
    leaf().prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.plus(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.minus(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.times(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.over(b)),
            (inner.clone(), -6i64..7).prop_map(|(a, e)| a.pow(e)),
            inner.prop_map(ExprAst::negate),
        ]
    })
}

/// Coefficients of `∏ η(q^k)^r` (r ≥ 0) at exponents `0..len` after the `q^{Σ k r/24}` prefactor,
/// from a plain dense product of `(1 - q^{kn})` factors.
fn dense_eta_product(factors: &[(i64, u32)], len: usize) -> Vec<i128> {
    let mut c = vec![0i128; len];
    c[0] = 1;
    for &(k, r) in factors {
        for _ in 0..r {
            for n in 1.. {
                let step = (k * n) as usize;
                if step >= len {
                    break;
                }
                for i in (step..len).rev() {
                    c[i] -= c[i - step];
                }
            }
        }
    }
    c
}

proptest! {
    #[test]
    fn printed_trees_reparse_identically(ast in tree()) {
        let text = ast.to_string();
        prop_assert_eq!(parse(&text), Ok(ast), "{}", text);
    }

    #[test]
    fn unbalanced_parentheses_are_rejected(ast in tree(), open in any::<bool>()) {
        let text = if open { format!("({}", ast) } else { format!("{})", ast) };
        prop_assert!(matches!(parse(&text), Err(ParseError::Syntax { .. })), "{}", text);
    }

    #[test]
    fn eta_products_match_dense_expansion(
        factors in prop::collection::vec((1i64..6, 1u32..4), 1..4),
    ) {
        let len = 60usize;
        let lead: i64 = factors.iter().map(|&(k, r)| k * r as i64).sum();
        let order = lead + 24 * (len as i64 - 1);
        let text = factors
            .iter()
            .map(|&(k, r)| format!("eta(q^{})^{}", k, r))
            .collect::<Vec<_>>()
            .join(" * ");
        let got = eval_expr(&parse(&text).unwrap(), order).unwrap();
        let want = dense_eta_product(&factors, len);
        for (i, c) in want.iter().enumerate() {
            let e = lead + 24 * i as i64;
            prop_assert_eq!(got.coeff(e), BigRational::from_integer(BigInt::from(*c)), "{} at {}", text, e);
        }
        prop_assert_eq!(got.len(), want.iter().filter(|c| **c != 0).count());
    }

    #[test]
    fn quotient_times_divisor_recovers_dividend(num in leaf(), den in 1i64..8, kind in 0u8..2) {
        let order = 24 * 30;
        let d = if kind == 0 { ExprAst::Eta(den) } else { ExprAst::Theta3(den) };
        let q = eval_expr(&num.clone().over(d.clone()), order).unwrap();
        let back = eval_expr(&num.clone().over(d.clone()).times(d), order).unwrap();
        let direct = eval_expr(&num, order).unwrap();
        prop_assert_eq!(back, direct);
        prop_assert!(q.order() >= order);
    }
}

#[test]
fn dsl_and_builder_agree() {
    let text = "eta(q^8)^8 / (eta(q^4)^2 * eta(q^16)^2) - 1/4 * theta2(q^2)^2 * theta4(q^8)^2";
    let built = ExprAst::Eta(8)
        .pow(8)
        .over(ExprAst::Eta(4).pow(2).times(ExprAst::Eta(16).pow(2)))
        .minus(ExprAst::ratio(1, 4).times(ExprAst::Theta2(2).pow(2)).times(ExprAst::Theta4(8).pow(2)));
    assert_eq!(parse(text).unwrap(), built);
    assert!(eval_expr(&built, 2400).unwrap().is_zero());
}

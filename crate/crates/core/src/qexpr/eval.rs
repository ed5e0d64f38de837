use thiserror::Error;

use super::ExprAst;
use crate::qseries::{self, FormalSeries, SeriesError, ThetaKind};

/// Largest truncation order (in `q^{1/24}` units) the evaluator will work at.
pub const MAX_ORDER24: i64 = 24 * 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("truncation order must be >= 1, got {0}")]
    InvalidOrder(i64),
    #[error("division by a series that vanishes through order {order}/24")]
    DivisionByZeroSeries { order: i64 },
    #[error("working order exceeds the limit of {MAX_ORDER24}/24")]
    OrderOverflow,
}

impl From<SeriesError> for EvalError {
    fn from(e: SeriesError) -> Self {
        match e {
            SeriesError::NotInvertible { order } => EvalError::DivisionByZeroSeries { order },
            _ => EvalError::OrderOverflow,
        }
    }
}

/// Evaluates `ast` exactly, truncated at `order` (in units of `q^{1/24}`).
///
/// Division and negative powers lose precision proportional to the
/// valuation of the divisor, so the tree is evaluated at a raised working
/// order until the result is known through `order`.
pub fn eval_expr(ast: &ExprAst, order: i64) -> Result<FormalSeries, EvalError> {
    if order < 1 {
        return Err(EvalError::InvalidOrder(order));
    }
    if order > MAX_ORDER24 {
        return Err(EvalError::OrderOverflow);
    }
    let mut working = order;
    for _ in 0..8 {
        let s = eval_at(ast, working)?;
        if s.order() >= order {
            return Ok(s.truncate(order));
        }
        working += order - s.order();
        if working > MAX_ORDER24 {
            return Err(EvalError::OrderOverflow);
        }
    }
    Err(EvalError::OrderOverflow)
}

fn eval_at(ast: &ExprAst, order: i64) -> Result<FormalSeries, EvalError> {
    Ok(match ast {
        ExprAst::Eta(k) => qseries::eta(*k, order),
        ExprAst::Theta2(k) => qseries::theta(ThetaKind::Theta2, *k, order),
        ExprAst::Theta3(k) => qseries::theta(ThetaKind::Theta3, *k, order),
        ExprAst::Theta4(k) => qseries::theta(ThetaKind::Theta4, *k, order),
        ExprAst::EisensteinL(k) => qseries::eisenstein_l(*k, order),
        ExprAst::RationalConst(r) => FormalSeries::constant(r.clone(), order),
        ExprAst::Add(l, r) => eval_at(l, order)?.add(&eval_at(r, order)?),
        ExprAst::Sub(l, r) => eval_at(l, order)?.sub(&eval_at(r, order)?),
        ExprAst::Mul(l, r) => eval_at(l, order)?.mul(&eval_at(r, order)?),
        ExprAst::Div(l, r) => eval_at(l, order)?.div(&eval_at(r, order)?)?,
        ExprAst::Pow(x, e) => eval_at(x, order)?.pow(*e)?,
        ExprAst::Neg(x) => eval_at(x, order)?.neg(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexpr::parse;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn big(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn eta_cubed_is_triple_product() {
        let s = eval_expr(&parse("eta(q)^3").unwrap(), 240).unwrap();
        // numerators 3, 27, 75, 147 lie within order 240
        for n in 0..4i64 {
            let e = 3 * (2 * n + 1) * (2 * n + 1);
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(s.coeff(e), big(sign * (2 * n + 1)));
        }
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn theta3_theta4_product() {
        let lhs = eval_expr(&parse("theta3(q) * theta4(q)").unwrap(), 240).unwrap();
        let rhs = eval_expr(&parse("theta4(q^2)^2").unwrap(), 240).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn constant_one() {
        let s = eval_expr(&parse("1").unwrap(), 48).unwrap();
        assert_eq!(s, FormalSeries::one(48));
    }

    #[test]
    fn quotient_reaches_requested_order() {
        let ast = parse("eta(q^8)^8 / (eta(q^4)^2 * eta(q^16)^2)").unwrap();
        let s = eval_expr(&ast, 2400).unwrap();
        assert_eq!(s.order(), 2400);
        assert_eq!(s.valuation(), Some(24));
    }

    #[test]
    fn division_by_vanishing_series() {
        let ast = parse("1 / (theta3(q) - theta3(q))").unwrap();
        assert!(matches!(eval_expr(&ast, 240), Err(EvalError::DivisionByZeroSeries { .. })));
        let ast = parse("1 / eta(q^1000)").unwrap();
        assert!(matches!(eval_expr(&ast, 240), Err(EvalError::DivisionByZeroSeries { .. })));
    }

    #[test]
    fn bad_orders() {
        let ast = parse("eta(q)").unwrap();
        assert_eq!(eval_expr(&ast, 0), Err(EvalError::InvalidOrder(0)));
        assert_eq!(eval_expr(&ast, MAX_ORDER24 + 1), Err(EvalError::OrderOverflow));
    }
}

//! Text DSL for eta/theta/Eisenstein product expressions.
//!
//! The notation follows how the identities are written by hand, e.g.
//! `eta(q^4)^2 * eta(q^8)^2` or `1/4 * theta2(q^2)^2 * theta4(q^4)^2`.
//! Parsed trees evaluate exactly to a [`FormalSeries`](crate::qseries::FormalSeries).

mod ast;
mod eval;
mod parser;

pub use ast::ExprAst;
pub use eval::{eval_expr, EvalError, MAX_ORDER24};
pub use parser::{parse, MAX_EXPONENT, MAX_MULTIPLIER};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("multiplier must be >= 1 (byte {offset})")]
    ZeroMultiplier { offset: usize },
    #[error("exponent must be an integer (byte {offset}); parenthesize the base to divide a power")]
    NonIntegerExponent { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::ZeroMultiplier { offset }
            | ParseError::NonIntegerExponent { offset } => *offset,
        }
    }
}

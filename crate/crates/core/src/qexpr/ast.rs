use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

/// Parsed eta/theta/Eisenstein product expression.
///
/// Leaf functions carry the multiplier `k ≥ 1` of their argument `q^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAst {
    Eta(i64),
    Theta2(i64),
    Theta3(i64),
    Theta4(i64),
    EisensteinL(i64),
    RationalConst(BigRational),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, i64),
    Neg(Box<ExprAst>),
}

impl ExprAst {
    pub fn int(n: i64) -> Self {
        ExprAst::RationalConst(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        ExprAst::RationalConst(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn pow(self, e: i64) -> Self {
        ExprAst::Pow(Box::new(self), e)
    }

    pub fn times(self, rhs: ExprAst) -> Self {
        ExprAst::Mul(Box::new(self), Box::new(rhs))
    }

    pub fn over(self, rhs: ExprAst) -> Self {
        ExprAst::Div(Box::new(self), Box::new(rhs))
    }

    pub fn plus(self, rhs: ExprAst) -> Self {
        ExprAst::Add(Box::new(self), Box::new(rhs))
    }

    pub fn minus(self, rhs: ExprAst) -> Self {
        ExprAst::Sub(Box::new(self), Box::new(rhs))
    }

    pub fn negate(self) -> Self {
        ExprAst::Neg(Box::new(self))
    }

    /// Binding strength used by the printer; higher binds tighter.
    fn precedence(&self) -> u8 {
        match self {
            ExprAst::Add(..) | ExprAst::Sub(..) => 1,
            ExprAst::Mul(..) | ExprAst::Div(..) => 2,
            ExprAst::Neg(_) => 3,
            ExprAst::RationalConst(r) if r.is_negative() => 3,
            ExprAst::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write_operand(&self, f: &mut String, min_prec: u8) {
        if self.precedence() < min_prec {
            f.push('(');
            f.push_str(&self.to_string());
            f.push(')');
        } else {
            f.push_str(&self.to_string());
        }
    }
}

fn leaf(f: &mut fmt::Formatter<'_>, name: &str, k: i64) -> fmt::Result {
    if k == 1 {
        write!(f, "{}(q)", name)
    } else {
        write!(f, "{}(q^{})", name, k)
    }
}

/// Canonical text form; reparses to an identical tree.
impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        match self {
            ExprAst::Eta(k) => return leaf(f, "eta", *k),
            ExprAst::Theta2(k) => return leaf(f, "theta2", *k),
            ExprAst::Theta3(k) => return leaf(f, "theta3", *k),
            ExprAst::Theta4(k) => return leaf(f, "theta4", *k),
            ExprAst::EisensteinL(k) => return leaf(f, "L", *k),
            ExprAst::RationalConst(r) => {
                if r.denom().is_one() {
                    return write!(f, "{}", r.numer());
                }
                return write!(f, "{}/{}", r.numer(), r.denom());
            }
            ExprAst::Add(l, r) | ExprAst::Sub(l, r) => {
                let op = if matches!(self, ExprAst::Add(..)) { " + " } else { " - " };
                l.write_operand(&mut out, 1);
                out.push_str(op);
                r.write_operand(&mut out, 2);
            }
            ExprAst::Mul(l, r) | ExprAst::Div(l, r) => {
                let mut left = String::new();
                l.write_operand(&mut left, 2);
                // "2 / 3" would lex as a rational literal
                let is_div = matches!(self, ExprAst::Div(..));
                if is_div && left.ends_with(|c: char| c.is_ascii_digit()) {
                    out.push('(');
                    out.push_str(&left);
                    out.push(')');
                } else {
                    out.push_str(&left);
                }
                out.push_str(if is_div { " / " } else { " * " });
                r.write_operand(&mut out, 3);
            }
            ExprAst::Neg(x) => {
                out.push('-');
                // a bare "-3" would reparse as a negative literal
                let min = if matches!(**x, ExprAst::RationalConst(_)) { 6 } else { 3 };
                x.write_operand(&mut out, min);
            }
            ExprAst::Pow(x, e) => {
                let min = match &**x {
                    ExprAst::RationalConst(r) if !r.denom().is_one() => 6,
                    _ => 5,
                };
                x.write_operand(&mut out, min);
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
        f.write_str(&out)
    }
}

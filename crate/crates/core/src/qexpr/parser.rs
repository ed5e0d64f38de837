//! Recursive-descent parser for the expression DSL.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | factor
//! factor := atom ['^' int]
//! atom   := ident '(' 'q' ['^' uint] ')' | rational | '(' expr ')'
//! ident  := eta | theta2 | theta3 | theta4 | L
//! ```
//!
//! `num / den` between two bare integers is lexed as one rational literal,
//! and a minus sign directly in front of a literal (with no `^` after it) is
//! folded into the literal.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{ExprAst, ParseError};

/// Largest accepted multiplier `k` in `f(q^k)`.
pub const MAX_MULTIPLIER: i64 = 1_000_000;
/// Largest accepted absolute exponent.
pub const MAX_EXPONENT: i64 = 10_000;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Ratio(BigInt, BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Dot,
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> BigInt {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().expect("nonempty digit run")
    }

    fn tokenize(mut self) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let at = self.pos;
            let Some(&b) = self.src.get(self.pos) else {
                out.push((Tok::End, at));
                return Ok(out);
            };
            let tok = match b {
                b'+' => Tok::Plus,
                b'-' => Tok::Minus,
                b'*' => Tok::Star,
                b'/' => Tok::Slash,
                b'^' => Tok::Caret,
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'.' => Tok::Dot,
                b'0'..=b'9' => {
                    let num = self.digits();
                    let save = self.pos;
                    self.skip_ws();
                    if self.src.get(self.pos) == Some(&b'/') {
                        self.pos += 1;
                        self.skip_ws();
                        if self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                            let den_at = self.pos;
                            let den = self.digits();
                            if den.is_zero() {
                                return Err(ParseError::Syntax {
                                    offset: den_at,
                                    message: "zero denominator".into(),
                                });
                            }
                            out.push((Tok::Ratio(num, den), at));
                            continue;
                        }
                    }
                    self.pos = save;
                    out.push((Tok::Int(num), at));
                    continue;
                }
                c if c.is_ascii_alphabetic() => {
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                        self.pos += 1;
                    }
                    let word = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                    out.push((Tok::Ident(word), at));
                    continue;
                }
                _ => {
                    let ch = String::from_utf8_lossy(&self.src[at..]).chars().next().unwrap_or('?');
                    return Err(ParseError::Syntax {
                        offset: at,
                        message: format!("unexpected character {:?}", ch),
                    });
                }
            };
            self.pos += 1;
            out.push((tok, at));
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        let i = (self.pos + ahead).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { offset: self.offset(), message: message.into() })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.syntax(format!("expected {}", what))
        }
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = lhs.plus(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    lhs = lhs.minus(self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = lhs.times(self.unary()?);
                }
                Tok::Slash => {
                    self.bump();
                    lhs = lhs.over(self.unary()?);
                }
                Tok::LParen | Tok::Ident(_) | Tok::Int(_) | Tok::Ratio(..) => {
                    return self.syntax("implicit multiplication is not allowed; use '*'");
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<ExprAst, ParseError> {
        if *self.peek() != Tok::Minus {
            return self.factor();
        }
        let literal = matches!(self.peek_at(1), Tok::Int(_) | Tok::Ratio(..))
            && !matches!(self.peek_at(2), Tok::Caret | Tok::Dot);
        self.bump();
        if literal {
            match self.atom()? {
                ExprAst::RationalConst(r) => Ok(ExprAst::RationalConst(-r)),
                _ => unreachable!("literal lookahead"),
            }
        } else {
            Ok(self.unary()?.negate())
        }
    }

    fn factor(&mut self) -> Result<ExprAst, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let e = self.exponent()?;
        Ok(base.pow(e))
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let at = self.offset();
        let paren = *self.peek() == Tok::LParen;
        if paren {
            self.bump();
        }
        let negative = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let value = match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                n
            }
            Tok::Ratio(..) => return Err(ParseError::NonIntegerExponent { offset: at }),
            _ => return self.syntax("expected integer exponent"),
        };
        if *self.peek() == Tok::Dot {
            return Err(ParseError::NonIntegerExponent { offset: at });
        }
        if paren {
            match self.peek() {
                Tok::RParen => {
                    self.bump();
                }
                Tok::Slash => return Err(ParseError::NonIntegerExponent { offset: at }),
                _ => return self.syntax("expected ')'"),
            }
        }
        let value = value
            .to_i64()
            .filter(|v| *v <= MAX_EXPONENT)
            .ok_or(ParseError::Syntax { offset: at, message: "exponent too large".into() })?;
        Ok(if negative { -value } else { value })
    }

    fn atom(&mut self) -> Result<ExprAst, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Int(n) => {
                if *self.peek() == Tok::Dot {
                    return self.syntax("decimal numbers are not allowed");
                }
                Ok(ExprAst::RationalConst(BigRational::from_integer(n)))
            }
            Tok::Ratio(n, d) => {
                if *self.peek() == Tok::Dot {
                    return self.syntax("decimal numbers are not allowed");
                }
                Ok(ExprAst::RationalConst(BigRational::new(n, d)))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                let ctor: fn(i64) -> ExprAst = match name.as_str() {
                    "eta" => ExprAst::Eta,
                    "theta2" => ExprAst::Theta2,
                    "theta3" => ExprAst::Theta3,
                    "theta4" => ExprAst::Theta4,
                    "L" => ExprAst::EisensteinL,
                    _ => {
                        return Err(ParseError::Syntax {
                            offset: at,
                            message: format!("unknown function '{}'", name),
                        })
                    }
                };
                self.expect(Tok::LParen, "'('")?;
                match self.peek() {
                    Tok::Ident(v) if v == "q" => {
                        self.bump();
                    }
                    _ => return self.syntax("expected 'q'"),
                }
                let k = if *self.peek() == Tok::Caret {
                    self.bump();
                    let k_at = self.offset();
                    match self.peek().clone() {
                        Tok::Int(k) => {
                            self.bump();
                            if k.is_zero() {
                                return Err(ParseError::ZeroMultiplier { offset: k_at });
                            }
                            k.to_i64().filter(|k| *k <= MAX_MULTIPLIER).ok_or(ParseError::Syntax {
                                offset: k_at,
                                message: "multiplier too large".into(),
                            })?
                        }
                        _ => return self.syntax("expected positive integer multiplier"),
                    }
                } else {
                    1
                };
                self.expect(Tok::RParen, "')'")?;
                Ok(ctor(k))
            }
            Tok::End => {
                self.pos = self.toks.len() - 1;
                self.syntax("unexpected end of input")
            }
            _ => {
                self.pos -= 1;
                self.syntax("expected a function, number or '('")
            }
        }
    }
}

/// Parses DSL text into an [`ExprAst`].
pub fn parse(text: &str) -> Result<ExprAst, ParseError> {
    let toks = Lexer { src: text.as_bytes(), pos: 0 }.tokenize()?;
    let mut p = Parser { toks, pos: 0 };
    let ast = p.expr()?;
    match p.peek() {
        Tok::End => Ok(ast),
        Tok::RParen => p.syntax("unbalanced ')'"),
        _ => p.syntax("unexpected trailing input"),
    }
}

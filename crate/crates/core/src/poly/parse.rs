use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::context::Ctx;
use super::polynomial::Polynomial;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Unexpected(String),
    UnknownVariable(String),
    BadExponent,
    NonConstantDivisor,
    DivisionByZero,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Unexpected(s) => write!(f, "unexpected {s}"),
            ParseErrorKind::UnknownVariable(v) => write!(f, "unknown variable {v:?}"),
            ParseErrorKind::BadExponent => write!(f, "exponent must be a non-negative integer"),
            ParseErrorKind::NonConstantDivisor => write!(f, "division by a non-constant"),
            ParseErrorKind::DivisionByZero => write!(f, "division by zero"),
        }
    }
}

/// Parses an infix polynomial over the variables of `ctx`.
///
/// Accepts integer and decimal literals, `+ - * / ^`, unary minus and
/// parentheses. Division is only allowed by nonzero constants so that
/// printed rationals such as `3/4*x` round-trip. Juxtaposition is rejected.
pub fn parse<C: Scalar>(text: &str, ctx: &Ctx) -> Result<Polynomial<C>, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ctx };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.unexpected());
    }
    Ok(poly)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a Ctx,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn unexpected(&self) -> ParseError {
        let what = match self.src.get(self.pos) {
            Some(&c) => format!("character {:?}", c as char),
            None => "end of input".to_string(),
        };
        ParseError { offset: self.pos, kind: ParseErrorKind::Unexpected(what) }
    }

    fn expr<C: Scalar>(&mut self) -> Result<Polynomial<C>, ParseError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term<C: Scalar>(&mut self) -> Result<Polynomial<C>, ParseError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d: Polynomial<C> = self.unary()?;
                    if !d.is_constant() {
                        return Err(ParseError { offset: at, kind: ParseErrorKind::NonConstantDivisor });
                    }
                    if d.is_zero() {
                        return Err(ParseError { offset: at, kind: ParseErrorKind::DivisionByZero });
                    }
                    let inv = C::one() / d.terms()[0].1.clone();
                    acc = acc.scale(&inv);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary<C: Scalar>(&mut self) -> Result<Polynomial<C>, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power<C: Scalar>(&mut self) -> Result<Polynomial<C>, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
            let followed_by_fraction = self.src.get(self.pos) == Some(&b'.');
            let e: u32 = match digits.parse() {
                Ok(e) if !followed_by_fraction => e,
                _ => return Err(ParseError { offset: start, kind: ParseErrorKind::BadExponent }),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom<C: Scalar>(&mut self) -> Result<Polynomial<C>, ParseError> {
        let c = match self.peek() {
            Some(c) => c,
            None => return Err(self.unexpected()),
        };
        let result = if c == b'(' {
            self.pos += 1;
            let inner = self.expr()?;
            if self.peek() != Some(b')') {
                return Err(self.unexpected());
            }
            self.pos += 1;
            inner
        } else if c.is_ascii_digit() || c == b'.' {
            let q = self.number()?;
            Polynomial::constant(self.ctx, C::from_rational(&q))
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = self.pos;
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
            match self.ctx.index_of(name) {
                Some(i) => Polynomial::variable(self.ctx, i),
                None => {
                    return Err(ParseError {
                        offset: start,
                        kind: ParseErrorKind::UnknownVariable(name.to_string()),
                    })
                }
            }
        } else {
            return Err(self.unexpected());
        };
        // Juxtaposition such as `2x` or `x y` is an error.
        if let Some(&next) = self.src.get(self.pos) {
            if next.is_ascii_alphanumeric() || next == b'_' || next == b'(' {
                return Err(self.unexpected());
            }
        }
        Ok(result)
    }

    fn number(&mut self) -> Result<BigRational, ParseError> {
        let start = self.pos;
        let mut int_part = BigInt::zero();
        let mut saw_digit = false;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            int_part = int_part * 10 + BigInt::from(self.src[self.pos] - b'0');
            self.pos += 1;
            saw_digit = true;
        }
        let mut value = BigRational::from_integer(int_part);
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            let mut scale = BigInt::one();
            let mut frac = BigInt::zero();
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                frac = frac * 10 + BigInt::from(self.src[self.pos] - b'0');
                scale *= 10;
                self.pos += 1;
                saw_digit = true;
            }
            value += BigRational::new(frac, scale);
        }
        if !saw_digit {
            self.pos = start;
            return Err(self.unexpected());
        }
        Ok(value)
    }
}

//! Recursive-descent parser for summand expressions in `n`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' uint)?
//! base   := number | 'n' | '(' expr ')' | '-' factor
//! ```
//!
//! Numbers are integers or decimals; decimals are read exactly.

use std::fmt;

use exactsum_core::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: {message}{}", hint.as_ref().map(|h| format!(" ({h})")).unwrap_or_default())]
pub struct SyntaxError {
    pub offset: usize,
    pub message: String,
    pub hint: Option<String>,
}

impl fmt::Display for Expr {
    /// Fully parenthesized; parses back to the same value, with fractions
    /// coming back as divisions.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(r) if r.is_integer() => write!(f, "{r}"),
            Expr::Num(r) => write!(f, "({}/{})", r.numer(), r.denom()),
            Expr::Var => f.write_str("n"),
            Expr::Neg(e) => write!(f, "-({e})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, k) => write!(f, "({a})^{k}"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn error(&self, message: impl Into<String>, hint: Option<&str>) -> SyntaxError {
        SyntaxError {
            offset: self.pos,
            message: message.into(),
            hint: hint.map(str::to_string),
        }
    }

    fn unexpected(&mut self, expected: &str) -> SyntaxError {
        match self.peek() {
            Some(c) => self.error(format!("unexpected '{c}'"), Some(expected)),
            None => self.error("unexpected end of input", Some(expected)),
        }
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if op == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(op @ ('*' | '/')) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    lhs = if op == '*' {
                        Expr::Mul(Box::new(lhs), Box::new(rhs))
                    } else {
                        Expr::Div(Box::new(lhs), Box::new(rhs))
                    };
                }
                Some(c) if c == '(' || c == 'n' || c.is_ascii_digit() || c == '.' => {
                    return Err(self.error(
                        "implicit multiplication is not supported",
                        Some("insert '*' between the factors"),
                    ));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, SyntaxError> {
        let base = self.base()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let digits = self.take_digits();
        if digits.is_empty() {
            return Err(self.unexpected("expected a non-negative integer exponent"));
        }
        match digits.parse::<u32>() {
            Ok(k) if k <= MAX_EXPONENT => Ok(Expr::Pow(Box::new(base), k)),
            _ => Err(SyntaxError {
                offset: start,
                message: format!("exponent {digits} is too large"),
                hint: Some(format!("exponents are limited to {MAX_EXPONENT}")),
            }),
        }
    }

    fn base(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek() {
            Some('n') => {
                self.pos += 1;
                Ok(Expr::Var)
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.unexpected("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            _ => Err(self.unexpected("expected a number, 'n', '(' or '-'")),
        }
    }

    fn take_digits(&mut self) -> &'a str {
        let start = self.pos;
        let len = self.src[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        self.pos += len;
        &self.src[start..self.pos]
    }

    fn number(&mut self) -> Result<Expr, SyntaxError> {
        let start = self.pos;
        let int_part = self.take_digits();
        let mut value: BigInt = if int_part.is_empty() {
            BigInt::zero()
        } else {
            int_part.parse().expect("ascii digits")
        };
        let mut scale = BigInt::one();
        if self.src[self.pos..].starts_with('.') {
            self.pos += 1;
            let frac = self.take_digits();
            if int_part.is_empty() && frac.is_empty() {
                self.pos = start;
                return Err(self.error("a lone '.' is not a number", Some("write 0.5 or 1/2")));
            }
            for d in frac.bytes() {
                value = value * 10 + (d - b'0');
                scale *= 10;
            }
        }
        Ok(Expr::Num(Rational::new(value, scale)))
    }
}

pub fn parse_expression(text: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some(')') => Err(p.error("unmatched ')'", None)),
        Some(_) => Err(p.unexpected("expected an operator or end of input")),
    }
}

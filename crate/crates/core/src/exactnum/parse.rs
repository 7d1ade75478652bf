//! Parsing of polynomial expressions and Gaussian rational literals.
//!
//! Grammar:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := power ('*' power)*
//! power  := atom ('^' integer)?
//! atom   := integer ['/' integer] | ident | 'i' | '(' expr ')' | '-' atom
//! ```
//!
//! The bare identifier `i` is the imaginary unit; other identifiers become
//! variables, declared in order of first appearance.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{GaussianRational, Poly};
use crate::error::{Error, Result};

type P = Poly<GaussianRational>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: Vec<String>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn expr(&mut self) -> Result<P> {
        let mut acc = if self.eat(b'-') {
            -self.term()?
        } else {
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<P> {
        let mut acc = self.power()?;
        while self.eat(b'*') {
            acc = acc * self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<P> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.integer()?;
            let e: u32 = match e.try_into() {
                Ok(e) => e,
                Err(_) => return self.err("exponent too large"),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<P> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.atom()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let q = if self.eat(b'/') {
                    let d = self.integer()?;
                    if d.is_zero() {
                        return self.err("zero denominator");
                    }
                    BigRational::new(n, d)
                } else {
                    BigRational::from_integer(n)
                };
                Ok(P::constant(GaussianRational::real(q)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if name == "i" {
                    return Ok(P::constant(GaussianRational::i()));
                }
                if !self.vars.iter().any(|v| v == name) {
                    self.vars.push(name.to_string());
                }
                let vars = Arc::new(self.vars.clone());
                P::var(&vars, name)
            }
            Some(c) => self.err(format!("unexpected character `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a polynomial expression such as `r1*(1 - r1 - r2*r3)`.
pub fn parse_poly(text: &str) -> Result<Poly<GaussianRational>> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars: Vec::new(),
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out.with_vars(&Arc::new(p.vars)))
}

/// Parses a Gaussian rational literal: `a/b`, `c/d*i`, `a/b+c/d*i`, `-i`.
pub fn parse_gaussian(text: &str) -> Result<GaussianRational> {
    let p = parse_poly(text)?;
    if !p.used_vars().is_empty() {
        return Err(Error::Syntax {
            pos: 0,
            msg: format!("`{}` is not a number", text.trim()),
        });
    }
    Ok(p.as_constant().unwrap_or_else(GaussianRational::zero))
}

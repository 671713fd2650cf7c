//! Text grammar for polynomials.
//!
//! The printer emits sums of terms `c*x1^a*x2^b`; the parser accepts that
//! form plus parentheses, products, integer powers and division by nonzero
//! constants, so model files can state coordinates compactly, e.g.
//! `(1 - t1^2)^2`.

use super::{MultiPoly, Vars};
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Rational, Scalar};

/// Parses over `vars` with exact rational coefficients; decimal literals
/// are rejected.
pub fn parse_poly(text: &str, vars: &Vars) -> Result<MultiPoly<Rational>> {
    Parser::new(text, vars, false).parse()
}

/// Exact parse that also accepts decimal literals, read at their exact
/// decimal value.
pub fn parse_poly_decimal(text: &str, vars: &Vars) -> Result<MultiPoly<Rational>> {
    Parser::new(text, vars, true).parse()
}

/// Float-mode variant: decimal literals are accepted and the result is
/// rounded to doubles.
pub fn parse_poly_float(text: &str, vars: &Vars) -> Result<MultiPoly<f64>> {
    Ok(Parser::new(text, vars, true).parse()?.to_float())
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    vars: &'a Vars,
    allow_decimal: bool,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, vars: &'a Vars, allow_decimal: bool) -> Self {
        Parser {
            src,
            pos: 0,
            vars,
            allow_decimal,
        }
    }

    fn parse(mut self) -> Result<MultiPoly<Rational>> {
        let p = self.expr()?;
        self.skip_ws();
        if self.pos < self.src.len() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(p)
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.src[..self.pos].chars().count() + 1, msg)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly<Rational>> {
        self.skip_ws();
        let mut acc = if self.eat('-') {
            -&self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly<Rational>> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.power()?;
                if !d.is_constant() || d.is_zero() {
                    self.pos = at;
                    return Err(self.error("can only divide by a nonzero constant"));
                }
                acc = acc.scale(&(Rational::from_integer(1.into()) / d.constant_term()));
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly<Rational>> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let e: u32 = self.src[start..self.pos]
                .parse()
                .map_err(|_| self.error("expected a non-negative integer exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly<Rational>> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some('-') => {
                self.pos += 1;
                Ok(-&self.power()?)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                while let Some(c) = self.peek() {
                    let exp_sign = (c == '-' || c == '+')
                        && self.src[..self.pos].ends_with(['e', 'E']);
                    if c.is_ascii_digit() || c == '.' || c == 'e' || c == 'E' || exp_sign {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let lit = &self.src[start..self.pos];
                let value = parse_rational(lit, self.allow_decimal).map_err(|e| {
                    let msg = e.to_string();
                    self.pos = start;
                    self.error(msg)
                })?;
                Ok(MultiPoly::constant(self.vars.clone(), value))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_alphanumeric() || c == '_')
                {
                    self.pos += self.peek().map_or(1, char::len_utf8);
                }
                let name = &self.src[start..self.pos];
                match self.vars.index_of(name) {
                    Some(i) => Ok(MultiPoly::var(self.vars.clone(), i)),
                    None => {
                        self.pos = start;
                        Err(self.error(format!(
                            "unknown variable `{name}` (expected one of {:?})",
                            self.vars.names()
                        )))
                    }
                }
            }
            Some(c) => Err(self.error(format!("unexpected character `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

impl<S: Scalar> MultiPoly<S> {
    /// Parses and converts to the requested scalar type.
    pub fn parse_as(text: &str, vars: &Vars) -> Result<MultiPoly<S>> {
        let exact = Parser::new(text, vars, S::MODE == crate::Mode::Float).parse()?;
        Ok(exact.map_coeffs(S::from_rational))
    }
}

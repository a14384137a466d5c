//! Polynomial expressions such as `1+s*u+(s*u)^2` or `3/2*x^-1*y - 1`.
//!
//! Grammar:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' ['-'] integer)?
//! atom   := rational | ident | '(' expr ')'
//! ```
//!
//! Negative powers are only accepted on monomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::coeff::Field;
use super::laurent::{LaurentPoly, Vars};
use super::AlgebraError;

pub fn parse_laurent(text: &str, vars: &Vars) -> Result<LaurentPoly<BigRational>, AlgebraError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> AlgebraError {
        AlgebraError::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
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

    fn expr(&mut self) -> Result<LaurentPoly<BigRational>, AlgebraError> {
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == b'+' { acc + t } else { acc - t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPoly<BigRational>, AlgebraError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc * f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPoly<BigRational>, AlgebraError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            _ => false,
        };
        let e = self.integer()?;
        let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
        if !neg {
            return Ok(base.pow(e));
        }
        let (exps, c) = base
            .as_monomial()
            .ok_or_else(|| self.error("negative power of a non-monomial"))?;
        let inv = c.inv().ok_or_else(|| self.error("negative power of zero"))?;
        let exps: Vec<i64> = exps.iter().map(|&k| -k).collect();
        let unit = LaurentPoly::monomial(self.vars, &(), exps, inv);
        Ok(unit.pow(e))
    }

    fn integer(&mut self) -> Result<BigInt, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn atom(&mut self) -> Result<LaurentPoly<BigRational>, AlgebraError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut den = BigInt::one();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    den = self.integer()?;
                    if den == BigInt::from(0) {
                        return Err(self.error("zero denominator"));
                    }
                }
                Ok(LaurentPoly::constant(self.vars, BigRational::new(num, den)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let idx = self
                    .vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
                Ok(LaurentPoly::var(self.vars, &(), idx))
            }
            _ => Err(self.error("expected number, variable or `(`")),
        }
    }
}

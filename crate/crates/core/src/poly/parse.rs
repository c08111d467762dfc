//! Text form of polynomials.
//!
//! ```text
//! poly   := sign? term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := atom ("^" integer)?
//! atom   := integer | variable | "(" poly ")"
//! ```
//!
//! Integers are unsigned decimal literals reduced modulo `p`; variables are
//! ASCII identifiers declared by the ring. Whitespace is ignored between
//! tokens. The printer emits the canonical subset `2*x^2*y - z*w + 5`
//! (no parentheses, terms in descending monomial order).

use std::sync::Arc;

use crate::error::{Error, Result};

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::ring::Ring;

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    src: &'a [u8],
    pos: usize,
}

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer_digits(&mut self) -> &'a [u8] {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let field = self.ring.field();
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        debug_assert!(acc.terms().iter().all(|(_, c)| *c < field.modulus()));
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let at = self.pos;
            let digits = self.integer_digits();
            if digits.is_empty() {
                return Err(err(at, "expected exponent after '^'"));
            }
            let e: u32 = std::str::from_utf8(digits)
                .unwrap()
                .parse()
                .map_err(|_| err(at, "exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let field = self.ring.field();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let mut v: u128 = 0;
                for &d in self.integer_digits() {
                    v = (v * 10 + (d - b'0') as u128) % field.modulus() as u128;
                }
                Ok(Polynomial::constant(self.ring, v as u64))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let i = self
                    .ring
                    .index_of(name)
                    .ok_or_else(|| err(start, format!("unknown variable {name:?}")))?;
                Ok(Polynomial::monomial(
                    self.ring,
                    Monomial::var(self.ring.nvars(), i),
                    1,
                ))
            }
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.poly()?;
                if !self.eat(b')') {
                    return Err(err(open, "unbalanced parenthesis"));
                }
                Ok(inner)
            }
            Some(c) => Err(err(self.pos, format!("unexpected character {:?}", c as char))),
            None => Err(err(self.pos, "unexpected end of input")),
        }
    }
}

pub fn parse_polynomial(ring: &Arc<Ring>, text: &str) -> Result<Polynomial> {
    let mut p = Parser {
        ring,
        src: text.as_bytes(),
        pos: 0,
    };
    if p.peek().is_none() {
        return Err(err(0, "empty polynomial"));
    }
    let out = p.poly()?;
    if let Some(c) = p.peek() {
        return Err(err(p.pos, format!("trailing input starting at {:?}", c as char)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn ring() -> Arc<Ring> {
        Ring::standard(PrimeField::new(32003).unwrap(), &["x", "y", "z", "w"]).unwrap()
    }

    #[test]
    fn canonical_example() {
        let r = ring();
        let f = r.parse("2*x^2*y - z*w + 5").unwrap();
        assert_eq!(f.to_string(), "2*x^2*y - z*w + 5");
        assert_eq!(r.parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn parentheses_and_signs() {
        let r = ring();
        let f = r.parse("-(x + y)^2 + 2*x*y").unwrap();
        assert_eq!(f, r.parse("-x^2 - y^2").unwrap());
        assert_eq!(r.parse("32003*x").unwrap().to_string(), "0");
        assert_eq!(r.parse("32002").unwrap().to_string(), "-1");
    }

    #[test]
    fn errors_carry_offsets() {
        let r = ring();
        assert!(matches!(r.parse("x + q"), Err(Error::Parse { offset: 4, .. })));
        assert!(matches!(r.parse("x +"), Err(Error::Parse { .. })));
        assert!(matches!(r.parse("(x"), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(r.parse("x y"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(r.parse(""), Err(Error::Parse { .. })));
        assert!(matches!(r.parse("x^"), Err(Error::Parse { .. })));
    }
}

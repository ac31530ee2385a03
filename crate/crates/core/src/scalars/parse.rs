//! Parser for scalar text such as `(q^4 - 2*q^2 + 1)/(q^2)` or `-(q^2-q^-2)^2`.
//!
//! Grammar: sums and differences of products and quotients of signed
//! powers of atoms; atoms are integers, `q`, `r`, `rho`, or parenthesized
//! expressions. Exponents are integers and may be negative.

use super::fraction::ScalarFraction;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, String::from_utf8_lossy(self.src)))
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

    fn expr(&mut self) -> Result<ScalarFraction> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ScalarFraction> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let d = self.unary()?;
                acc = acc.checked_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ScalarFraction> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<ScalarFraction> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let neg = self.eat(b'-');
            let paren = !neg && self.eat(b'(');
            let neg = neg || (paren && self.eat(b'-'));
            let e = self.integer()?;
            if paren && !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            let e: i32 = e.parse().map_err(|_| self.err("exponent out of range"))?;
            let e = if neg { -e } else { e };
            return base.pow(e);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn atom(&mut self) -> Result<ScalarFraction> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.integer()?;
                let n: num_bigint::BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                Ok(ScalarFraction::from_bigint(n))
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(ScalarFraction::q())
            }
            Some(b'r') => {
                self.pos += 1;
                if self.src[self.pos..].starts_with(b"ho") {
                    self.pos += 2;
                }
                Ok(ScalarFraction::r())
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

/// Parses scalar text into a reduced fraction.
pub fn parse_scalar(text: &str) -> Result<ScalarFraction> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

impl std::str::FromStr for ScalarFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spaced_and_unspaced_agree() {
        let a = parse_scalar("(q^4 - 2*q^2 + 1)/(q^2)").unwrap();
        let b = parse_scalar("(q^4-2*q^2+1)/(q^2)").unwrap();
        let c = parse_scalar("(q - q^-1)^2").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.to_string(), "(q^4 - 2*q^2 + 1)/(q^2)");
    }

    #[test]
    fn rho_aliases() {
        assert_eq!(parse_scalar("rho^2/r").unwrap(), ScalarFraction::r());
        assert_eq!(parse_scalar("q^(-2)").unwrap(), ScalarFraction::q_pow(-2));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_scalar("1/(q-q)"), Err(Error::DivisionByZero)));
        assert!(parse_scalar("q +").is_err());
        assert!(parse_scalar("x").is_err());
    }
}

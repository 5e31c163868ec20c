//! Recursive-descent parser for coefficient expressions.
//!
//! Grammar (whitespace insignificant):
//!   expr     := term (("+" | "-") term)*
//!   term     := factor ("*" factor)*
//!   factor   := base ("^" uint)?
//!   base     := rational | "phi" | "beta" | "l"uint | "(" expr ")" | "-" base
//!   rational := uint ("/" uint)?
//! An "l"uint symbol is valid only when uint is prime. Note that "^" binds
//! tighter than the unary minus inside base: "-phi^2" is (-phi)^2.

use super::{Rational, SymPoly, Variable};
use crate::error::{Error, ParseError, Result};
use num_bigint::BigInt;
use num_traits::Zero;

pub fn parse_coeff_expr(text: &str) -> Result<SymPoly> {
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let poly = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.bytes.len() {
        return Err(parser.error(&["end of input", "+", "-", "*", "^"]));
    }
    Ok(poly)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b' ' || b == b'\t' || b == b'\n' || b == b'\r' {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn error(&mut self, expected: &[&str]) -> Error {
        self.skip_ws();
        let found = match self.bytes.get(self.pos) {
            None => "end of input".to_string(),
            Some(_) => {
                let rest = &self.bytes[self.pos..];
                let len = rest
                    .iter()
                    .take_while(|b| b.is_ascii_alphanumeric())
                    .count()
                    .clamp(1, 12);
                format!("{:?}", String::from_utf8_lossy(&rest[..len]))
            }
        };
        Error::Parse(ParseError {
            offset: self.pos,
            found,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn expr(&mut self) -> Result<SymPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SymPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SymPoly> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.uint_u32("exponent")?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<SymPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.base()?.neg())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error(&[")", "+", "-", "*"]));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => self.rational(),
            Some(b) if b.is_ascii_alphabetic() => self.symbol(),
            _ => Err(self.error(&["rational", "phi", "beta", "l<prime>", "(", "-"])),
        }
    }

    fn rational(&mut self) -> Result<SymPoly> {
        let numer = self.digits();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let den_offset = self.pos;
            match self.bytes.get(self.pos) {
                Some(b) if b.is_ascii_digit() => {}
                _ => return Err(self.error(&["unsigned integer"])),
            }
            let denom = self.digits();
            if denom.is_zero() {
                return Err(Error::Parse(ParseError {
                    offset: den_offset,
                    found: "\"0\"".to_string(),
                    expected: vec!["nonzero denominator".to_string()],
                }));
            }
            return Ok(SymPoly::constant(Rational::new(numer, denom)));
        }
        Ok(SymPoly::constant(Rational::from_integer(numer)))
    }

    /// Consume a nonempty run of digits. Caller guarantees the first byte is
    /// a digit.
    fn digits(&mut self) -> BigInt {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.bytes.get(self.pos), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        text.parse::<BigInt>().unwrap()
    }

    fn uint_u32(&mut self, what: &str) -> Result<u32> {
        self.skip_ws();
        let offset = self.pos;
        match self.bytes.get(self.pos) {
            Some(b) if b.is_ascii_digit() => {}
            _ => return Err(self.error(&["unsigned integer"])),
        }
        let value = self.digits();
        u32::try_from(&value).map_err(|_| {
            Error::Parse(ParseError {
                offset,
                found: format!("\"{value}\""),
                expected: vec![format!("{what} below 2^32")],
            })
        })
    }

    fn symbol(&mut self) -> Result<SymPoly> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.bytes.get(self.pos), Some(b) if b.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        match name {
            "phi" => Ok(SymPoly::var(Variable::Phi)),
            "beta" => Ok(SymPoly::var(Variable::Beta)),
            "l" => {
                match self.bytes.get(self.pos) {
                    Some(b) if b.is_ascii_digit() => {}
                    _ => {
                        self.pos = start;
                        return Err(self.error(&["phi", "beta", "l<prime>"]));
                    }
                }
                let p = self.uint_u32("prime")?;
                if !is_prime_u32(p) {
                    return Err(Error::Parse(ParseError {
                        offset: start,
                        found: format!("\"l{p}\""),
                        expected: vec!["l<prime> with a prime index".to_string()],
                    }));
                }
                Ok(SymPoly::var(Variable::LogPrime(p)))
            }
            _ => {
                self.pos = start;
                Err(self.error(&["phi", "beta", "l<prime>"]))
            }
        }
    }
}

fn is_prime_u32(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    let n = n as u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

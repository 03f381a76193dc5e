//! Parser for the `E(n)^k` notation produced by [`CycloNumber`]'s `Display`.
//!
//! Accepts signed sums of terms `c`, `c*E(n)^k`, `E(n)^k`, `E(n)` with `c` a
//! rational `p` or `p/q`; whitespace between tokens is ignored.

use super::{CycloNumber, Rational};
use crate::{Error, Result};
use num::BigInt;
use num_traits::{One, Zero};
use std::str::FromStr;

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(s: &'a str) -> Self {
        Scanner {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        match self.bump() {
            Some(x) if x == b => Ok(()),
            other => Err(Error::Parse(format!(
                "expected '{}', found {:?}",
                b as char,
                other.map(|c| c as char)
            ))),
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Parse("expected digits".into()));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        BigInt::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    fn signed_int(&mut self) -> Result<BigInt> {
        let neg = self.peek() == Some(b'-');
        if neg || self.peek() == Some(b'+') {
            self.bump();
        }
        let d = self.digits()?;
        Ok(if neg { -d } else { d })
    }

    fn rational(&mut self) -> Result<Rational> {
        let numer = self.digits()?;
        if self.peek() == Some(b'/') {
            self.bump();
            let denom = self.digits()?;
            if denom.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from_integer(numer))
        }
    }

    /// `E(n)` or `E(n)^k`.
    fn root_term(&mut self) -> Result<CycloNumber> {
        self.expect(b'E')?;
        self.expect(b'(')?;
        let n = self.digits()?;
        self.expect(b')')?;
        let n: u32 = n
            .try_into()
            .map_err(|_| Error::Parse("root order out of range".into()))?;
        if n == 0 {
            return Err(Error::Parse("root order must be positive".into()));
        }
        let k = if self.peek() == Some(b'^') {
            self.bump();
            let k = self.signed_int()?;
            i64::try_from(k).map_err(|_| Error::Parse("exponent out of range".into()))?
        } else {
            1
        };
        Ok(CycloNumber::zeta(n, k))
    }

    fn term(&mut self) -> Result<CycloNumber> {
        match self.peek() {
            Some(b'E') => self.root_term(),
            Some(b) if b.is_ascii_digit() => {
                let c = self.rational()?;
                if self.peek() == Some(b'*') {
                    self.bump();
                    Ok(CycloNumber::from_rational(c) * self.root_term()?)
                } else {
                    Ok(CycloNumber::from_rational(c))
                }
            }
            other => Err(Error::Parse(format!(
                "expected term, found {:?}",
                other.map(|c| c as char)
            ))),
        }
    }
}

impl FromStr for CycloNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<CycloNumber> {
        let mut sc = Scanner::new(s);
        let mut acc = CycloNumber::zero_value();
        let mut first = true;
        loop {
            let sign = match sc.peek() {
                Some(b'-') => {
                    sc.bump();
                    -Rational::one()
                }
                Some(b'+') => {
                    sc.bump();
                    Rational::one()
                }
                Some(_) if first => Rational::one(),
                Some(other) => {
                    return Err(Error::Parse(format!(
                        "expected '+' or '-', found '{}'",
                        other as char
                    )))
                }
                None if first => return Err(Error::Parse("empty input".into())),
                None => break,
            };
            first = false;
            let t = sc.term()?;
            acc = acc + CycloNumber::from_rational(sign) * t;
            if sc.peek().is_none() {
                break;
            }
        }
        Ok(acc)
    }
}

//! Text forms of rings and elements.
//!
//! Ring specs:
//!
//! ```text
//! Z/<m>                     integers modulo m
//! GF(<p>)                   prime field
//! GF(<p>^<k>)               Galois field, default modulus
//! GF(<p>^<k>;<poly>)        Galois field with the given modulus in x
//! Z/<m>[x]/(<poly>)         quotient of Z/m[x]
//! F<p>[t]/(t^2)             dual numbers over F_p
//! ```
//!
//! Polynomial expressions use `+`, `-`, `*` (or juxtaposition, as in `2x`),
//! `^` with a non-negative integer exponent, and parentheses.

use crate::error::{Error, Result};
use crate::rings::{Elem, Ring};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            src: s.as_bytes(),
            pos: 0,
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn expect_str(&mut self, s: &str) -> Result<()> {
        for c in s.bytes() {
            self.expect(c)?;
        }
        Ok(())
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::parse(start, "number out of range"))
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.pos, message)
    }
}

/// Polynomial arithmetic on coefficient vectors modulo `m`, lowest degree first.
struct PolyEval {
    m: u64,
    var: char,
}

impl PolyEval {
    fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let len = a.len().max(b.len());
        (0..len)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0) as u128;
                let y = b.get(i).copied().unwrap_or(0) as u128;
                ((x + y) % self.m as u128) as u64
            })
            .collect()
    }

    fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&c| (self.m - c % self.m) % self.m).collect()
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                let t = (x as u128 * y as u128 + out[i + j] as u128) % self.m as u128;
                out[i + j] = t as u64;
            }
        }
        out
    }

    fn expr(&self, c: &mut Cursor) -> Result<Vec<u64>> {
        let mut acc = if c.eat(b'-') {
            self.neg(&self.term(c)?)
        } else {
            c.eat(b'+');
            self.term(c)?
        };
        loop {
            if c.eat(b'+') {
                acc = self.add(&acc, &self.term(c)?);
            } else if c.eat(b'-') {
                acc = self.add(&acc, &self.neg(&self.term(c)?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&self, c: &mut Cursor) -> Result<Vec<u64>> {
        let mut acc = self.factor(c)?;
        loop {
            if c.eat(b'*') {
                acc = self.mul(&acc, &self.factor(c)?);
            } else if matches!(c.peek(), Some(b'(') | Some(b'0'..=b'9'))
                || c.peek() == Some(self.var as u8)
            {
                acc = self.mul(&acc, &self.factor(c)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&self, c: &mut Cursor) -> Result<Vec<u64>> {
        let base = self.atom(c)?;
        if !c.eat(b'^') {
            return Ok(base);
        }
        let e = c.number()?;
        if e > 1 << 16 {
            return Err(c.error("exponent too large"));
        }
        let mut acc = vec![1 % self.m];
        for _ in 0..e {
            acc = self.mul(&acc, &base);
        }
        Ok(acc)
    }

    fn atom(&self, c: &mut Cursor) -> Result<Vec<u64>> {
        match c.peek() {
            Some(b'(') => {
                c.pos += 1;
                let inner = self.expr(c)?;
                c.expect(b')')?;
                Ok(inner)
            }
            Some(b'0'..=b'9') => {
                let v = c.number()?;
                Ok(vec![v % self.m])
            }
            Some(ch) if ch == self.var as u8 => {
                c.pos += 1;
                Ok(vec![0, 1 % self.m])
            }
            Some(ch) => Err(c.error(format!("unexpected '{}'", ch as char))),
            None => Err(c.error("unexpected end of input")),
        }
    }
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Parses a polynomial expression in `var` with coefficients modulo `m`,
/// returning coefficients lowest degree first with trailing zeros removed.
pub fn parse_poly_coeffs(s: &str, m: u64, var: char) -> Result<Vec<u64>> {
    if m < 2 {
        return Err(Error::InvalidRing(format!("modulus {m} must be at least 2")));
    }
    let mut c = Cursor::new(s);
    let v = PolyEval { m, var }.expr(&mut c)?;
    c.finish()?;
    Ok(trim(v))
}

fn poly_in_parens(c: &mut Cursor, m: u64, var: char, src: &str) -> Result<Vec<u64>> {
    c.expect(b'(')?;
    let start = c.pos;
    let mut depth = 1usize;
    let mut end = start;
    while end < c.src.len() {
        match c.src[end] {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth == 0 {
                    break;
                }
            }
            _ => {}
        }
        end += 1;
    }
    if depth != 0 {
        return Err(Error::parse(c.src.len(), "unbalanced parentheses"));
    }
    let inner = &src[start..end];
    let coeffs = parse_poly_coeffs(inner, m, var).map_err(|e| shift(e, start))?;
    c.pos = end + 1;
    Ok(coeffs)
}

fn poly_until(c: &mut Cursor, stop: u8, m: u64, var: char, src: &str) -> Result<Vec<u64>> {
    let start = c.pos;
    let mut depth = 0usize;
    let mut end = start;
    while end < c.src.len() {
        match c.src[end] {
            b'(' => depth += 1,
            b')' if depth == 0 && stop == b')' => break,
            b')' => depth -= 1,
            _ => {}
        }
        end += 1;
    }
    if end >= c.src.len() {
        return Err(Error::parse(c.src.len(), format!("expected '{}'", stop as char)));
    }
    let coeffs = parse_poly_coeffs(&src[start..end], m, var).map_err(|e| shift(e, start))?;
    c.pos = end;
    Ok(coeffs)
}

fn shift(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { pos, message } => Error::Parse {
            pos: pos + offset,
            message,
        },
        other => other,
    }
}

/// Parses a ring spec such as `Z/4`, `GF(2^3)` or `Z/4[x]/(x^2+x+1)`.
pub fn parse_ring(s: &str) -> Result<Ring> {
    let mut c = Cursor::new(s);
    let ring = match c.peek() {
        Some(b'Z') => {
            c.pos += 1;
            c.expect(b'/')?;
            let m = c.number()?;
            if c.eat(b'[') {
                c.expect_str("x]/")?;
                let f = poly_in_parens(&mut c, m, 'x', s)?;
                Ring::quotient(m, &f)?
            } else {
                Ring::integers_mod(m)?
            }
        }
        Some(b'G') => {
            c.pos += 1;
            c.expect_str("F(")?;
            let p = c.number()?;
            let ring = if c.eat(b'^') {
                let k_pos = c.pos;
                let k = c.number()?;
                let k = u32::try_from(k).map_err(|_| Error::parse(k_pos, "degree out of range"))?;
                if c.eat(b';') {
                    if !crate::rings::is_prime(p) {
                        return Err(Error::InvalidRing(format!("{p} is not prime")));
                    }
                    let f_pos = c.pos;
                    let f = poly_until(&mut c, b')', p, 'x', s)?;
                    if f.len() != k as usize + 1 {
                        return Err(Error::parse(f_pos, format!("modulus must have degree {k}")));
                    }
                    Ring::galois_field_with_modulus(p, &f)?
                } else {
                    Ring::galois_field(p, k)?
                }
            } else {
                Ring::prime_field(p)?
            };
            c.expect(b')')?;
            ring
        }
        Some(b'F') => {
            c.pos += 1;
            let p = c.number()?;
            c.expect_str("[t]/")?;
            let at = c.pos;
            let f = poly_in_parens(&mut c, p.max(2), 't', s)?;
            if f != [0, 0, 1] {
                return Err(Error::parse(at, "only the modulus t^2 is supported"));
            }
            Ring::dual_numbers(p)?
        }
        _ => return Err(c.error("expected 'Z/', 'GF(' or 'F<p>[t]'")),
    };
    c.finish()?;
    Ok(ring)
}

/// Parses an element of `ring` written as an integer or a polynomial in the
/// ring's variable.
pub fn parse_element(ring: &Ring, s: &str) -> Result<Elem> {
    let coeffs = parse_poly_coeffs(s, ring.characteristic(), ring.variable())?;
    Ok(ring.reduce_coeffs(coeffs))
}

use num_bigint::BigInt;

use super::{Monomial, Poly, Rational};
use crate::error::{Error, Result};

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.s[start..self.pos]).unwrap())
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {}", self.pos))
    }
}

/// Parses the polynomial text format, e.g. `3/2*x1^2*x2 - x3 + 1`.
pub fn parse_poly(s: &str, n_vars: usize) -> Result<Poly> {
    let mut cur = Cursor { s: s.as_bytes(), pos: 0 };
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let mut sign = false;
        match cur.peek() {
            None if !first => break,
            None => return Err(cur.err("empty polynomial")),
            Some(b'+') => cur.pos += 1,
            Some(b'-') => {
                sign = true;
                cur.pos += 1;
            }
            Some(_) if first => {}
            Some(_) => return Err(cur.err("expected + or -")),
        }
        first = false;
        let (m, c) = parse_term(&mut cur, n_vars)?;
        terms.push((m, if sign { -c } else { c }));
    }
    Ok(Poly::from_terms(n_vars, terms))
}

fn parse_term(cur: &mut Cursor<'_>, n_vars: usize) -> Result<(Monomial, Rational)> {
    let mut coef = Rational::one();
    let mut mono = Monomial::ONE;
    loop {
        match cur.peek() {
            Some(b'x') => {
                cur.pos += 1;
                let idx: usize = cur
                    .digits()
                    .ok_or_else(|| cur.err("expected variable index"))?
                    .parse()
                    .map_err(|_| cur.err("bad variable index"))?;
                if idx == 0 || idx > n_vars {
                    return Err(Error::Parse(format!("variable x{idx} outside x1..x{n_vars}")));
                }
                let mut e = 1u32;
                if cur.peek() == Some(b'^') {
                    cur.pos += 1;
                    e = cur
                        .digits()
                        .ok_or_else(|| cur.err("expected exponent"))?
                        .parse()
                        .map_err(|_| cur.err("bad exponent"))?;
                    if e > 127 {
                        return Err(cur.err("exponent too large"));
                    }
                }
                mono = mono.mul(Monomial::var(idx - 1).pow(e));
            }
            Some(b) if b.is_ascii_digit() => {
                let num: BigInt = cur.digits().unwrap().parse().unwrap();
                let mut den = BigInt::from(1);
                if cur.peek() == Some(b'/') {
                    cur.pos += 1;
                    den = cur
                        .digits()
                        .ok_or_else(|| cur.err("expected denominator"))?
                        .parse()
                        .unwrap();
                    if den == BigInt::from(0) {
                        return Err(cur.err("zero denominator"));
                    }
                }
                coef = &coef * &Rational::from_big(num, den);
            }
            _ => return Err(cur.err("expected factor")),
        }
        if cur.peek() == Some(b'*') {
            cur.pos += 1;
        } else {
            return Ok((mono, coef));
        }
    }
}

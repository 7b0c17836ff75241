//! Rendering and parsing of scalars written in `q = u^D`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::{LaurentPoly, RatFunc, ScalarError};

fn render_exponent(e: i64, root_order: i64) -> String {
    let g = e.gcd(&root_order);
    let (a, b) = (e / g, root_order / g);
    match (a, b) {
        (1, 1) => "q".to_string(),
        (a, 1) => format!("q^{a}"),
        (a, b) => format!("q^({a}/{b})"),
    }
}

/// Renders `p(u)` as a Laurent expression in `q`, highest power first.
pub fn render_laurent_q(p: &LaurentPoly, root_order: i64) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let terms: Vec<(i64, BigInt)> = p.terms().map(|(e, c)| (e, c.clone())).collect();
    let mut out = String::new();
    for (idx, (e, c)) in terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if *e == 0 {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(&render_exponent(*e, root_order));
        }
    }
    out
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    root_order: i64,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(txt.parse().unwrap())
    }

    fn signed_small(&mut self) -> Result<i64, ScalarError> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let v = self.integer()?;
        let v: i64 = v.try_into().map_err(|_| self.err("exponent too large"))?;
        Ok(if neg { -v } else { v })
    }

    /// Exponent of `q`, returned as a power of `u`.
    fn exponent(&mut self) -> Result<i64, ScalarError> {
        let (num, den) = if self.eat(b'{') {
            let n = self.signed_small()?;
            if !self.eat(b'}') {
                return Err(self.err("expected '}'"));
            }
            (n, 1)
        } else if self.eat(b'(') {
            let n = self.signed_small()?;
            let d = if self.eat(b'/') { self.signed_small()? } else { 1 };
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            (n, d)
        } else {
            (self.signed_small()?, 1)
        };
        if den == 0 || (num * self.root_order) % den != 0 {
            return Err(self.err("exponent is not a multiple of 1/D"));
        }
        Ok(num * self.root_order / den)
    }

    fn atom(&mut self) -> Result<RatFunc, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(b'q') => {
                self.pos += 1;
                let e = if self.eat(b'^') { self.exponent()? } else { self.root_order };
                Ok(RatFunc::u_pow(e))
            }
            Some(c) if c.is_ascii_digit() => Ok(RatFunc::from_bigint(self.integer()?)),
            _ => Err(self.err("expected number, 'q' or '('")),
        }
    }

    fn term(&mut self) -> Result<RatFunc, ScalarError> {
        let mut acc = self.atom()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.atom()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.atom()?;
                    acc = acc.checked_div(&d)?;
                }
                Some(b'q') | Some(b'(') => acc = acc * self.atom()?,
                _ => return Ok(acc),
            }
        }
    }

    fn expr(&mut self) -> Result<RatFunc, ScalarError> {
        let mut acc = RatFunc::zero();
        let mut first = true;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else if self.eat(b'+') {
                false
            } else if first {
                false
            } else {
                return Ok(acc);
            };
            first = false;
            let t = self.term()?;
            acc = if neg { acc - t } else { acc + t };
        }
    }
}

/// Parses a rational expression in `q` built from integers, `q^k`, `q^{k}`,
/// `q^(a/b)`, sums, products, quotients and parentheses.
pub fn parse_scalar_q(text: &str, root_order: i64) -> Result<RatFunc, ScalarError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, root_order };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// Parses an integer-coefficient Laurent expression in `q`.
pub fn parse_laurent_q(text: &str, root_order: i64) -> Result<LaurentPoly, ScalarError> {
    let v = parse_scalar_q(text, root_order)?;
    if !v.is_laurent() {
        return Err(ScalarError::Parse(format!("not a Laurent polynomial: {text}")));
    }
    Ok(v.numerator().clone())
}

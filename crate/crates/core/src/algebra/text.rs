//! Text form of algebra elements.
//!
//! An element is a sum of products of factors: `e[i,k]`, `f[i,k]` (node name
//! and 1-based copy), `q^{h:a,b;d:c,d}` (a coweight), integers, powers of `q`
//! such as `q^-2`, and parenthesized scalars or elements.

use thiserror::Error;

use super::{Algebra, Elem};
use crate::half::DepthError;
use crate::scalar::{parse_scalar_q, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("parse error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error(transparent)]
    Depth(#[from] DepthError),
}

struct Parser<'a> {
    alg: &'a Algebra,
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax { pos: self.pos, msg: msg.into() }
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

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn starts_with(&mut self, t: &str) -> bool {
        self.skip_ws();
        self.s[self.pos..].starts_with(t.as_bytes())
    }

    fn expr(&mut self) -> Result<Elem, ParseError> {
        let mut acc = Elem::zero();
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => return Ok(acc),
            };
            first = false;
            let t = self.term()?;
            acc = if neg { acc.sub(&t) } else { acc.add(&t) };
        }
    }

    fn term(&mut self) -> Result<Elem, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = self.alg.mul(&acc, &f)?;
        }
        Ok(acc)
    }

    fn closing(&self, open: u8, close: u8) -> Result<usize, ParseError> {
        let mut depth = 0;
        for i in self.pos..self.s.len() {
            if self.s[i] == open {
                depth += 1;
            } else if self.s[i] == close {
                depth -= 1;
                if depth == 0 {
                    return Ok(i);
                }
            }
        }
        Err(self.err("unbalanced brackets"))
    }

    fn text(&self, a: usize, b: usize) -> &'a str {
        std::str::from_utf8(&self.s[a..b]).unwrap_or("")
    }

    fn scalar(&self, text: &str) -> Result<RatFunc, ParseError> {
        parse_scalar_q(text, self.alg.datum().root_order()).map_err(|e| self.err(e.to_string()))
    }

    fn factor(&mut self) -> Result<Elem, ParseError> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(b'(') => {
                let end = self.closing(b'(', b')')?;
                let inner = self.text(self.pos + 1, end);
                let v = match parse_scalar_q(inner, self.alg.datum().root_order()) {
                    Ok(c) => self.alg.scalar(c),
                    Err(_) => {
                        let mut sub = Parser { alg: self.alg, s: &self.s[..end], pos: self.pos + 1 };
                        let v = sub.expr()?;
                        if sub.peek().is_some() {
                            return Err(sub.err("unexpected input"));
                        }
                        v
                    }
                };
                self.pos = end + 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let c = self.scalar(self.text(start, self.pos))?;
                Ok(self.alg.scalar(c))
            }
            Some(b'e') | Some(b'f') => self.generator(),
            Some(b'q') => {
                if self.starts_with("q^{h") {
                    return self.toral();
                }
                let start = self.pos;
                self.pos += 1;
                if self.s.get(self.pos) == Some(&b'^') {
                    self.pos += 1;
                    match self.s.get(self.pos) {
                        Some(b'(') => self.pos = self.closing(b'(', b')')? + 1,
                        Some(b'{') => self.pos = self.closing(b'{', b'}')? + 1,
                        _ => {
                            if self.s.get(self.pos) == Some(&b'-') {
                                self.pos += 1;
                            }
                            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                                self.pos += 1;
                            }
                        }
                    }
                }
                let c = self.scalar(self.text(start, self.pos))?;
                Ok(self.alg.scalar(c))
            }
            Some(c) => Err(self.err(format!("unexpected '{}'", c as char))),
        }
    }

    fn generator(&mut self) -> Result<Elem, ParseError> {
        let is_e = self.s[self.pos] == b'e';
        self.pos += 1;
        self.expect(b'[')?;
        let end = self.s[self.pos..].iter().position(|&c| c == b']').map(|p| self.pos + p).ok_or(self.err("missing ']'"))?;
        let inner = self.text(self.pos, end);
        let Some((name, copy)) = inner.split_once(',') else {
            return Err(self.err("generator needs [node,copy]"));
        };
        let d = self.alg.datum();
        let node = d.node_by_name(name.trim()).ok_or_else(|| self.err(format!("unknown node '{}'", name.trim())))?;
        let k: usize = copy.trim().parse().map_err(|_| self.err("bad copy index"))?;
        if k == 0 || k > d.charge(node) {
            return Err(self.err(format!("copy {k} out of range for node '{}'", name.trim())));
        }
        self.pos = end + 1;
        Ok(if is_e { self.alg.e(node, k - 1) } else { self.alg.f(node, k - 1) })
    }

    fn toral(&mut self) -> Result<Elem, ParseError> {
        self.pos += 2; // "q^"
        let end = self.closing(b'{', b'}')?;
        let inner = self.text(self.pos + 1, end).to_string();
        let r = self.alg.datum().rank();
        let mut h = vec![0i64; 2 * r];
        for part in inner.split(';') {
            let Some((key, vals)) = part.split_once(':') else {
                return Err(self.err("coweight needs h:...;d:..."));
            };
            let off = match key.trim() {
                "h" => 0,
                "d" => r,
                other => return Err(self.err(format!("unknown coweight part '{other}'"))),
            };
            let nums: Vec<&str> = vals.split(',').map(str::trim).filter(|t| !t.is_empty()).collect();
            if nums.len() != r {
                return Err(self.err(format!("coweight part '{}' needs {r} entries", key.trim())));
            }
            for (i, t) in nums.iter().enumerate() {
                h[off + i] = t.parse().map_err(|_| self.err(format!("bad integer '{t}'")))?;
            }
        }
        self.pos = end + 1;
        Ok(self.alg.toral(h))
    }
}

impl Algebra {
    pub fn parse(&self, text: &str) -> Result<Elem, ParseError> {
        let mut p = Parser { alg: self, s: text.as_bytes(), pos: 0 };
        let v = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }

    fn render_letter(&self, side: char, l: u8) -> String {
        let (node, copy) = self.datum().letters()[l as usize];
        format!("{side}[{},{}]", self.datum().names()[node], copy + 1)
    }

    pub fn render_coweight(&self, h: &[i64]) -> String {
        let r = self.datum().rank();
        let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        format!("q^{{h:{};d:{}}}", join(&h[..r]), join(&h[r..]))
    }

    pub fn render(&self, a: &Elem) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let d = self.datum().root_order();
        let mut parts = Vec::new();
        for (m, c) in a.iter() {
            let mut factors: Vec<String> = Vec::new();
            if !c.is_one() {
                factors.push(format!("({})", c.render(d)));
            }
            factors.extend(m.y.iter().map(|&l| self.render_letter('f', l)));
            if m.h.iter().any(|&x| x != 0) {
                factors.push(self.render_coweight(&m.h));
            }
            factors.extend(m.x.iter().map(|&l| self.render_letter('e', l)));
            if factors.is_empty() {
                factors.push("1".to_string());
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::samples;

    #[test]
    fn render_parse_round_trip() {
        let alg = Algebra::new(samples::osp12(), 4);
        let a = alg.parse("(q^2+1)*f[1,1]*q^{h:1;d:-1}*e[1,1]*e[1,1] - 3 + q^-1*e[1,1]").unwrap();
        let back = alg.parse(&alg.render(&a)).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn parse_errors() {
        let alg = Algebra::new(samples::sl2(), 3);
        assert!(matches!(alg.parse("e[9,1]"), Err(ParseError::Syntax { .. })));
        assert!(matches!(alg.parse("e[1,2]"), Err(ParseError::Syntax { .. })));
        assert!(matches!(alg.parse("q^{h:1,2}"), Err(ParseError::Syntax { .. })));
        assert!(matches!(alg.parse("e[1,1]*e[1,1]*e[1,1]*e[1,1]"), Err(ParseError::Depth(_))));
    }
}

//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! Coefficients are stored lowest degree first and the vector is always
//! trimmed, so the zero polynomial is the empty vector.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c * u^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial has no degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Multiplicity of `u` as a factor (number of leading zero coefficients).
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Drops the first `k` coefficients, i.e. divides by `u^k` when exact.
    pub fn shift_down(&self, k: usize) -> Self {
        IntPoly::from_coeffs(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let c = match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            coeffs.push(c);
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let c = match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a - b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b,
                (None, None) => unreachable!(),
            };
            coeffs.push(c);
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        if other.coeffs.len() == 1 {
            return self.scale(&other.coeffs[0]);
        }
        if self.coeffs.len() == 1 {
            return other.scale(&self.coeffs[0]);
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Divides every coefficient by `c`; the division must be exact.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|a| {
                    debug_assert!((a % c).is_zero());
                    a / c
                })
                .collect(),
        }
    }

    /// Positive gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    /// A pseudo-remainder of `self` by `divisor`: a polynomial of degree below
    /// `divisor` congruent to a nonzero integer multiple of `self`.
    pub fn pseudo_rem(&self, divisor: &Self) -> Self {
        let db = divisor.degree().expect("pseudo_rem by zero");
        let lb = divisor.leading().unwrap();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading().unwrap().clone();
            let g = lr.gcd(lb);
            let mul_r = lb / &g;
            let mul_b = lr / &g;
            let mut next = r.scale(&mul_r);
            let shift = dr - db;
            for (i, b) in divisor.coeffs.iter().enumerate() {
                next.coeffs[i + shift] -= b * &mul_b;
            }
            next.trim();
            r = next;
        }
        r
    }

    /// Greatest common divisor over `Q[u]`, returned primitive with positive
    /// leading coefficient. The gcd of zero and zero is zero.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        if self.is_constant() || other.is_constant() {
            return IntPoly::one();
        }
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.coeffs.len() < b.coeffs.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.is_constant() {
                return IntPoly::one();
            }
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    /// Exact quotient `self / divisor` over `Z[u]`. Requires that `divisor`
    /// divides `self` over `Q[u]` and that the quotient has integer
    /// coefficients (true whenever `divisor` is primitive).
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let db = divisor.degree().expect("div_exact by zero");
        if self.is_zero() {
            return IntPoly::zero();
        }
        if db == 0 {
            return self.div_scalar_exact(&divisor.coeffs[0]);
        }
        let ds = self.degree().unwrap();
        assert!(ds >= db, "div_exact: divisor degree exceeds dividend");
        let lb = divisor.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); ds - db + 1];
        for k in (0..=ds - db).rev() {
            let lr = &r[k + db];
            if lr.is_zero() {
                continue;
            }
            let (qk, rem) = lr.div_rem(lb);
            assert!(rem.is_zero(), "div_exact: inexact division");
            for (i, b) in divisor.coeffs.iter().enumerate() {
                r[k + i] -= b * &qk;
            }
            q[k] = qk;
        }
        debug_assert!(r.iter().all(|c| c.is_zero()), "div_exact: nonzero remainder");
        IntPoly::from_coeffs(q)
    }

    /// Evaluation modulo the Mersenne prime used for rank certificates.
    pub fn eval_mod(&self, point: u64) -> u64 {
        let mut acc = 0u64;
        for c in self.coeffs.iter().rev() {
            acc = crate::modp::add(crate::modp::mul(acc, point), crate::modp::from_bigint(c));
        }
        acc
    }
}

impl PartialOrd for IntPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IntPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (u-1)(u+1) and (u-1)(u^2+u+1)
        let a = p(&[-1, 0, 1]);
        let b = p(&[-1, 0, 0, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(a.gcd(&p(&[3])), IntPoly::one());
    }

    #[test]
    fn exact_division_round_trips() {
        let a = p(&[2, -3, 0, 5, 1]);
        let b = p(&[-1, 2, 7]);
        assert_eq!(a.mul(&b).div_exact(&b), a);
    }

    #[test]
    fn content_and_primitive_part() {
        let a = p(&[-6, 0, -4]);
        assert_eq!(a.content(), BigInt::from(2));
        assert_eq!(a.primitive(), p(&[3, 0, 2]));
    }
}

//! Integer Laurent polynomials in `u`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::IntPoly;

/// `u^low * poly` with `poly(0) != 0`, or zero with `low == 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    poly: IntPoly,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, exp: i64) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { low: exp, poly: IntPoly::constant(c) }
    }

    pub fn from_poly(low: i64, poly: IntPoly) -> Self {
        if poly.is_zero() {
            return LaurentPoly::zero();
        }
        let k = poly.low_order();
        if k == 0 {
            LaurentPoly { low, poly }
        } else {
            LaurentPoly { low: low + k as i64, poly: poly.shift_down(k) }
        }
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let mut map: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_default() += c;
        }
        map.retain(|_, c| !c.is_zero());
        let Some((&lo, _)) = map.iter().next() else {
            return LaurentPoly::zero();
        };
        let hi = *map.keys().next_back().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in map {
            coeffs[(e - lo) as usize] = c;
        }
        LaurentPoly { low: lo, poly: IntPoly::from_coeffs(coeffs) }
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn into_parts(self) -> (i64, IntPoly) {
        (self.low, self.poly)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.poly.is_one()
    }

    /// Single-term polynomial `c u^e`.
    pub fn as_monomial(&self) -> Option<(&BigInt, i64)> {
        (self.poly.coeffs().len() == 1).then(|| (&self.poly.coeffs()[0], self.low))
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.poly
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn high(&self) -> i64 {
        self.low + self.poly.degree().unwrap_or(0) as i64
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { low: self.low, poly: self.poly.neg() }
    }

    fn aligned(&self, other: &Self) -> (i64, IntPoly, IntPoly) {
        let lo = self.low.min(other.low);
        (
            lo,
            self.poly.shift_up((self.low - lo) as usize),
            other.poly.shift_up((other.low - lo) as usize),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (lo, a, b) = self.aligned(other);
        LaurentPoly::from_poly(lo, a.add(&b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.neg();
        }
        let (lo, a, b) = self.aligned(other);
        LaurentPoly::from_poly(lo, a.sub(&b))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        // product of polynomials with nonzero constant terms keeps that property
        LaurentPoly { low: self.low + other.low, poly: self.poly.mul(&other.poly) }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { low: self.low, poly: self.poly.scale(c) }
    }

    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { low: self.low + k, poly: self.poly.clone() }
    }

    /// `u -> u^{-1}`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (-e, c.clone())))
    }

    pub fn leading_is_negative(&self) -> bool {
        self.poly.leading().is_some_and(|c| c.is_negative())
    }

    pub fn eval_mod(&self, point: u64) -> u64 {
        use crate::modp;
        modp::mul(self.poly.eval_mod(point), modp::pow_signed(point, self.low))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_low_order_zeros() {
        let p = LaurentPoly::from_poly(-2, IntPoly::from_i64s(&[0, 0, 3, 1]));
        assert_eq!(p.low(), 0);
        assert_eq!(p, LaurentPoly::from_terms([(0, BigInt::from(3)), (1, BigInt::one())]));
    }

    #[test]
    fn cancellation_to_zero() {
        let p = LaurentPoly::from_terms([(-1, BigInt::from(2)), (4, BigInt::from(-1))]);
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.sub(&p), LaurentPoly::zero());
    }
}

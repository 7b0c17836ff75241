//! Exact scalars: the field `Q(u)` of rational functions in one variable.
//!
//! The quantum parameter is `q = u^D` for a root order `D` fixed by the datum,
//! so every exponent that appears in structure constants is an integer power
//! of `u`.

mod laurent;
mod poly;
mod text;

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use laurent::LaurentPoly;
pub use poly::IntPoly;
pub use text::{parse_laurent_q, parse_scalar_q, render_laurent_q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("binomial index out of range: k={k}, n={n}")]
    BinomialDomain { n: i64, k: i64 },
    #[error("cannot parse scalar expression: {0}")]
    Parse(String),
}

/// Canonical reduced element of `Q(u)`.
///
/// The numerator is an integer Laurent polynomial; the denominator is an
/// integer polynomial with nonzero constant term and positive leading
/// coefficient. Numerator and denominator are coprime in `Q[u, u^-1]` and the
/// gcd of all their integer coefficients is 1. These conditions pin down a
/// unique representative, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: IntPoly,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(1).replace('q', "u"))
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: LaurentPoly::zero(), den: IntPoly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: LaurentPoly::one(), den: IntPoly::one() }
    }

    pub fn from_int(c: i64) -> Self {
        RatFunc { num: LaurentPoly::monomial(BigInt::from(c), 0), den: IntPoly::one() }
    }

    pub fn from_bigint(c: BigInt) -> Self {
        RatFunc { num: LaurentPoly::monomial(c, 0), den: IntPoly::one() }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        RatFunc::from_parts(
            LaurentPoly::monomial(r.numer().clone(), 0),
            LaurentPoly::monomial(r.denom().clone(), 0),
        )
        .expect("rational with zero denominator")
    }

    /// `u^k`.
    pub fn u_pow(k: i64) -> Self {
        RatFunc { num: LaurentPoly::monomial(BigInt::one(), k), den: IntPoly::one() }
    }

    /// `c u^k`.
    pub fn monomial(c: i64, k: i64) -> Self {
        RatFunc { num: LaurentPoly::monomial(BigInt::from(c), k), den: IntPoly::one() }
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        RatFunc { num: p, den: IntPoly::one() }
    }

    /// `num / den`, reduced.
    pub fn from_parts(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let (dlow, dpoly) = den.into_parts();
        Ok(RatFunc::reduce(num.shift(-dlow), dpoly))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    /// Denominator as a polynomial in `u` with nonzero constant term.
    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value lies in `Z[u, u^-1]`.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Full normalization of an arbitrary fraction with `den(0) != 0`.
    fn reduce(num: LaurentPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let (low, mut np) = num.into_parts();
        let mut den = den;
        if !den.is_constant() {
            let g = np.gcd(&den);
            if !g.is_one() {
                np = np.div_exact(&g);
                den = den.div_exact(&g);
            }
        }
        let mut c = np.content().gcd(&den.content());
        if den.leading().unwrap().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            np = np.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        RatFunc { num: LaurentPoly::from_poly(low, np), den }
    }

    /// Only the integer content and sign need fixing.
    fn fix_content(num: LaurentPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let mut c = num.poly().content().gcd(&den.content());
        if den.leading().unwrap().is_negative() {
            c = -c;
        }
        if c.is_one() {
            return RatFunc { num, den };
        }
        let (low, np) = num.into_parts();
        RatFunc {
            num: LaurentPoly::from_poly(low, np.div_scalar_exact(&c)),
            den: den.div_scalar_exact(&c),
        }
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            if self.den.is_one() {
                return RatFunc { num, den: IntPoly::one() };
            }
            return RatFunc::reduce(num, self.den.clone());
        }
        // with one side in Z[u, u^-1] the sum n1 + n2/d2 = (n1 d2 + n2)/d2 is already reduced
        if self.den.is_one() {
            let num = self.num.mul(&LaurentPoly::from_poly(0, other.den.clone())).add(&other.num);
            return RatFunc::fix_content(num, other.den.clone());
        }
        if other.den.is_one() {
            return other.add_ref(self);
        }
        let g = self.den.gcd(&other.den);
        let (a_cof, b_cof) = if g.is_one() {
            (other.den.clone(), self.den.clone())
        } else {
            (other.den.div_exact(&g), self.den.div_exact(&g))
        };
        let num = self
            .num
            .mul(&LaurentPoly::from_poly(0, a_cof.clone()))
            .add(&other.num.mul(&LaurentPoly::from_poly(0, b_cof)));
        RatFunc::reduce(num, self.den.mul(&a_cof))
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg())
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFunc { num: self.num.mul(&other.num), den: IntPoly::one() };
        }
        if let Some(r) = self.mul_by_unit_monomial(other).or_else(|| other.mul_by_unit_monomial(self)) {
            return r;
        }
        // cross-cancel each numerator against the other denominator
        let (an_low, an) = self.num.clone().into_parts();
        let (bn_low, bn) = other.num.clone().into_parts();
        let g1 = an.gcd(&other.den);
        let g2 = bn.gcd(&self.den);
        let (an, bd) = if g1.is_one() { (an, other.den.clone()) } else { (an.div_exact(&g1), other.den.div_exact(&g1)) };
        let (bn, ad) = if g2.is_one() { (bn, self.den.clone()) } else { (bn.div_exact(&g2), self.den.div_exact(&g2)) };
        RatFunc::fix_content(LaurentPoly::from_poly(an_low + bn_low, an.mul(&bn)), ad.mul(&bd))
    }

    /// `self * other` when `self` is `+-u^k`.
    fn mul_by_unit_monomial(&self, other: &Self) -> Option<Self> {
        if !self.den.is_one() {
            return None;
        }
        let (c, k) = self.num.as_monomial()?;
        if c.is_one() {
            Some(RatFunc { num: other.num.shift(k), den: other.den.clone() })
        } else if (-c).is_one() {
            Some(RatFunc { num: other.num.neg().shift(k), den: other.den.clone() })
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let (low, np) = self.num.clone().into_parts();
        let num = LaurentPoly::from_poly(-low, self.den.clone());
        let mut r = RatFunc { num, den: np };
        if r.den.leading().unwrap().is_negative() {
            r.num = r.num.neg();
            r.den = r.den.neg();
        }
        Ok(r)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<Self, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = RatFunc::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_ref(&b);
            }
        }
        Ok(acc)
    }

    /// Multiplies by the integer `c`.
    pub fn scale_int(&self, c: i64) -> Self {
        match c {
            0 => RatFunc::zero(),
            1 => self.clone(),
            -1 => self.neg(),
            _ => self.mul_ref(&RatFunc::from_int(c)),
        }
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        RatFunc { num: self.num.shift(k), den: self.den.clone() }
    }

    /// `u -> u^{-1}`, the bar involution on `Q(u)`.
    pub fn bar(&self) -> Self {
        let n = self.num.invert_variable();
        let d = LaurentPoly::from_poly(0, self.den.clone()).invert_variable();
        RatFunc::from_parts(n, d).unwrap()
    }

    /// Image modulo the prime at `u = point`; `None` when the denominator
    /// vanishes there.
    pub fn eval_mod(&self, point: u64) -> Option<u64> {
        use crate::modp;
        let d = self.den.eval_mod(point);
        let di = modp::inv(d)?;
        Some(modp::mul(self.num.eval_mod(point), di))
    }

    /// Coefficient view of numerator and denominator as rational maps
    /// `exponent -> coefficient`, with the denominator scaled to a monic
    /// leading term.
    pub fn rational_terms(&self) -> (Vec<(i64, BigRational)>, Vec<(i64, BigRational)>) {
        let lead = self.den.leading().cloned().unwrap_or_else(BigInt::one);
        let n = self.num.terms().map(|(e, c)| (e, BigRational::new(c.clone(), lead.clone()))).collect();
        let d = self
            .den
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64, BigRational::new(c.clone(), lead.clone())))
            .collect();
        (n, d)
    }

    /// Text rendering as an expression in `q = u^root_order`.
    pub fn render(&self, root_order: i64) -> String {
        let n = render_laurent_q(&self.num, root_order);
        if self.den.is_one() {
            return n;
        }
        let d = render_laurent_q(&LaurentPoly::from_poly(0, self.den.clone()), root_order);
        let wrap = |s: String, multi: bool| if multi { format!("({s})") } else { s };
        let n_multi = self.num.terms().count() > 1;
        let d_multi = self.den.coeffs().iter().filter(|c| !c.is_zero()).count() > 1;
        format!("{}/{}", wrap(n, n_multi), wrap(d, d_multi))
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        RatFunc::from_int(c)
    }
}

macro_rules! bin_op {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                self.$f(rhs)
            }
        }
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                self.$f(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                self.$f(rhs)
            }
        }
        impl $tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                self.$f(&rhs)
            }
        }
    };
}

bin_op!(Add, add, add_ref);
bin_op!(Sub, sub, sub_ref);
bin_op!(Mul, mul, mul_ref);

impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::checked_div`] to get an error value.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Div<RatFunc> for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        &self / &rhs
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(&self)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

impl AddAssign<&RatFunc> for RatFunc {
    fn add_assign(&mut self, rhs: &RatFunc) {
        *self = self.add_ref(rhs);
    }
}

impl AddAssign<RatFunc> for RatFunc {
    fn add_assign(&mut self, rhs: RatFunc) {
        *self = self.add_ref(&rhs);
    }
}

impl SubAssign<&RatFunc> for RatFunc {
    fn sub_assign(&mut self, rhs: &RatFunc) {
        *self = self.sub_ref(rhs);
    }
}

impl MulAssign<&RatFunc> for RatFunc {
    fn mul_assign(&mut self, rhs: &RatFunc) {
        *self = self.mul_ref(rhs);
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

/// `q_i - q_i^{-1}` for `q_i = u^e`.
pub fn xi(e: i64) -> RatFunc {
    RatFunc::u_pow(e) - RatFunc::u_pow(-e)
}

/// The colored integer `{n} = (theta^n q_i^n - q_i^{-n}) / (theta q_i - q_i^{-1})`
/// with `q_i = u^e`.
pub fn super_int(n: i64, e: i64, theta: i64) -> RatFunc {
    let tn = if theta == -1 && n.rem_euclid(2) == 1 { -1 } else { 1 };
    let num = RatFunc::monomial(tn, n * e) - RatFunc::u_pow(-n * e);
    let den = RatFunc::monomial(theta, e) - RatFunc::u_pow(-e);
    num.checked_div(&den).expect("colored integer with vanishing denominator")
}

pub fn super_factorial(n: i64, e: i64, theta: i64) -> RatFunc {
    (1..=n).fold(RatFunc::one(), |acc, m| acc * super_int(m, e, theta))
}

/// Colored binomial `[n choose k]` with `q_i = u^e` and diagonal sign `theta`.
pub fn super_binomial(n: i64, k: i64, e: i64, theta: i64) -> Result<RatFunc, ScalarError> {
    if k < 0 || k > n {
        return Err(ScalarError::BinomialDomain { n, k });
    }
    let num = super_factorial(n, e, theta);
    let den = super_factorial(k, e, theta) * super_factorial(n - k, e, theta);
    num.checked_div(&den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(k: i64) -> RatFunc {
        RatFunc::u_pow(k)
    }

    #[test]
    fn gcd_cancellation() {
        let a = (u(2) - RatFunc::one()) / (u(1) - RatFunc::one());
        assert_eq!(a, u(1) + RatFunc::one());
        assert!(a.is_laurent());
    }

    #[test]
    fn additive_identity() {
        let a = u(3) / (u(1) + RatFunc::from_int(2));
        assert_eq!(&a + &RatFunc::zero(), a);
    }

    #[test]
    fn xi_times_inverse() {
        for e in [1, 2, 3, 4] {
            let x = xi(e);
            assert_eq!(&x * &x.inv().unwrap(), RatFunc::one());
        }
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(RatFunc::one().checked_div(&RatFunc::zero()), Err(ScalarError::DivisionByZero));
        assert_eq!(RatFunc::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn zero_is_canonical() {
        let z = u(2) - u(2);
        assert_eq!(z, RatFunc::zero());
        assert!(z.denominator().is_one());
    }

    #[test]
    fn rational_constants_reduce() {
        let a = RatFunc::from_int(6) / RatFunc::from_int(-4);
        assert_eq!(a.numerator(), &LaurentPoly::monomial(BigInt::from(-3), 0));
        assert_eq!(a.denominator(), &IntPoly::from_i64s(&[2]));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(super_binomial(0, 0, 1, 1).unwrap(), RatFunc::one());
        assert_eq!(super_binomial(2, 1, 1, 1).unwrap(), u(1) + u(-1));
        assert_eq!(super_binomial(1, 1, 1, -1).unwrap(), RatFunc::one());
        assert!(super_binomial(2, 3, 1, 1).is_err());
        assert!(super_binomial(2, -1, 1, 1).is_err());
    }

    #[test]
    fn odd_colored_integers() {
        // {2} with theta = -1: (q^2 - q^-2)/(-q - q^-1) = -(q - q^-1)
        assert_eq!(super_int(2, 1, -1), -(u(1) - u(-1)));
    }

    #[test]
    fn bar_involution() {
        let a = (u(3) + RatFunc::from_int(2)) / (u(1) - RatFunc::from_int(5));
        assert_eq!(a.bar().bar(), a);
        assert_eq!(xi(1).bar(), -xi(1));
    }
}

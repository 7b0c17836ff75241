//! Rational function reconstruction from values modulo the Mersenne prime.
//!
//! A vector of unknown rational functions in `u` is sampled at growing sets
//! of points, each component is rebuilt by a truncated extended Euclid run
//! against the vanishing polynomial of the points, and the coefficients are
//! lifted to rationals by rational number reconstruction. Results are only
//! candidates; callers verify them exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::modp::{self, P};
use crate::scalar::{IntPoly, LaurentPoly, RatFunc};

/// Dense polynomial modulo `P`, low degree first, trimmed.
type ModPoly = Vec<u64>;

fn trim(mut a: ModPoly) -> ModPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn deg(a: &ModPoly) -> i64 {
    a.len() as i64 - 1
}

fn poly_sub(a: &ModPoly, b: &ModPoly) -> ModPoly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| modp::sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect())
}

fn poly_mul(a: &ModPoly, b: &ModPoly) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = modp::add(out[i + j], modp::mul(x, y));
        }
    }
    trim(out)
}

fn poly_divrem(a: &ModPoly, b: &ModPoly) -> (ModPoly, ModPoly) {
    let mut r = a.clone();
    if deg(a) < deg(b) {
        return (Vec::new(), r);
    }
    let lead_inv = modp::inv(*b.last().unwrap()).unwrap();
    let mut q = vec![0u64; a.len() - b.len() + 1];
    while !r.is_empty() && deg(&r) >= deg(b) {
        let shift = r.len() - b.len();
        let c = modp::mul(*r.last().unwrap(), lead_inv);
        q[shift] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[shift + j] = modp::sub(r[shift + j], modp::mul(c, bj));
        }
        r = trim(r);
    }
    (trim(q), r)
}

fn poly_eval(a: &ModPoly, x: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| modp::add(modp::mul(acc, x), c))
}

/// Newton interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[u64], ys: &[u64]) -> ModPoly {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = modp::sub(coef[i], coef[i - 1]);
            let den = modp::sub(xs[i], xs[i - j]);
            coef[i] = modp::mul(num, modp::inv(den).unwrap());
        }
    }
    let mut p: ModPoly = Vec::new();
    for i in (0..n).rev() {
        // p = p * (x - xs[i]) + coef[i]
        let mut next = vec![0u64; p.len() + 1];
        for (k, &c) in p.iter().enumerate() {
            next[k + 1] = modp::add(next[k + 1], c);
            next[k] = modp::sub(next[k], modp::mul(c, xs[i]));
        }
        next[0] = modp::add(next[0], coef[i]);
        p = trim(next);
    }
    p
}

/// Rational function `n / d` with `deg n + deg d < len(xs)` through the
/// samples, if the balanced Euclid step yields one.
fn rational_interpolate(xs: &[u64], ys: &[u64]) -> Option<(ModPoly, ModPoly)> {
    let n = xs.len();
    let mut m: ModPoly = vec![1];
    for &x in xs {
        m = poly_mul(&m, &vec![modp::neg(x), 1]);
    }
    let p = interpolate(xs, ys);
    let (mut r0, mut r1) = (m, p);
    let (mut t0, mut t1): (ModPoly, ModPoly) = (Vec::new(), vec![1]);
    let half = (n / 2) as i64;
    while deg(&r1) >= half {
        let (q, r) = poly_divrem(&r0, &r1);
        let t = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    if t1.is_empty() {
        return None;
    }
    Some((r1, t1))
}

/// Rational `a / b` with `|a|, b <= sqrt(P / 2)` congruent to `x`.
fn rational_number(x: u64) -> Option<(BigInt, BigInt)> {
    let bound: i128 = ((P / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (P as i128, x as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (a, b) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    Some((BigInt::from(a), BigInt::from(b)))
}

/// Lifts `n / d` modulo `P` to an integer rational function.
fn lift(n: &ModPoly, d: &ModPoly) -> Option<RatFunc> {
    // normalize so that the lowest nonzero coefficient of d is 1
    let low = d.iter().position(|&c| c != 0)?;
    let s = modp::inv(d[low]).unwrap();
    let lift_poly = |p: &ModPoly| -> Option<Vec<(BigInt, BigInt)>> {
        p.iter().map(|&c| rational_number(modp::mul(c, s))).collect()
    };
    let nq = lift_poly(n)?;
    let dq = lift_poly(d)?;
    let mut l = BigInt::one();
    for (_, b) in nq.iter().chain(dq.iter()) {
        l = l.lcm(b);
    }
    let to_int = |v: &[(BigInt, BigInt)]| -> Vec<BigInt> { v.iter().map(|(a, b)| a * (&l / b)).collect() };
    let num = LaurentPoly::from_poly(-(low as i64), IntPoly::from_coeffs(to_int(&nq)));
    let den = LaurentPoly::from_poly(0, IntPoly::from_coeffs(to_int(&dq)[low..].to_vec()));
    if den.is_zero() {
        return None;
    }
    RatFunc::from_parts(num, den).ok()
}

fn sample_point(j: usize) -> u64 {
    // spread out, away from small roots of unity
    modp::add(modp::mul(j as u64 + 1, 0x9E37_79B9_7F4A_7C15 % P), 12_345)
}

/// Reconstructs a vector of `len` rational functions from an oracle giving
/// its values modulo `P` at a point (or `None` where the oracle's data is
/// singular). Returns `None` if no stable reconstruction is found within
/// `max_points` samples.
pub fn reconstruct<F>(len: usize, max_points: usize, mut oracle: F) -> Option<Vec<RatFunc>>
where
    F: FnMut(u64) -> Option<Vec<u64>>,
{
    let mut xs: Vec<u64> = Vec::new();
    let mut vals: Vec<Vec<u64>> = Vec::new();
    let mut next = 0usize;
    let mut want = 8usize;
    const CHECKS: usize = 3;
    loop {
        while xs.len() < want + CHECKS {
            let x = sample_point(next);
            next += 1;
            if let Some(v) = oracle(x) {
                debug_assert_eq!(v.len(), len);
                xs.push(x);
                vals.push(v);
            }
            if next > 4 * max_points {
                return None;
            }
        }
        let mut out = Vec::with_capacity(len);
        let mut ok = true;
        for i in 0..len {
            let ys: Vec<u64> = vals[..want].iter().map(|v| v[i]).collect();
            if ys.iter().all(|&y| y == 0) {
                out.push(RatFunc::zero());
                continue;
            }
            let Some((n, d)) = rational_interpolate(&xs[..want], &ys) else {
                ok = false;
                break;
            };
            let stable = (want..want + CHECKS).all(|j| {
                let dv = poly_eval(&d, xs[j]);
                dv != 0 && modp::mul(poly_eval(&n, xs[j]), modp::inv(dv).unwrap()) == vals[j][i]
            });
            if !stable {
                ok = false;
                break;
            }
            match lift(&n, &d) {
                Some(r) => out.push(r),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Some(out);
        }
        if want >= max_points {
            return None;
        }
        want *= 2;
    }
}

/// Inverse of a square matrix modulo `P`.
pub fn inverse_mod(m: &[Vec<u64>]) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| a[r][c] != 0)?;
        a.swap(c, p);
        let iv = modp::inv(a[c][c]).unwrap();
        for x in a[c].iter_mut() {
            *x = modp::mul(*x, iv);
        }
        let prow = a[c].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == c || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&prow) {
                if y != 0 {
                    *x = modp::sub(*x, modp::mul(f, y));
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Integer-valued check used by tests: `x` modulo `P` as a signed value.
pub fn signed(x: u64) -> i64 {
    if x > P / 2 {
        -((P - x) as i64)
    } else {
        x as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::xi;

    #[test]
    fn rebuilds_rational_functions() {
        let targets = vec![
            RatFunc::u_pow(3).add_ref(&RatFunc::from_int(2)).checked_div(&xi(2)).unwrap(),
            RatFunc::u_pow(-5).scale_int(7),
            RatFunc::zero(),
            RatFunc::from_rational(&num_rational::BigRational::new(3.into(), 4.into())).mul_ref(&xi(1).pow(-3).unwrap()),
        ];
        let got = reconstruct(targets.len(), 256, |x| {
            targets.iter().map(|t| t.eval_mod(x)).collect::<Option<Vec<u64>>>()
        })
        .unwrap();
        assert_eq!(got, targets);
    }

    #[test]
    fn modular_inverse() {
        let m = vec![vec![2, 3], vec![5, 7]];
        let inv = inverse_mod(&m).unwrap();
        // 2*7 - 3*5 = -1
        assert_eq!(signed(inv[0][0]), -7);
        assert_eq!(signed(inv[1][1]), -2);
    }
}

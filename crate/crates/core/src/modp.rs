//! Arithmetic modulo the Mersenne prime `2^61 - 1`.
//!
//! Used to certify that determinants are nonzero: a polynomial whose image
//! at some point modulo a prime is nonzero is itself nonzero.

use num_bigint::{BigInt, Sign};
use num_traits::ToPrimitive;

pub const P: u64 = (1u64 << 61) - 1;

/// Evaluation points used for rank certificates.
pub const POINTS: [u64; 2] = [1_000_003_117, 2_305_843_009_213_693];

pub fn reduce128(x: u128) -> u64 {
    let lo = (x as u64) & P;
    let hi = (x >> 61) as u64;
    let mut r = lo + (hi & P) + ((x >> 122) as u64);
    while r >= P {
        r -= P;
    }
    r
}

pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

pub fn neg(a: u64) -> u64 {
    if a == 0 {
        0
    } else {
        P - a
    }
}

pub fn mul(a: u64, b: u64) -> u64 {
    reduce128(a as u128 * b as u128)
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64) -> Option<u64> {
    if a == 0 {
        None
    } else {
        Some(pow(a, P - 2))
    }
}

/// `a^k` for a signed exponent; `a` must be nonzero when `k < 0`.
pub fn pow_signed(a: u64, k: i64) -> u64 {
    if k >= 0 {
        pow(a, k as u64)
    } else {
        pow(inv(a).expect("negative power of zero"), k.unsigned_abs())
    }
}

pub fn from_i64(c: i64) -> u64 {
    if c >= 0 {
        (c as u64) % P
    } else {
        neg(c.unsigned_abs() % P)
    }
}

pub fn from_bigint(c: &BigInt) -> u64 {
    if let Some(v) = c.to_i64() {
        return from_i64(v);
    }
    let (sign, digits) = c.to_u64_digits();
    let mut acc = 0u64;
    // 2^64 = 2^3 * 2^61 = 8 (mod P)
    for d in digits.iter().rev() {
        acc = add(mul(acc, 8), reduce128(*d as u128));
    }
    if sign == Sign::Minus {
        neg(acc)
    } else {
        acc
    }
}

/// Rank of a dense matrix modulo `P` by Gaussian elimination.
pub fn rank(mut m: Vec<Vec<u64>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let iv = inv(m[r][c]).unwrap();
        for j in c..cols {
            m[r][j] = mul(m[r][j], iv);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in c..cols {
                    let t = mul(f, m[r][j]);
                    m[i][j] = sub(m[i][j], t);
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Greedy choice of a maximal set of linearly independent rows, scanning in
/// order.
pub fn independent_rows(m: &[Vec<u64>]) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in m.iter().enumerate() {
        let mut v = row.clone();
        for (pc, b) in &basis {
            if v[*pc] != 0 {
                let f = v[*pc];
                for j in 0..v.len() {
                    let t = mul(f, b[j]);
                    v[j] = sub(v[j], t);
                }
            }
        }
        if let Some(pc) = v.iter().position(|&x| x != 0) {
            let iv = inv(v[pc]).unwrap();
            for x in v.iter_mut() {
                *x = mul(*x, iv);
            }
            for (_, b) in basis.iter_mut() {
                if b[pc] != 0 {
                    let f = b[pc];
                    for j in 0..b.len() {
                        let t = mul(f, v[j]);
                        b[j] = sub(b[j], t);
                    }
                }
            }
            basis.push((pc, v));
            chosen.push(idx);
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bigint_reduction_matches_u128() {
        let x: u128 = 0xdead_beef_cafe_babe_1234_5678_9abc_def0;
        let b = BigInt::from(x);
        assert_eq!(from_bigint(&b), (x % P as u128) as u64);
        assert_eq!(from_bigint(&-b), neg((x % P as u128) as u64));
    }

    #[test]
    fn inverse_and_rank() {
        assert_eq!(mul(inv(12345).unwrap(), 12345), 1);
        assert_eq!(rank(vec![vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(independent_rows(&[vec![1, 2], vec![2, 4], vec![0, 1]]), vec![0, 2]);
    }
}

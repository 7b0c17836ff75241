//! Dense linear algebra over an abstract field.

use std::fmt::Debug;

use crate::modp;
use crate::scalar::RatFunc;

pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    /// Cost estimate used to prefer cheap pivots.
    fn size(&self) -> usize {
        1
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self.add_ref(o)
    }
    fn sub(&self, o: &Self) -> Self {
        self.sub_ref(o)
    }
    fn mul(&self, o: &Self) -> Self {
        self.mul_ref(o)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        RatFunc::inv(self).ok()
    }
    fn size(&self) -> usize {
        let n = self.numerator();
        let d = self.denominator();
        let bits = |c: &num_bigint::BigInt| c.bits() as usize + 1;
        n.terms().map(|(_, c)| bits(c)).sum::<usize>() + d.coeffs().iter().map(bits).sum::<usize>()
    }
}

/// An element of the prime field `Z / (2^61 - 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Fp(pub u64);

impl Field for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp(modp::add(self.0, o.0))
    }
    fn sub(&self, o: &Self) -> Self {
        Fp(modp::sub(self.0, o.0))
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(modp::mul(self.0, o.0))
    }
    fn neg(&self) -> Self {
        Fp(modp::neg(self.0))
    }
    fn inv(&self) -> Option<Self> {
        modp::inv(self.0).map(Fp)
    }
}

pub type Matrix<F> = Vec<Vec<F>>;

pub fn zeros<F: Field>(rows: usize, cols: usize) -> Matrix<F> {
    vec![vec![F::zero(); cols]; rows]
}

pub fn identity<F: Field>(n: usize) -> Matrix<F> {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = F::one();
    }
    m
}

pub fn mat_mul<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out: Matrix<F> = zeros(n, m);
    for i in 0..n {
        for (l, bl) in b.iter().enumerate() {
            let a_il = &a[i][l];
            if a_il.is_zero() {
                continue;
            }
            for j in 0..m {
                if !bl[j].is_zero() {
                    out[i][j] = out[i][j].add(&a_il.mul(&bl[j]));
                }
            }
        }
    }
    out
}

pub fn mat_vec<F: Field>(a: &Matrix<F>, v: &[F]) -> Vec<F> {
    a.iter()
        .map(|row| {
            row.iter().zip(v).fold(F::zero(), |acc, (x, y)| {
                if x.is_zero() || y.is_zero() {
                    acc
                } else {
                    acc.add(&x.mul(y))
                }
            })
        })
        .collect()
}

pub fn transpose<F: Field>(a: &Matrix<F>) -> Matrix<F> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// In-place reduced row echelon form; returns pivot columns. Among the rows
/// eligible for a column the cheapest nonzero entry is used as the pivot.
pub fn rref<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows).filter(|&i| !m[i][c].is_zero()).min_by_key(|&i| m[i][c].size());
        let Some(p) = best else { continue };
        m.swap(r, p);
        let iv = m[r][c].inv().expect("nonzero pivot");
        for j in c..cols {
            if !m[r][j].is_zero() {
                m[r][j] = m[r][j].mul(&iv);
            }
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..cols {
                if !prow[j].is_zero() {
                    row[j] = row[j].sub(&f.mul(&prow[j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut w = m.clone();
    rref(&mut w).len()
}

pub fn inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut aug: Matrix<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn determinant<F: Field>(m: &Matrix<F>) -> F {
    let n = m.len();
    let mut a = m.clone();
    let mut det = F::one();
    for c in 0..n {
        let best = (c..n).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].size());
        let Some(p) = best else { return F::zero() };
        if p != c {
            a.swap(p, c);
            det = det.neg();
        }
        det = det.mul(&a[c][c]);
        let iv = a[c][c].inv().unwrap();
        let prow = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].mul(&iv);
            for j in c..n {
                if !prow[j].is_zero() {
                    row[j] = row[j].sub(&f.mul(&prow[j]));
                }
            }
        }
    }
    det
}

/// Basis of `{v : m v = 0}`.
pub fn nullspace<F: Field>(m: &Matrix<F>, cols: usize) -> Vec<Vec<F>> {
    let mut w = m.clone();
    let piv = rref(&mut w);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![F::zero(); cols];
            v[fc] = F::one();
            for (r, &pc) in piv.iter().enumerate() {
                v[pc] = w[r][fc].neg();
            }
            v
        })
        .collect()
}

/// Solves `x m = b` for a row vector `x`, when `m` is square and invertible.
pub fn solve_left<F: Field>(m_inv: &Matrix<F>, b: &[F]) -> Vec<F> {
    let n = m_inv.len();
    (0..n)
        .map(|j| {
            b.iter().zip(m_inv.iter()).fold(F::zero(), |acc, (bi, row)| {
                if bi.is_zero() || row[j].is_zero() {
                    acc
                } else {
                    acc.add(&bi.mul(&row[j]))
                }
            })
        })
        .collect()
}

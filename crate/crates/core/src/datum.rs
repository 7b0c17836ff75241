//! Validated Borcherds-Cartan data with a sign coloring, and all lattice
//! arithmetic built on them.
//!
//! Vectors are dense and indexed by the ordered node list:
//! * a root `[n_1, .., n_r]` stands for `sum n_i alpha_i`;
//! * a coweight has length `2r`, the `h_i` coordinates followed by the `d_i`;
//! * a weight functional has length `2r`, the values `lambda(h_i)` followed by
//!   `lambda(d_i)`.

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Root = Vec<i64>;
pub type Coweight = Vec<i64>;
pub type Weight = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatumError {
    #[error("malformed datum: {0}")]
    Shape(String),
    #[error("diagonal entry a[{i}][{i}] = {value} must be 2 or non-positive")]
    Diagonal { i: usize, value: i64 },
    #[error("off-diagonal entry a[{i}][{j}] = {value} must be non-positive")]
    OffDiagonalPositive { i: usize, j: usize, value: i64 },
    #[error("a[{i}][{j}] = 0 but a[{j}][{i}] != 0")]
    ZeroPattern { i: usize, j: usize },
    #[error("symmetrizer entry s[{i}] = {value} must be positive")]
    Symmetrizer { i: usize, value: i64 },
    #[error("s[{i}] a[{i}][{j}] != s[{j}] a[{j}][{i}]: DA is not symmetric")]
    NotSymmetric { i: usize, j: usize },
    #[error("integrality: diagonal entry a[{i}][{i}] = {value} is odd")]
    OddDiagonal { i: usize, value: i64 },
    #[error("coloring entry theta[{i}][{j}] = {value} is not a sign")]
    ThetaNotSign { i: usize, j: usize, value: i64 },
    #[error("coloring: theta[{i}][{j}] theta[{j}][{i}] != 1")]
    ThetaNotUnimodular { i: usize, j: usize },
    #[error("colored condition: a[{i}][{i}] = 2 and theta[{i}][{i}] = -1 require a[{i}][{j}] = {value} to be even")]
    ColoredCondition { i: usize, j: usize, value: i64 },
    #[error("charge m[{i}] = {value} must be positive")]
    ChargeNonPositive { i: usize, value: i64 },
    #[error("real node {i} must have charge 1, found {value}")]
    RealCharge { i: usize, value: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("reflection in node {0} undefined: a[{0}][{0}] = 0")]
    IsotropicReflection(usize),
    #[error("reflection in node {0} leaves the lattice")]
    NonIntegralReflection(usize),
    #[error("datum is not of finite type")]
    NotFiniteType,
    #[error("2rho is not an integral combination of simple roots")]
    NonIntegralRho,
}

/// The on-disk datum document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumSpec {
    pub index: Vec<String>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
    pub s: Vec<i64>,
    pub m: Vec<i64>,
    pub theta: Vec<Vec<i64>>,
}

impl DatumSpec {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("datum serialization")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Datum {
    spec: DatumSpec,
    rank: usize,
    root_order: i64,
    /// `(node, copy)` for every generator letter, sorted.
    letters: Vec<(usize, usize)>,
}

impl Datum {
    pub fn new(spec: DatumSpec) -> Result<Self, DatumError> {
        validate(&spec)?;
        let rank = spec.index.len();
        let mut letters = Vec::new();
        for i in 0..rank {
            for k in 0..spec.m[i] as usize {
                letters.push((i, k));
            }
        }
        let mut d = Datum { spec, rank, root_order: 1, letters };
        d.root_order = d.compute_root_order();
        Ok(d)
    }

    pub fn from_json(text: &str) -> Result<Self, DatumError> {
        let spec = DatumSpec::from_json(text).map_err(|e| DatumError::Shape(e.to_string()))?;
        Datum::new(spec)
    }

    pub fn spec(&self) -> &DatumSpec {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn names(&self) -> &[String] {
        &self.spec.index
    }

    pub fn node_by_name(&self, name: &str) -> Option<usize> {
        self.spec.index.iter().position(|n| n == name)
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.spec.a[i][j]
    }

    pub fn s(&self, i: usize) -> i64 {
        self.spec.s[i]
    }

    pub fn charge(&self, i: usize) -> usize {
        self.spec.m[i] as usize
    }

    pub fn theta_ij(&self, i: usize, j: usize) -> i64 {
        self.spec.theta[i][j]
    }

    pub fn is_real(&self, i: usize) -> bool {
        self.a(i, i) == 2
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.theta_ij(i, i) == -1
    }

    /// Smallest `D > 0` with `D (h|h')/2` integral on basis coweights; `q = u^D`.
    pub fn root_order(&self) -> i64 {
        self.root_order
    }

    fn compute_root_order(&self) -> i64 {
        let r = self.rank;
        let mut d = 1i64;
        for a in 0..2 * r {
            for b in 0..2 * r {
                let v = self.basis_coweight_form(a, b) / 2;
                d = d.lcm(v.denom());
            }
        }
        d
    }

    /// `(b_a | b_b)` for basis coweights `b_0..b_{r-1} = h_i`, `b_r.. = d_i`.
    fn basis_coweight_form(&self, a: usize, b: usize) -> Rational64 {
        let r = self.rank;
        match (a < r, b < r) {
            (true, true) => Rational64::new(self.a(b, a), self.s(a)),
            (true, false) => {
                if b - r == a {
                    Rational64::new(1, self.s(a))
                } else {
                    Rational64::from(0)
                }
            }
            (false, true) => self.basis_coweight_form(b, a),
            (false, false) => Rational64::from(0),
        }
    }

    pub fn letters(&self) -> &[(usize, usize)] {
        &self.letters
    }

    pub fn letter_index(&self, node: usize, copy: usize) -> Option<usize> {
        self.letters.iter().position(|&l| l == (node, copy))
    }

    pub fn zero_root(&self) -> Root {
        vec![0; self.rank]
    }

    pub fn zero_coweight(&self) -> Coweight {
        vec![0; 2 * self.rank]
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut v = self.zero_root();
        v[i] = 1;
        v
    }

    pub fn height(beta: &[i64]) -> i64 {
        beta.iter().sum()
    }

    pub fn in_q_plus(beta: &[i64]) -> bool {
        beta.iter().all(|&c| c >= 0)
    }

    /// `(beta|gamma) = sum n_i k_j s_i a_ij`.
    pub fn root_form(&self, beta: &[i64], gamma: &[i64]) -> i64 {
        let mut acc = 0;
        for i in 0..self.rank {
            if beta[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                acc += beta[i] * gamma[j] * self.s(i) * self.a(i, j);
            }
        }
        acc
    }

    /// `(alpha_i|alpha_j)`.
    pub fn simple_form(&self, i: usize, j: usize) -> i64 {
        self.s(i) * self.a(i, j)
    }

    pub fn coweight_form(&self, h: &[i64], g: &[i64]) -> Rational64 {
        let mut acc = Rational64::from(0);
        for a in 0..2 * self.rank {
            if h[a] == 0 {
                continue;
            }
            for b in 0..2 * self.rank {
                if g[b] != 0 {
                    acc += self.basis_coweight_form(a, b) * (h[a] * g[b]);
                }
            }
        }
        acc
    }

    /// Exponent of `u` in `q^{(h|g)/2}`.
    pub fn half_coweight_form_u(&self, h: &[i64], g: &[i64]) -> i64 {
        let v = self.coweight_form(h, g) * self.root_order / 2;
        assert!(v.is_integer(), "root order does not clear the coweight form");
        v.to_integer()
    }

    /// `alpha_i(h)`.
    pub fn simple_eval(&self, i: usize, h: &[i64]) -> i64 {
        let mut acc = h[self.rank + i];
        for j in 0..self.rank {
            acc += h[j] * self.a(j, i);
        }
        acc
    }

    /// `beta(h)` for a root `beta`.
    pub fn root_eval(&self, beta: &[i64], h: &[i64]) -> i64 {
        (0..self.rank).filter(|&i| beta[i] != 0).map(|i| beta[i] * self.simple_eval(i, h)).sum()
    }

    /// `lambda(h)` for a weight functional.
    pub fn weight_eval(&self, lambda: &[i64], h: &[i64]) -> i64 {
        lambda.iter().zip(h).map(|(a, b)| a * b).sum()
    }

    /// The functional `h -> beta(h)`.
    pub fn root_to_weight(&self, beta: &[i64]) -> Weight {
        let r = self.rank;
        let mut w = vec![0; 2 * r];
        for j in 0..r {
            w[j] = (0..r).map(|i| beta[i] * self.a(j, i)).sum();
            w[r + j] = beta[j];
        }
        w
    }

    /// `h_beta = sum n_i s_i h_i`, so that `(h_beta|h) = beta(h)`.
    pub fn h_beta(&self, beta: &[i64]) -> Coweight {
        let mut h = self.zero_coweight();
        for i in 0..self.rank {
            h[i] = beta[i] * self.s(i);
        }
        h
    }

    /// Coweight of `K_i`.
    pub fn k_coweight(&self, i: usize) -> Coweight {
        self.h_beta(&self.simple_root(i))
    }

    /// `theta(beta, gamma) = prod theta_ij^{n_i k_j}`.
    pub fn theta(&self, beta: &[i64], gamma: &[i64]) -> i64 {
        let mut odd = 0i64;
        for i in 0..self.rank {
            if beta[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if self.theta_ij(i, j) == -1 {
                    odd += beta[i] * gamma[j];
                }
            }
        }
        if odd.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// Sign `theta(alpha_i, gamma)`.
    pub fn theta_node(&self, i: usize, gamma: &[i64]) -> i64 {
        let mut odd = 0;
        for j in 0..self.rank {
            if self.theta_ij(i, j) == -1 {
                odd += gamma[j];
            }
        }
        if odd.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// `(lambda|mu)` on the weight lattice, through the expansion of a weight in
    /// simple roots and fundamental weights.
    pub fn weight_form(&self, lambda: &[i64], mu: &[i64]) -> i64 {
        let r = self.rank;
        let split = |w: &[i64]| -> (Vec<i64>, Vec<i64>) {
            let root: Vec<i64> = w[r..].to_vec();
            let fund: Vec<i64> =
                (0..r).map(|i| w[i] - (0..r).map(|j| w[r + j] * self.a(i, j)).sum::<i64>()).collect();
            (root, fund)
        };
        let (lr, lf) = split(lambda);
        let (mr, mf) = split(mu);
        let mut acc = self.root_form(&lr, &mr);
        for i in 0..r {
            acc += lr[i] * mf[i] * self.s(i);
            acc += lf[i] * mr[i] * self.s(i);
        }
        acc
    }

    pub fn rho(&self) -> Weight {
        let mut w = vec![0; 2 * self.rank];
        for i in 0..self.rank {
            w[i] = self.a(i, i) / 2;
        }
        w
    }

    /// `r_i(lambda) = lambda - (2/a_ii) lambda(h_i) alpha_i`.
    pub fn reflect_weight(&self, i: usize, lambda: &[i64]) -> Result<Weight, LatticeError> {
        let aii = self.a(i, i);
        if aii == 0 {
            return Err(LatticeError::IsotropicReflection(i));
        }
        let num = 2 * lambda[i];
        if num % aii != 0 {
            return Err(LatticeError::NonIntegralReflection(i));
        }
        let c = num / aii;
        let ai = self.root_to_weight(&self.simple_root(i));
        Ok(lambda.iter().zip(&ai).map(|(l, a)| l - c * a).collect())
    }

    /// Reflection of a root, `r_i(beta) = beta - (2/a_ii) beta(h_i) alpha_i`.
    pub fn reflect_root(&self, i: usize, beta: &[i64]) -> Result<Root, LatticeError> {
        let w = self.reflect_weight(i, &self.root_to_weight(beta))?;
        Ok(w[self.rank..].to_vec())
    }

    /// `r_i(h) = h - (2/a_ii) alpha_i(h) h_i`.
    pub fn reflect_coweight(&self, i: usize, h: &[i64]) -> Result<Coweight, LatticeError> {
        let aii = self.a(i, i);
        if aii == 0 {
            return Err(LatticeError::IsotropicReflection(i));
        }
        let num = 2 * self.simple_eval(i, h);
        if num % aii != 0 {
            return Err(LatticeError::NonIntegralReflection(i));
        }
        let mut out = h.to_vec();
        out[i] -= num / aii;
        Ok(out)
    }

    /// Positive definiteness of the symmetrized matrix, by leading minors.
    pub fn is_finite_type(&self) -> bool {
        let r = self.rank;
        let m: Vec<Vec<Rational64>> =
            (0..r).map(|i| (0..r).map(|j| Rational64::from(self.simple_form(i, j))).collect()).collect();
        for k in 1..=r {
            let sub: Vec<Vec<Rational64>> = m[..k].iter().map(|row| row[..k].to_vec()).collect();
            if rational_det(sub) <= Rational64::from(0) {
                return false;
            }
        }
        true
    }

    /// Coordinates of `2 rho` in simple roots: the solution of `A c = diag(A)`.
    pub fn two_rho_in_q(&self) -> Result<Root, LatticeError> {
        if !self.is_finite_type() {
            return Err(LatticeError::NotFiniteType);
        }
        let r = self.rank;
        let a: Vec<Vec<Rational64>> =
            (0..r).map(|i| (0..r).map(|j| Rational64::from(self.a(i, j))).collect()).collect();
        let b: Vec<Rational64> = (0..r).map(|i| Rational64::from(self.a(i, i))).collect();
        let x = rational_solve(a, b).ok_or(LatticeError::NotFiniteType)?;
        x.into_iter()
            .map(|v| if v.is_integer() { Ok(v.to_integer()) } else { Err(LatticeError::NonIntegralRho) })
            .collect()
    }

    /// For a weight `mu`, the coweight `h` with `K_{2 mu} = q^h`, using
    /// `K_{alpha_i / s_i} = q^{h_i}`: solves `2 mu(h_j) = sum_i c_i a_ji / s_i`
    /// over integers. Returns `None` when `mu` is outside one half of the
    /// extended lattice. Only the `h`-values of `mu` enter; finite type is
    /// assumed so that these determine `mu` on the span of the `h_i`.
    pub fn double_weight_coweight(&self, mu: &[i64]) -> Option<Coweight> {
        let r = self.rank;
        let a: Vec<Vec<Rational64>> =
            (0..r).map(|j| (0..r).map(|i| Rational64::new(self.a(j, i), self.s(i))).collect()).collect();
        let b: Vec<Rational64> = (0..r).map(|j| Rational64::from(2 * mu[j])).collect();
        let c = rational_solve(a, b)?;
        let mut h = self.zero_coweight();
        for i in 0..r {
            if !c[i].is_integer() {
                return None;
            }
            h[i] = c[i].to_integer();
        }
        Some(h)
    }

    /// All roots in `Q+` of height exactly `n`.
    pub fn roots_of_height(&self, n: i64) -> Vec<Root> {
        fn rec(r: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Root>) {
            if cur.len() == r - 1 {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
                return;
            }
            for v in (0..=left).rev() {
                cur.push(v);
                rec(r, left - v, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(self.rank, n, &mut Vec::new(), &mut out);
        out
    }

    /// All roots in `Q+` of height at most `depth`, by height then
    /// lexicographically descending.
    pub fn roots_up_to(&self, depth: i64) -> Vec<Root> {
        (0..=depth).flat_map(|n| self.roots_of_height(n)).collect()
    }
}

fn rational_det(mut m: Vec<Vec<Rational64>>) -> Rational64 {
    let n = m.len();
    let mut det = Rational64::from(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| m[r][c] != Rational64::from(0)) else {
            return Rational64::from(0);
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            for k in c..n {
                let t = m[c][k] * f;
                m[r][k] -= t;
            }
        }
    }
    det
}

fn rational_solve(mut a: Vec<Vec<Rational64>>, mut b: Vec<Rational64>) -> Option<Vec<Rational64>> {
    let n = a.len();
    for c in 0..n {
        let p = (c..n).find(|&r| a[r][c] != Rational64::from(0))?;
        a.swap(p, c);
        b.swap(p, c);
        for r in 0..n {
            if r != c && a[r][c] != Rational64::from(0) {
                let f = a[r][c] / a[c][c];
                for k in c..n {
                    let t = a[c][k] * f;
                    a[r][k] -= t;
                }
                let t = b[c] * f;
                b[r] -= t;
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

pub fn validate(spec: &DatumSpec) -> Result<(), DatumError> {
    let r = spec.index.len();
    if r == 0 {
        return Err(DatumError::Shape("empty index list".into()));
    }
    let square = |m: &Vec<Vec<i64>>| m.len() == r && m.iter().all(|row| row.len() == r);
    if !square(&spec.a) || !square(&spec.theta) || spec.s.len() != r || spec.m.len() != r {
        return Err(DatumError::Shape(format!("all matrices must be {r}x{r} and vectors of length {r}")));
    }
    let mut names = spec.index.clone();
    names.sort();
    names.dedup();
    if names.len() != r {
        return Err(DatumError::Shape("duplicate index names".into()));
    }
    let a = &spec.a;
    for i in 0..r {
        if a[i][i] != 2 && a[i][i] > 0 {
            return Err(DatumError::Diagonal { i, value: a[i][i] });
        }
    }
    for i in 0..r {
        for j in 0..r {
            if i != j && a[i][j] > 0 {
                return Err(DatumError::OffDiagonalPositive { i, j, value: a[i][j] });
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            if (a[i][j] == 0) != (a[j][i] == 0) {
                let (i, j) = if a[i][j] == 0 { (i, j) } else { (j, i) };
                return Err(DatumError::ZeroPattern { i, j });
            }
        }
    }
    for i in 0..r {
        if spec.s[i] <= 0 {
            return Err(DatumError::Symmetrizer { i, value: spec.s[i] });
        }
    }
    for i in 0..r {
        for j in 0..r {
            if spec.s[i] * a[i][j] != spec.s[j] * a[j][i] {
                return Err(DatumError::NotSymmetric { i, j });
            }
        }
    }
    for i in 0..r {
        if a[i][i] % 2 != 0 {
            return Err(DatumError::OddDiagonal { i, value: a[i][i] });
        }
    }
    for i in 0..r {
        for j in 0..r {
            let t = spec.theta[i][j];
            if t != 1 && t != -1 {
                return Err(DatumError::ThetaNotSign { i, j, value: t });
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            if spec.theta[i][j] * spec.theta[j][i] != 1 {
                return Err(DatumError::ThetaNotUnimodular { i, j });
            }
        }
    }
    for i in 0..r {
        if a[i][i] == 2 && spec.theta[i][i] == -1 {
            for j in 0..r {
                if a[i][j] % 2 != 0 {
                    return Err(DatumError::ColoredCondition { i, j, value: a[i][j] });
                }
            }
        }
    }
    for i in 0..r {
        if spec.m[i] <= 0 {
            return Err(DatumError::ChargeNonPositive { i, value: spec.m[i] });
        }
        if a[i][i] == 2 && spec.m[i] != 1 {
            return Err(DatumError::RealCharge { i, value: spec.m[i] });
        }
    }
    Ok(())
}

/// The five reference data used throughout the tests and the CLI.
pub mod samples {
    use super::{Datum, DatumSpec};

    fn build(index: &[&str], a: Vec<Vec<i64>>, s: Vec<i64>, m: Vec<i64>, theta: Vec<Vec<i64>>) -> Datum {
        Datum::new(DatumSpec { index: index.iter().map(|s| s.to_string()).collect(), a, s, m, theta })
            .expect("sample datum is valid")
    }

    pub fn sl2() -> Datum {
        build(&["1"], vec![vec![2]], vec![1], vec![1], vec![vec![1]])
    }

    /// Rank one, real, odd.
    pub fn osp12() -> Datum {
        build(&["1"], vec![vec![2]], vec![1], vec![1], vec![vec![-1]])
    }

    pub fn a2() -> Datum {
        build(&["1", "2"], vec![vec![2, -1], vec![-1, 2]], vec![1, 1], vec![1, 1], vec![vec![1, 1], vec![1, 1]])
    }

    /// Rank one, isotropic, odd.
    pub fn isotropic_odd() -> Datum {
        build(&["1"], vec![vec![0]], vec![1], vec![1], vec![vec![-1]])
    }

    /// A real node joined to an imaginary node of charge two.
    pub fn borcherds_mixed() -> Datum {
        build(&["1", "2"], vec![vec![2, -1], vec![-1, -2]], vec![1, 1], vec![1, 2], vec![vec![1, 1], vec![1, 1]])
    }

    pub fn all() -> Vec<(&'static str, Datum)> {
        vec![
            ("sl2", sl2()),
            ("osp12", osp12()),
            ("a2", a2()),
            ("isotropic_odd", isotropic_odd()),
            ("borcherds_mixed", borcherds_mixed()),
        ]
    }

    pub fn by_name(name: &str) -> Option<Datum> {
        all().into_iter().find(|(n, _)| *n == name).map(|(_, d)| d)
    }
}

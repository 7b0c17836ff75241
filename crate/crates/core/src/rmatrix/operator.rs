//! `R = z^{-1} C` on tensor products of highest weight modules, where
//! `z(v (x) w) = q^{(wt v|wt w)} v (x) w`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use super::{quasi_r, quasi_r_inverse, RMatrixError, TruncatedQuasiR};
use crate::algebra::{Algebra, Elem, Mono, Tensor};
use crate::datum::{Datum, Root, Weight};
use crate::linalg::{self, Matrix};
use crate::module::HighestWeightModule;
use crate::scalar::RatFunc;

type Column = Vec<(usize, RatFunc)>;

/// The span of product basis vectors `v_1 (x) .. (x) v_n` whose depths add up
/// to at most `depth`. Operators that preserve total weight are exact on it;
/// components that leave it are dropped.
pub struct ProductModule<'m, 'a> {
    alg: &'a Algebra,
    factors: Vec<&'m HighestWeightModule<'a>>,
    depth: usize,
    /// Per factor: flattened basis `(beta, index)`.
    factor_basis: Vec<Vec<(Root, usize)>>,
    factor_index: Vec<HashMap<(Root, usize), usize>>,
    /// Product basis, as positions in the factor bases.
    basis: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    legs: Mutex<HashMap<(usize, Mono), Arc<Vec<Column>>>>,
}

impl<'m, 'a> ProductModule<'m, 'a> {
    pub fn new(factors: Vec<&'m HighestWeightModule<'a>>, depth: usize) -> Result<Self, RMatrixError> {
        let alg = factors[0].algebra();
        let mut factor_basis = Vec::new();
        let mut factor_index = Vec::new();
        for f in &factors {
            if depth > f.depth() && f.exhausted_at().is_none() {
                return Err(RMatrixError::FactorDepth { want: depth, have: f.depth() });
            }
            let top = depth.min(f.depth()) as i64;
            let mut b = Vec::new();
            for (beta, n) in f.dims() {
                if Datum::height(&beta) <= top {
                    b.extend((0..n).map(|k| (beta.clone(), k)));
                }
            }
            factor_index.push(b.iter().cloned().enumerate().map(|(p, key)| (key, p)).collect());
            factor_basis.push(b);
        }
        let mut basis: Vec<Vec<usize>> = vec![Vec::new()];
        for fb in &factor_basis {
            let mut next = Vec::new();
            for partial in &basis {
                let used: i64 = partial.iter().enumerate().map(|(k, &p)| Datum::height(&factor_basis[k][p].0)).sum();
                for (p, (beta, _)) in fb.iter().enumerate() {
                    if used + Datum::height(beta) <= depth as i64 {
                        let mut v = partial.clone();
                        v.push(p);
                        next.push(v);
                    }
                }
            }
            basis = next;
        }
        let index = basis.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        Ok(ProductModule { alg, factors, depth, factor_basis, factor_index, basis, index, legs: Mutex::default() })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Depth of each factor of basis vector `b`.
    pub fn basis_roots(&self, b: usize) -> Vec<Root> {
        self.basis[b].iter().enumerate().map(|(k, &p)| self.factor_basis[k][p].0.clone()).collect()
    }

    /// Sum of the factor depths of basis vector `b`.
    pub fn total_root(&self, b: usize) -> Root {
        let mut acc = self.alg.datum().zero_root();
        for r in self.basis_roots(b) {
            for (a, x) in acc.iter_mut().zip(r) {
                *a += x;
            }
        }
        acc
    }

    fn factor_weight(&self, k: usize, beta: &[i64]) -> Weight {
        let w = self.alg.datum().root_to_weight(beta);
        self.factors[k].lambda().iter().zip(w).map(|(l, x)| l - x).collect()
    }

    /// Matrix columns of a monomial acting on factor `k`.
    fn leg(&self, k: usize, m: &Mono) -> Result<Arc<Vec<Column>>, RMatrixError> {
        let key = (k, m.clone());
        if let Some(c) = self.legs.lock().unwrap().get(&key) {
            return Ok(c.clone());
        }
        let f = self.factors[k];
        let deg = self.alg.degree(m);
        let a = Elem::from_mono(m.clone(), RatFunc::one());
        let mut cols = Vec::with_capacity(self.factor_basis[k].len());
        for (beta, j) in &self.factor_basis[k] {
            let target: Root = beta.iter().zip(&deg).map(|(b, d)| b - d).collect();
            // beyond the factor's depth the module is either zero or
            // outside the product truncation
            if !Datum::in_q_plus(&target) || Datum::height(&target) > f.depth() as i64 {
                cols.push(Vec::new());
                continue;
            }
            let n = f.dim(beta)?;
            let mut v = vec![RatFunc::zero(); n];
            v[*j] = RatFunc::one();
            let mut col = Vec::new();
            if let Some(img) = f.apply(&a, beta, &v)?.remove(&target) {
                for (i, x) in img.into_iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    if let Some(&p) = self.factor_index[k].get(&(target.clone(), i)) {
                        col.push((p, x));
                    }
                }
            }
            cols.push(col);
        }
        let cols = Arc::new(cols);
        self.legs.lock().unwrap().insert(key, cols.clone());
        Ok(cols)
    }

    /// Colored action of a tensor whose legs sit at `positions`:
    /// `(x_1 (x) .. (x) x_n)(v_1 (x) .. (x) v_n) =
    /// prod_{i>j} theta(x_i, v_j) x_1 v_1 (x) .. (x) x_n v_n`.
    pub fn act(&self, t: &Tensor, positions: &[usize]) -> Result<Matrix<RatFunc>, RMatrixError> {
        let n = self.dim();
        let d = self.alg.datum();
        let mut out: Matrix<RatFunc> = linalg::zeros(n, n);
        for (legs, c) in t.iter() {
            let degs: Vec<Root> = legs.iter().map(|m| self.alg.degree(m)).collect();
            let leg_cols = legs.iter().zip(positions).map(|(m, &p)| self.leg(p, m)).collect::<Result<Vec<_>, _>>()?;
            for (src, b) in self.basis.iter().enumerate() {
                let mut sign = 1;
                for (i, &p) in positions.iter().enumerate() {
                    for j in 0..p {
                        sign *= d.theta(&degs[i], &self.factor_basis[j][b[j]].0);
                    }
                }
                let mut partial: Vec<(Vec<usize>, RatFunc)> = vec![(b.clone(), c.scale_int(sign))];
                for (i, &p) in positions.iter().enumerate() {
                    let mut next = Vec::new();
                    for (v, x) in &partial {
                        for (q, y) in &leg_cols[i][v[p]] {
                            let mut w = v.clone();
                            w[p] = *q;
                            next.push((w, x * y));
                        }
                    }
                    partial = next;
                    if partial.is_empty() {
                        break;
                    }
                }
                for (v, x) in partial {
                    if let Some(&row) = self.index.get(&v) {
                        out[row][src] += x;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Diagonal of `z_{ij}^{sign}`.
    fn zeta(&self, i: usize, j: usize, sign: i64) -> Vec<RatFunc> {
        let d = self.alg.datum();
        (0..self.dim())
            .map(|b| {
                let roots = self.basis_roots(b);
                let wi = self.factor_weight(i, &roots[i]);
                let wj = self.factor_weight(j, &roots[j]);
                self.alg.q(sign * d.weight_form(&wi, &wj))
            })
            .collect()
    }

    /// Heights of `C` that can act nontrivially with leg one on factor `i`.
    fn r_depth(&self, i: usize) -> usize {
        let top = self.factor_basis[i].iter().map(|(b, _)| Datum::height(b)).max().unwrap_or(0) as usize;
        top.min(self.depth)
    }

    /// `R_{ij} = z_{ij}^{-1} C_{ij}` for `i < j`.
    pub fn r_matrix(&self, i: usize, j: usize) -> Result<Matrix<RatFunc>, RMatrixError> {
        let c = quasi_r(self.alg, self.r_depth(i))?;
        self.r_matrix_with(&c, i, j)
    }

    fn r_matrix_with(&self, c: &TruncatedQuasiR, i: usize, j: usize) -> Result<Matrix<RatFunc>, RMatrixError> {
        let mut m = self.act(&c.total(), &[i, j])?;
        for (row, z) in m.iter_mut().zip(self.zeta(i, j, -1)) {
            for x in row.iter_mut() {
                *x = &*x * &z;
            }
        }
        Ok(m)
    }

    /// `R_{ij}^{-1} = C'_{ij} z_{ij}`.
    pub fn r_inverse(&self, i: usize, j: usize) -> Result<Matrix<RatFunc>, RMatrixError> {
        let cp = quasi_r_inverse(self.alg, self.r_depth(i))?;
        let mut m = self.act(&cp.total(), &[i, j])?;
        let z = self.zeta(i, j, 1);
        for row in m.iter_mut() {
            for (x, zc) in row.iter_mut().zip(&z) {
                *x = &*x * zc;
            }
        }
        Ok(m)
    }

    /// Basis vectors grouped by total weight.
    pub fn weight_blocks(&self) -> BTreeMap<Root, Vec<usize>> {
        let mut out: BTreeMap<Root, Vec<usize>> = BTreeMap::new();
        for b in 0..self.dim() {
            out.entry(self.total_root(b)).or_default().push(b);
        }
        out
    }
}

/// `R` on `V (x) W`, block diagonal by total weight.
pub struct ROperator {
    /// `(depth in V, basis index, depth in W, basis index)` per basis vector.
    pub basis: Vec<(Root, usize, Root, usize)>,
    pub matrix: Matrix<RatFunc>,
    /// Total depth of each block and its basis positions.
    pub blocks: BTreeMap<Root, Vec<usize>>,
}

impl ROperator {
    pub fn block(&self, total: &[i64]) -> Option<Matrix<RatFunc>> {
        let idx = self.blocks.get(total)?;
        Some(idx.iter().map(|&r| idx.iter().map(|&c| self.matrix[r][c].clone()).collect()).collect())
    }
}

pub fn r_operator(v: &HighestWeightModule, w: &HighestWeightModule, depth: usize) -> Result<ROperator, RMatrixError> {
    let p = ProductModule::new(vec![v, w], depth)?;
    let matrix = p.r_matrix(0, 1)?;
    let basis = (0..p.dim())
        .map(|b| {
            let (i, j) = (p.basis[b][0], p.basis[b][1]);
            let (bv, kv) = p.factor_basis[0][i].clone();
            let (bw, kw) = p.factor_basis[1][j].clone();
            (bv, kv, bw, kw)
        })
        .collect();
    Ok(ROperator { basis, matrix, blocks: p.weight_blocks() })
}

/// `R Delta(a) = Delta'(a) R` for every generator, compared on the vectors
/// of total depth below `depth` so that no image leaves the truncation.
pub fn check_intertwining(v: &HighestWeightModule, w: &HighestWeightModule, depth: usize) -> Result<bool, RMatrixError> {
    let p = ProductModule::new(vec![v, w], depth)?;
    let alg = p.alg;
    let r = p.r_matrix(0, 1)?;
    let cols: Vec<usize> = (0..p.dim()).filter(|&b| Datum::height(&p.total_root(b)) < depth as i64).collect();
    for (_, g) in alg.generator_elements() {
        let dg = alg.coproduct(&g)?;
        let lhs = linalg::mat_mul(&r, &p.act(&dg, &[0, 1])?);
        let rhs = linalg::mat_mul(&p.act(&alg.flip(&dg), &[0, 1])?, &r);
        for &c in &cols {
            if (0..p.dim()).any(|row| lhs[row][c] != rhs[row][c]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `R R^{-1} = R^{-1} R = 1` on the whole truncation.
pub fn check_r_invertible(v: &HighestWeightModule, w: &HighestWeightModule, depth: usize) -> Result<bool, RMatrixError> {
    let p = ProductModule::new(vec![v, w], depth)?;
    let r = p.r_matrix(0, 1)?;
    let ri = p.r_inverse(0, 1)?;
    let id = linalg::identity(p.dim());
    Ok(linalg::mat_mul(&r, &ri) == id && linalg::mat_mul(&ri, &r) == id)
}

/// `R_12 R_13 R_23 = R_23 R_13 R_12` on `V_1 (x) V_2 (x) V_3`.
pub fn ybe_check(
    v1: &HighestWeightModule,
    v2: &HighestWeightModule,
    v3: &HighestWeightModule,
    depth: usize,
) -> Result<bool, RMatrixError> {
    let p = ProductModule::new(vec![v1, v2, v3], depth)?;
    let r12 = p.r_matrix(0, 1)?;
    let r13 = p.r_matrix(0, 2)?;
    let r23 = p.r_matrix(1, 2)?;
    let lhs = linalg::mat_mul(&linalg::mat_mul(&r12, &r13), &r23);
    let rhs = linalg::mat_mul(&linalg::mat_mul(&r23, &r13), &r12);
    Ok(lhs == rhs)
}

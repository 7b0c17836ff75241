//! Highest weight modules truncated at a height bound: Verma modules over the
//! negative half and their irreducible quotients.
//!
//! The weight space of weight `lambda - beta` is indexed by `beta`. Verma
//! vectors are coordinate vectors over the f-pivot words of weight `beta`
//! applied to the highest weight vector. A quotient space carries a
//! projection from the Verma space and the Verma basis vectors chosen as its
//! basis.

mod character;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::algebra::{Algebra, Elem, Mono};
use crate::datum::{Datum, LatticeError, Root, Weight};
use crate::half::{DepthError, Word};
use crate::linalg::{self, Matrix};
use crate::scalar::RatFunc;

pub use character::{character_formula, numerator_terms, r_lambda, weyl_orbit, WeylElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error(transparent)]
    Depth(#[from] DepthError),
    #[error("weight is not dominant integral at node {node}")]
    NotDominant { node: usize },
    #[error("hypothesis violated at node {node}: {msg}")]
    Hypothesis { node: usize, msg: String },
    #[error("module has nonzero weight spaces at the depth bound {0}")]
    NotExhausted(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `lambda(h_i) >= 0` on real nodes, even on odd real nodes.
pub fn check_dominant(d: &Datum, lambda: &[i64]) -> Result<(), ModuleError> {
    for i in 0..d.rank() {
        if d.is_real(i) && (lambda[i] < 0 || (d.is_odd(i) && lambda[i] % 2 != 0)) {
            return Err(ModuleError::NotDominant { node: i });
        }
    }
    Ok(())
}

/// Columns of a linear map: `cols[j]` is the image of the `j`-th basis
/// vector.
type Columns = Vec<Vec<RatFunc>>;

struct Space {
    /// Verma basis: f-pivot words of this weight.
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    /// Rows of the projection onto the quotient.
    proj: Matrix<RatFunc>,
    /// Verma basis vectors forming the quotient basis.
    comp: Vec<usize>,
}

impl Space {
    fn verma_dim(&self) -> usize {
        self.words.len()
    }

    fn dim(&self) -> usize {
        self.comp.len()
    }

    fn project(&self, v: &[RatFunc]) -> Vec<RatFunc> {
        self.proj.iter().map(|row| dot(row, v)).collect()
    }

    fn lift(&self, v: &[RatFunc]) -> Vec<RatFunc> {
        let mut out = vec![RatFunc::zero(); self.verma_dim()];
        for (k, c) in self.comp.iter().zip(v) {
            out[*k] = c.clone();
        }
        out
    }
}

fn dot(a: &[RatFunc], b: &[RatFunc]) -> RatFunc {
    let mut acc = RatFunc::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

fn axpy(acc: &mut [RatFunc], c: &RatFunc, v: &[RatFunc]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

fn unit(n: usize, k: usize) -> Vec<RatFunc> {
    let mut v = vec![RatFunc::zero(); n];
    v[k] = RatFunc::one();
    v
}

pub struct HighestWeightModule<'a> {
    alg: &'a Algebra,
    lambda: Weight,
    depth: usize,
    irreducible: bool,
    spaces: BTreeMap<Root, Space>,
    e_maps: RwLock<HashMap<(u8, Root), Arc<Columns>>>,
}

impl<'a> HighestWeightModule<'a> {
    /// The Verma module, all weight spaces of height at most `depth`.
    pub fn verma(alg: &'a Algebra, lambda: &[i64], depth: usize) -> Result<Self, ModuleError> {
        let mut m = Self::skeleton(alg, lambda, depth, false)?;
        for sp in m.spaces.values_mut() {
            let n = sp.verma_dim();
            sp.proj = linalg::identity(n);
            sp.comp = (0..n).collect();
        }
        Ok(m)
    }

    /// The irreducible quotient. The maximal submodule is found weight by
    /// weight as the vectors whose images under every raising letter lie in
    /// the submodule one step up.
    pub fn irreducible(alg: &'a Algebra, lambda: &[i64], depth: usize) -> Result<Self, ModuleError> {
        check_dominant(alg.datum(), lambda)?;
        let mut m = Self::skeleton(alg, lambda, depth, true)?;
        let roots: Vec<Root> = m.spaces.keys().cloned().collect();
        let letters = alg.datum().letters().to_vec();
        for beta in roots {
            let n = m.spaces[&beta].verma_dim();
            if Datum::height(&beta) == 0 {
                let sp = m.spaces.get_mut(&beta).unwrap();
                sp.proj = linalg::identity(n);
                sp.comp = (0..n).collect();
                continue;
            }
            let mut stack: Matrix<RatFunc> = Vec::new();
            for (l, &(node, _)) in letters.iter().enumerate() {
                if beta[node] == 0 {
                    continue;
                }
                let mut lower = beta.clone();
                lower[node] -= 1;
                let cols = m.verma_e(l as u8, &beta)?;
                let low = &m.spaces[&lower];
                let images: Vec<Vec<RatFunc>> = cols.iter().map(|c| low.project(c)).collect();
                for r in 0..low.dim() {
                    stack.push(images.iter().map(|col| col[r].clone()).collect());
                }
            }
            let pivots = if stack.is_empty() { Vec::new() } else { linalg::rref(&mut stack) };
            stack.truncate(pivots.len());
            let sp = m.spaces.get_mut(&beta).unwrap();
            sp.proj = stack;
            sp.comp = pivots;
        }
        Ok(m)
    }

    fn skeleton(alg: &'a Algebra, lambda: &[i64], depth: usize, irreducible: bool) -> Result<Self, ModuleError> {
        let d = alg.datum();
        assert_eq!(lambda.len(), 2 * d.rank(), "weight has wrong length");
        if depth > alg.depth() {
            return Err(DepthError::DepthExceeded { height: depth as i64, depth: alg.depth() }.into());
        }
        let mut spaces = BTreeMap::new();
        for beta in d.roots_up_to(depth as i64) {
            let ws = alg.registry().space(&beta)?;
            let words: Vec<Word> = (0..ws.dim()).map(|k| ws.f_pivot_word(k)).collect();
            let index = words.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
            spaces.insert(beta, Space { words, index, proj: Vec::new(), comp: Vec::new() });
        }
        Ok(HighestWeightModule {
            alg,
            lambda: lambda.to_vec(),
            depth,
            irreducible,
            spaces,
            e_maps: RwLock::new(HashMap::new()),
        })
    }

    pub fn algebra(&self) -> &'a Algebra {
        self.alg
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn is_irreducible(&self) -> bool {
        self.irreducible
    }

    /// `dim V_{lambda - beta}`; zero outside `Q+`.
    pub fn dim(&self, beta: &[i64]) -> Result<usize, ModuleError> {
        if !Datum::in_q_plus(beta) {
            return Ok(0);
        }
        match self.spaces.get(beta) {
            Some(sp) => Ok(sp.dim()),
            None => Err(DepthError::DepthExceeded { height: Datum::height(beta), depth: self.depth }.into()),
        }
    }

    pub fn dims(&self) -> BTreeMap<Root, usize> {
        self.spaces.iter().map(|(b, sp)| (b.clone(), sp.dim())).collect()
    }

    /// The f-words whose images of the highest weight vector form the basis
    /// of the weight space.
    pub fn basis_words(&self, beta: &[i64]) -> Vec<Word> {
        let sp = &self.spaces[beta];
        sp.comp.iter().map(|&k| sp.words[k].clone()).collect()
    }

    /// A raising letter on the Verma space of `beta`, as columns over the
    /// Verma space of `beta - alpha`.
    fn verma_e(&self, letter: u8, beta: &Root) -> Result<Arc<Columns>, ModuleError> {
        let key = (letter, beta.clone());
        if let Some(c) = self.e_maps.read().unwrap().get(&key) {
            return Ok(c.clone());
        }
        let d = self.alg.datum();
        let node = self.alg.registry().node(letter);
        let mut lower = beta.clone();
        lower[node] -= 1;
        let low = &self.spaces[&lower];
        let e = Elem::from_mono(Mono { y: Vec::new(), h: d.zero_coweight(), x: vec![letter] }, RatFunc::one());
        let mut cols = Vec::new();
        for w in &self.spaces[beta].words {
            let y = Elem::from_mono(Mono { y: w.clone(), h: d.zero_coweight(), x: Vec::new() }, RatFunc::one());
            let mut col = vec![RatFunc::zero(); low.verma_dim()];
            for (m, c) in self.alg.mul(&e, &y)?.iter() {
                if !m.x.is_empty() {
                    continue;
                }
                let k = low.index[&m.y];
                col[k] += c * &self.alg.q(d.weight_eval(&self.lambda, &m.h));
            }
            cols.push(col);
        }
        let cols = Arc::new(cols);
        self.e_maps.write().unwrap().insert(key, cols.clone());
        Ok(cols)
    }

    /// `f_letter` applied to a Verma vector of weight `beta`.
    fn verma_f_apply(&self, letter: u8, beta: &Root, v: &[RatFunc]) -> Result<(Root, Vec<RatFunc>), ModuleError> {
        let node = self.alg.registry().node(letter);
        let mut upper = beta.clone();
        upper[node] += 1;
        let up = self
            .spaces
            .get(&upper)
            .ok_or(DepthError::DepthExceeded { height: Datum::height(&upper), depth: self.depth })?;
        let src = &self.spaces[beta];
        let mut out = vec![RatFunc::zero(); up.verma_dim()];
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut w = vec![letter];
            w.extend_from_slice(&src.words[j]);
            // the Verma basis is the pivot order of the registry
            for (k, ck) in self.alg.registry().f_coords(&w)?.iter() {
                out[*k] += c * ck;
            }
        }
        Ok((upper, out))
    }

    /// A normal-form element applied to a Verma vector of weight `beta`,
    /// split by target weight.
    fn verma_apply(&self, a: &Elem, beta: &Root, v: &[RatFunc]) -> Result<BTreeMap<Root, Vec<RatFunc>>, ModuleError> {
        let d = self.alg.datum();
        let mut out: BTreeMap<Root, Vec<RatFunc>> = BTreeMap::new();
        'terms: for (m, c) in a.iter() {
            let mut wt = beta.clone();
            let mut cur = v.to_vec();
            for &l in m.x.iter().rev() {
                let node = self.alg.registry().node(l);
                if wt[node] == 0 {
                    continue 'terms;
                }
                let cols = self.verma_e(l, &wt)?;
                wt[node] -= 1;
                let mut next = vec![RatFunc::zero(); self.spaces[&wt].verma_dim()];
                for (col, x) in cols.iter().zip(&cur) {
                    axpy(&mut next, x, col);
                }
                cur = next;
            }
            // q^h on the weight lambda - wt
            let e = d.weight_eval(&self.lambda, &m.h) - d.root_eval(&wt, &m.h);
            let s = c * &self.alg.q(e);
            for &l in m.y.iter().rev() {
                let (up, next) = self.verma_f_apply(l, &wt, &cur)?;
                wt = up;
                cur = next;
            }
            let n = cur.len();
            let slot = out.entry(wt).or_insert_with(|| vec![RatFunc::zero(); n]);
            axpy(slot, &s, &cur);
        }
        Ok(out)
    }

    /// `a` applied to a vector of the module's weight space `beta`, given in
    /// the module basis. Images are split by target weight.
    pub fn apply(&self, a: &Elem, beta: &[i64], v: &[RatFunc]) -> Result<BTreeMap<Root, Vec<RatFunc>>, ModuleError> {
        let beta = beta.to_vec();
        let sp = self.spaces.get(&beta).ok_or(DepthError::DepthExceeded {
            height: Datum::height(&beta),
            depth: self.depth,
        })?;
        let image = self.verma_apply(a, &beta, &sp.lift(v))?;
        Ok(image
            .into_iter()
            .map(|(b, w)| {
                let p = self.spaces[&b].project(&w);
                (b, p)
            })
            .filter(|(_, w)| w.iter().any(|x| !x.is_zero()))
            .collect())
    }

    /// Matrix (rows over the target basis) of the component of `a` mapping
    /// weight `beta` to weight `target`.
    pub fn action_matrix(&self, a: &Elem, beta: &[i64], target: &[i64]) -> Result<Matrix<RatFunc>, ModuleError> {
        let n = self.dim(beta)?;
        let m = self.dim(target)?;
        let mut rows: Matrix<RatFunc> = linalg::zeros(m, n);
        for j in 0..n {
            if let Some(col) = self.apply(a, beta, &unit(n, j))?.remove(target) {
                for (i, x) in col.into_iter().enumerate() {
                    rows[i][j] = x;
                }
            }
        }
        Ok(rows)
    }

    /// Checks `rho(a) rho(b) = rho(ab)` for every ordered pair of generators
    /// on every weight space where both sides stay inside the truncation.
    pub fn check_relations(&self) -> Result<bool, ModuleError> {
        let gens = self.alg.generator_elements();
        for (_, a) in &gens {
            for (_, b) in &gens {
                let ab = self.alg.mul(a, b)?;
                for (beta, sp) in &self.spaces {
                    if Datum::height(beta) + 2 > self.depth as i64 {
                        continue;
                    }
                    for j in 0..sp.dim() {
                        let v = unit(sp.dim(), j);
                        let mut lhs: BTreeMap<Root, Vec<RatFunc>> = BTreeMap::new();
                        for (w, bv) in self.apply(b, beta, &v)? {
                            for (t, x) in self.apply(a, &w, &bv)? {
                                let n = x.len();
                                let slot = lhs.entry(t).or_insert_with(|| vec![RatFunc::zero(); n]);
                                axpy(slot, &RatFunc::one(), &x);
                            }
                        }
                        lhs.retain(|_, x| x.iter().any(|c| !c.is_zero()));
                        if lhs != self.apply(&ab, beta, &v)? {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    /// Nonzero vectors of weight `beta` killed by every raising letter.
    pub fn singular_vectors(&self, beta: &[i64]) -> Result<Vec<Vec<RatFunc>>, ModuleError> {
        let n = self.dim(beta)?;
        let mut stack: Matrix<RatFunc> = Vec::new();
        for (i, k) in self.alg.generators() {
            if beta[i] == 0 {
                continue;
            }
            let mut lower = beta.to_vec();
            lower[i] -= 1;
            stack.extend(self.action_matrix(&self.alg.e(i, k), beta, &lower)?);
        }
        if stack.is_empty() {
            return Ok((0..n).map(|j| unit(n, j)).collect());
        }
        Ok(linalg::nullspace(&stack, n))
    }

    /// Smallest height whose weight spaces all vanish, if any within depth.
    pub fn exhausted_at(&self) -> Option<usize> {
        (0..=self.depth).find(|&h| self.spaces.iter().filter(|(b, _)| Datum::height(b) == h as i64).all(|(_, s)| s.dim() == 0))
    }

    /// `sum_beta theta(beta, beta) tr(a on V_{lambda - beta})`.
    pub fn supertrace(&self, a: &Elem) -> Result<RatFunc, ModuleError> {
        let top = self.exhausted_at().ok_or(ModuleError::NotExhausted(self.depth))?;
        let d = self.alg.datum();
        // only weight-preserving terms contribute
        let mut diag = Elem::zero();
        for (m, c) in a.iter() {
            if self.alg.word_weight(&m.x) == self.alg.word_weight(&m.y) {
                diag.add_term(m.clone(), c.clone());
            }
        }
        let mut acc = RatFunc::zero();
        for (beta, sp) in &self.spaces {
            if Datum::height(beta) >= top as i64 {
                continue;
            }
            let mut tr = RatFunc::zero();
            for j in 0..sp.dim() {
                if let Some(col) = self.apply(&diag, beta, &unit(sp.dim(), j))?.get(beta) {
                    tr += &col[j];
                }
            }
            acc += tr.scale_int(d.theta(beta, beta));
        }
        Ok(acc)
    }
}

/// Whether `u -> u v_lambda` is injective on the negative half of weight
/// `-gamma`, under the hypotheses that make it an isomorphism.
pub fn check_uv_iso(alg: &Algebra, lambda: &[i64], gamma: &[i64]) -> Result<bool, ModuleError> {
    let d = alg.datum();
    check_dominant(d, lambda)?;
    for i in 0..d.rank() {
        if !d.is_real(i) && lambda[i] <= 0 {
            return Err(ModuleError::Hypothesis { node: i, msg: format!("lambda(h_i) = {} is not positive", lambda[i]) });
        }
        if d.is_real(i) && lambda[i] < gamma[i] {
            return Err(ModuleError::Hypothesis {
                node: i,
                msg: format!("lambda(h_i) = {} is below the multiplicity {}", lambda[i], gamma[i]),
            });
        }
    }
    let depth = Datum::height(gamma) as usize;
    let v = HighestWeightModule::irreducible(alg, lambda, depth)?;
    Ok(v.dim(gamma)? == alg.registry().dim(gamma)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::samples;

    fn weight(d: &Datum, h: &[i64]) -> Weight {
        let mut w = vec![0; 2 * d.rank()];
        w[..h.len()].copy_from_slice(h);
        w
    }

    #[test]
    fn sl2_two_dimensional() {
        let alg = Algebra::new(samples::sl2(), 4);
        let v = HighestWeightModule::irreducible(&alg, &weight(alg.datum(), &[1]), 4).unwrap();
        let dims: Vec<usize> = (0..=4).map(|n| v.dim(&[n]).unwrap()).collect();
        assert_eq!(dims, vec![1, 1, 0, 0, 0]);
        assert!(v.check_relations().unwrap());
    }

    #[test]
    fn osp12_three_dimensional() {
        let alg = Algebra::new(samples::osp12(), 4);
        let v = HighestWeightModule::irreducible(&alg, &weight(alg.datum(), &[2]), 4).unwrap();
        let dims: Vec<usize> = (0..=4).map(|n| v.dim(&[n]).unwrap()).collect();
        assert_eq!(dims, vec![1, 1, 1, 0, 0]);
        assert_eq!(v.supertrace(&alg.one()).unwrap(), RatFunc::one());
    }

    #[test]
    fn zero_weight_is_trivial() {
        let alg = Algebra::new(samples::a2(), 3);
        let v = HighestWeightModule::irreducible(&alg, &weight(alg.datum(), &[0, 0]), 3).unwrap();
        assert_eq!(v.dims().values().sum::<usize>(), 1);
    }

    #[test]
    fn verma_matches_negative_half() {
        let alg = Algebra::new(samples::borcherds_mixed(), 3);
        let m = HighestWeightModule::verma(&alg, &weight(alg.datum(), &[1, 1]), 3).unwrap();
        for (beta, n) in m.dims() {
            assert_eq!(n, alg.registry().dim(&beta).unwrap());
        }
        let e = alg.e(1, 1);
        assert!(m.apply(&e, &[0, 0], &[RatFunc::one()]).unwrap().is_empty());
    }

    #[test]
    fn rejects_non_dominant() {
        let alg = Algebra::new(samples::osp12(), 2);
        assert_eq!(
            HighestWeightModule::irreducible(&alg, &weight(alg.datum(), &[1]), 2).err(),
            Some(ModuleError::NotDominant { node: 0 })
        );
    }
}

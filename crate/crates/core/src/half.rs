//! The positive and negative halves realized as free words modulo the radical
//! of the pairing between them.
//!
//! An e-word `[l_1, .., l_n]` is the product `e_{l_1} .. e_{l_n}` and an f-word
//! is `f_{l_1} .. f_{l_n}`, letters being indices into [`Datum::letters`].
//! For each weight the registry keeps every word, the Gram matrix of the
//! pairing between e-words (rows) and letter-reversed f-words (columns), a set
//! of pivot words spanning each half and the coordinate maps onto them.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use thiserror::Error;

use crate::datum::{Datum, Root};
use crate::linalg::{self, Matrix};
use crate::modp;
use crate::recon;
use crate::scalar::{super_binomial, xi, IntPoly, LaurentPoly, RatFunc};

pub type Word = Vec<u8>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DepthError {
    #[error("weight of height {height} exceeds the depth bound {depth}")]
    DepthExceeded { height: i64, depth: usize },
}

/// A linear combination of words, all on one side and of one weight.
pub type HalfElement = Vec<(Word, RatFunc)>;

/// Words of one weight sharing a letter content. The pairing vanishes
/// between different contents, so each block is handled on its own.
pub struct Block {
    /// Word indices, ascending.
    pub members: Vec<usize>,
    /// Positions in `e_pivots` / `f_pivots` owned by this block.
    pub e_piv: Vec<usize>,
    pub f_piv: Vec<usize>,
    /// Evaluation point and the nonzero value of the block determinant there.
    pub certificate: Option<(u64, u64)>,
    inverse: OnceLock<Matrix<RatFunc>>,
    e_coords: OnceLock<CoordMap>,
    f_coords: OnceLock<CoordMap>,
}

type CoordMap = HashMap<usize, Arc<Vec<(usize, RatFunc)>>>;

/// One weight space of the free half together with its quotient data.
pub struct WeightSpace {
    pub weight: Root,
    pub words: Vec<Word>,
    pub index: HashMap<Word, usize>,
    /// `gram[r][c]` is `scale * (words[r] | reversed f-word of words[c])`.
    pub gram: Vec<Vec<LaurentPoly>>,
    /// `prod (-xi_i)^{n_i}`; dividing `gram` by it gives the pairing.
    pub scale: RatFunc,
    /// Rows (e-words) forming a basis of the positive half, ascending.
    pub e_pivots: Vec<usize>,
    /// Columns whose reversed f-words form a basis of the negative half.
    pub f_pivots: Vec<usize>,
    pub blocks: Vec<Block>,
    /// Block of each word.
    pub block_of: Vec<usize>,
}

impl WeightSpace {
    pub fn dim(&self) -> usize {
        self.e_pivots.len()
    }

    pub fn is_free(&self) -> bool {
        self.e_pivots.len() == self.words.len()
    }

    pub fn e_pivot_word(&self, k: usize) -> &Word {
        &self.words[self.e_pivots[k]]
    }

    /// The f-word of the `k`-th negative basis element.
    pub fn f_pivot_word(&self, k: usize) -> Word {
        reversed(&self.words[self.f_pivots[k]])
    }

    fn gram_rf(&self, r: usize, c: usize) -> RatFunc {
        RatFunc::from_laurent(self.gram[r][c].clone())
    }

    fn block_matrix(&self, b: &Block) -> Matrix<RatFunc> {
        b.e_piv
            .iter()
            .map(|&k| b.f_piv.iter().map(|&l| self.gram_rf(self.e_pivots[k], self.f_pivots[l])).collect())
            .collect()
    }

    fn block_inverse<'a>(&self, b: &'a Block) -> &'a Matrix<RatFunc> {
        b.inverse.get_or_init(|| linalg::inverse(&self.block_matrix(b)).expect("pivot Gram block certified invertible"))
    }

    /// Scaled Gram matrix between the pivot bases.
    pub fn pivot_block(&self) -> Matrix<RatFunc> {
        self.e_pivots.iter().map(|&r| self.f_pivots.iter().map(|&c| self.gram_rf(r, c)).collect()).collect()
    }

    /// Pairing matrix `(b_r | y_c)` between the pivot bases (unscaled).
    pub fn pivot_pairing(&self) -> Matrix<RatFunc> {
        let inv_scale = self.scale.inv().unwrap();
        self.pivot_block().into_iter().map(|row| row.into_iter().map(|x| x * &inv_scale).collect()).collect()
    }

    /// Inverse of [`Self::pivot_pairing`], assembled from the blocks.
    pub fn pivot_pairing_inverse(&self) -> Matrix<RatFunc> {
        let n = self.dim();
        let mut out: Matrix<RatFunc> = linalg::zeros(n, n);
        for b in &self.blocks {
            let inv = self.block_inverse(b);
            for (i, &l) in b.f_piv.iter().enumerate() {
                for (j, &k) in b.e_piv.iter().enumerate() {
                    out[l][k] = &inv[i][j] * &self.scale;
                }
            }
        }
        out
    }

    /// Coordinates of the e-word in row `r` on the positive basis.
    pub fn e_coords_row(&self, r: usize) -> Arc<Vec<(usize, RatFunc)>> {
        if let Ok(k) = self.e_pivots.binary_search(&r) {
            return Arc::new(vec![(k, RatFunc::one())]);
        }
        let b = &self.blocks[self.block_of[r]];
        b.e_coords.get_or_init(|| self.solve_block(b, Side::E))[&r].clone()
    }

    /// Coordinates of the reversed f-word of column `c` on the negative basis.
    pub fn f_coords_col(&self, c: usize) -> Arc<Vec<(usize, RatFunc)>> {
        if let Ok(k) = self.f_pivots.binary_search(&c) {
            return Arc::new(vec![(k, RatFunc::one())]);
        }
        let b = &self.blocks[self.block_of[c]];
        b.f_coords.get_or_init(|| self.solve_block(b, Side::F))[&c].clone()
    }

    /// Entry of the Gram matrix with the roles of rows and columns swapped
    /// for the f side.
    fn oriented(&self, side: Side, a: usize, b: usize) -> &LaurentPoly {
        match side {
            Side::E => &self.gram[a][b],
            Side::F => &self.gram[b][a],
        }
    }

    /// Coordinates of every non-pivot word of a block on one side. The
    /// system is solved modulo the prime at many points and reconstructed;
    /// each candidate is then checked exactly against all block members,
    /// falling back to exact elimination when reconstruction does not
    /// produce a verified answer.
    fn solve_block(&self, b: &Block, side: Side) -> CoordMap {
        let (own, other, own_piv, other_piv) = match side {
            Side::E => (&self.e_pivots, &self.f_pivots, &b.e_piv, &b.f_piv),
            Side::F => (&self.f_pivots, &self.e_pivots, &b.f_piv, &b.e_piv),
        };
        let targets: Vec<usize> = b.members.iter().copied().filter(|m| own.binary_search(m).is_err()).collect();
        let mut out = HashMap::new();
        if targets.is_empty() {
            return out;
        }
        let n = own_piv.len();
        // square block oriented as (own pivot, other pivot)
        let block_at = |x: u64| -> Vec<Vec<u64>> {
            own_piv
                .iter()
                .map(|&k| other_piv.iter().map(|&l| self.oriented(side, own[k], other[l]).eval_mod(x)).collect())
                .collect()
        };
        let solved = if n == 0 {
            Some(Vec::new())
        } else {
            recon::reconstruct(targets.len() * n, RECON_POINTS, |x| {
                // rows a_t with a_t B = g_t, i.e. a_t = g_t B^{-1}
                let inv = recon::inverse_mod(&block_at(x))?;
                let mut v = Vec::with_capacity(targets.len() * n);
                for &t in &targets {
                    let g: Vec<u64> =
                        other_piv.iter().map(|&l| self.oriented(side, t, other[l]).eval_mod(x)).collect();
                    for j in 0..n {
                        let mut acc = 0u64;
                        for (i, gi) in g.iter().enumerate() {
                            acc = modp::add(acc, modp::mul(*gi, inv[i][j]));
                        }
                        v.push(acc);
                    }
                }
                Some(v)
            })
        };
        for (ti, &t) in targets.iter().enumerate() {
            let candidate = solved.as_ref().map(|v| v[ti * n..(ti + 1) * n].to_vec());
            let coords = match candidate {
                Some(a) if self.combination_holds(b, side, t, &a) => a,
                _ => {
                    let a = self.exact_coords(b, side, t);
                    assert!(
                        self.combination_holds(b, side, t, &a),
                        "rank certificate failed: word outside the span of the pivot words"
                    );
                    a
                }
            };
            let v: Vec<(usize, RatFunc)> =
                coords.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (own_piv[i], x)).collect();
            out.insert(t, Arc::new(v));
        }
        out
    }

    fn exact_coords(&self, b: &Block, side: Side, t: usize) -> Vec<RatFunc> {
        let inv = self.block_inverse(b);
        match side {
            Side::E => {
                let g: Vec<RatFunc> = b.f_piv.iter().map(|&l| self.gram_rf(t, self.f_pivots[l])).collect();
                linalg::solve_left(inv, &g)
            }
            Side::F => {
                let g: Vec<RatFunc> = b.e_piv.iter().map(|&k| self.gram_rf(self.e_pivots[k], t)).collect();
                linalg::mat_vec(inv, &g)
            }
        }
    }

    /// Exact check that `sum a_i * (pivot_i row) == (row t)` over every
    /// block member, after clearing denominators.
    fn combination_holds(&self, b: &Block, side: Side, t: usize, a: &[RatFunc]) -> bool {
        let own = match side {
            Side::E => &self.e_pivots,
            Side::F => &self.f_pivots,
        };
        let own_piv = match side {
            Side::E => &b.e_piv,
            Side::F => &b.f_piv,
        };
        let mut common = IntPoly::one();
        for x in a {
            let d = x.denominator();
            if !d.is_one() {
                let g = common.gcd(d);
                common = common.mul(&d.div_exact(&g));
            }
        }
        let cleared: Vec<LaurentPoly> = a
            .iter()
            .map(|x| {
                let k = common.div_exact(x.denominator());
                x.numerator().mul(&LaurentPoly::from_poly(0, k))
            })
            .collect();
        let common = LaurentPoly::from_poly(0, common);
        b.members.iter().all(|&m| {
            let mut acc = LaurentPoly::zero();
            for (i, ci) in cleared.iter().enumerate() {
                if !ci.is_zero() {
                    acc = acc.add(&ci.mul(self.oriented(side, own[own_piv[i]], m)));
                }
            }
            acc == common.mul(self.oriented(side, t, m))
        })
    }
}

#[derive(Clone, Copy)]
enum Side {
    E,
    F,
}

/// Sample cap for reconstructing coordinates before falling back to exact
/// elimination.
const RECON_POINTS: usize = 1024;

pub fn reversed(w: &[u8]) -> Word {
    w.iter().rev().copied().collect()
}

pub struct Registry {
    datum: Datum,
    depth: usize,
    spaces: RwLock<HashMap<Root, Arc<WeightSpace>>>,
}

impl Registry {
    pub fn new(datum: Datum, depth: usize) -> Self {
        Registry { datum, depth, spaces: RwLock::new(HashMap::new()) }
    }

    pub fn datum(&self) -> &Datum {
        &self.datum
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn node(&self, letter: u8) -> usize {
        self.datum.letters()[letter as usize].0
    }

    pub fn word_weight(&self, w: &[u8]) -> Root {
        let mut r = self.datum.zero_root();
        for &l in w {
            r[self.node(l)] += 1;
        }
        r
    }

    /// `q^k` as a power of `u`.
    pub fn q(&self, k: i64) -> RatFunc {
        RatFunc::u_pow(k * self.datum.root_order())
    }

    /// `xi_i = q_i - q_i^{-1}`.
    pub fn xi(&self, i: usize) -> RatFunc {
        xi(self.datum.root_order() * self.datum.s(i))
    }

    fn check_depth(&self, beta: &[i64]) -> Result<(), DepthError> {
        let h = Datum::height(beta);
        if h > self.depth as i64 {
            return Err(DepthError::DepthExceeded { height: h, depth: self.depth });
        }
        Ok(())
    }

    /// All words of weight `beta`, lexicographic in letter indices.
    pub fn words_of_weight(&self, beta: &[i64]) -> Vec<Word> {
        fn rec(reg: &Registry, left: &mut Vec<i64>, cur: &mut Word, out: &mut Vec<Word>) {
            if left.iter().all(|&c| c == 0) {
                out.push(cur.clone());
                return;
            }
            for (l, &(node, _)) in reg.datum.letters().iter().enumerate() {
                if left[node] > 0 {
                    left[node] -= 1;
                    cur.push(l as u8);
                    rec(reg, left, cur, out);
                    cur.pop();
                    left[node] += 1;
                }
            }
        }
        let mut out = Vec::new();
        rec(self, &mut beta.to_vec(), &mut Vec::new(), &mut out);
        out
    }

    pub fn space(&self, beta: &[i64]) -> Result<Arc<WeightSpace>, DepthError> {
        self.check_depth(beta)?;
        if let Some(s) = self.spaces.read().unwrap().get(beta) {
            return Ok(s.clone());
        }
        let built = Arc::new(self.build_space(beta)?);
        let mut w = self.spaces.write().unwrap();
        Ok(w.entry(beta.to_vec()).or_insert(built).clone())
    }

    fn build_space(&self, beta: &[i64]) -> Result<WeightSpace, DepthError> {
        let d = &self.datum;
        let words = self.words_of_weight(beta);
        let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let n = words.len();
        let mut scale = RatFunc::one();
        for i in 0..d.rank() {
            for _ in 0..beta[i] {
                scale = scale * (-self.xi(i));
            }
        }
        let gram = if Datum::height(beta) == 0 {
            vec![vec![LaurentPoly::one()]]
        } else {
            let mut lower: HashMap<usize, Arc<WeightSpace>> = HashMap::new();
            for node in 0..d.rank() {
                if beta[node] > 0 {
                    let mut b = beta.to_vec();
                    b[node] -= 1;
                    lower.insert(node, self.space(&b)?);
                }
            }
            let mut g = vec![vec![LaurentPoly::zero(); n]; n];
            for (c, wc) in words.iter().enumerate() {
                // the reversed f-word starts with the last letter of wc
                let j = *wc.last().unwrap();
                let jn = self.node(j);
                let low = &lower[&jn];
                let rest_col = low.index[&wc[..wc.len() - 1]];
                let mut beta_minus = beta.to_vec();
                beta_minus[jn] -= 1;
                let tail_sign = d.theta_node(jn, &beta_minus);
                for (r, wr) in words.iter().enumerate() {
                    let mut acc = LaurentPoly::zero();
                    let mut before = d.zero_root();
                    for (p, &l) in wr.iter().enumerate() {
                        if l == j {
                            let mut rest: Word = wr[..p].to_vec();
                            rest.extend_from_slice(&wr[p + 1..]);
                            let sub = &low.gram[low.index[&rest]][rest_col];
                            if !sub.is_zero() {
                                let sign = d.theta(&before, &d.simple_root(jn)) * tail_sign;
                                let e = d.root_form(&before, &d.simple_root(jn)) * d.root_order();
                                acc = acc.add(&sub.shift(e).scale(&BigInt::from(sign)));
                            }
                        }
                        before[self.node(l)] += 1;
                    }
                    g[r][c] = acc;
                }
            }
            g
        };
        // group words by letter content
        let mut groups: Vec<(Vec<u8>, Vec<usize>)> = Vec::new();
        let mut block_of = vec![0; n];
        for (i, w) in words.iter().enumerate() {
            let mut content = w.clone();
            content.sort_unstable();
            match groups.iter().position(|(c, _)| *c == content) {
                Some(b) => {
                    groups[b].1.push(i);
                    block_of[i] = b;
                }
                None => {
                    block_of[i] = groups.len();
                    groups.push((content, vec![i]));
                }
            }
        }
        let mut picks = Vec::new();
        for (_, members) in &groups {
            let sub: Vec<Vec<LaurentPoly>> =
                members.iter().map(|&r| members.iter().map(|&c| gram[r][c].clone()).collect()).collect();
            let (rows, cols, cert) = choose_pivots(&sub);
            let rows: Vec<usize> = rows.into_iter().map(|i| members[i]).collect();
            let cols: Vec<usize> = cols.into_iter().map(|i| members[i]).collect();
            picks.push((rows, cols, cert));
        }
        let mut e_pivots: Vec<usize> = picks.iter().flat_map(|p| p.0.iter().copied()).collect();
        let mut f_pivots: Vec<usize> = picks.iter().flat_map(|p| p.1.iter().copied()).collect();
        e_pivots.sort_unstable();
        f_pivots.sort_unstable();
        let blocks = groups
            .into_iter()
            .zip(picks)
            .map(|((_, members), (rows, cols, certificate))| Block {
                members,
                e_piv: rows.iter().map(|r| e_pivots.binary_search(r).unwrap()).collect(),
                f_piv: cols.iter().map(|c| f_pivots.binary_search(c).unwrap()).collect(),
                certificate,
                inverse: OnceLock::new(),
                e_coords: OnceLock::new(),
                f_coords: OnceLock::new(),
            })
            .collect();
        Ok(WeightSpace {
            weight: beta.to_vec(),
            words,
            index,
            gram,
            scale,
            e_pivots,
            f_pivots,
            blocks,
            block_of,
        })
    }

    pub fn dim(&self, beta: &[i64]) -> Result<usize, DepthError> {
        Ok(self.space(beta)?.dim())
    }

    /// `(x | y)` for an e-word `x` and an f-word `y`.
    pub fn pair_words(&self, x: &[u8], y: &[u8]) -> Result<RatFunc, DepthError> {
        let beta = self.word_weight(x);
        if beta != self.word_weight(y) {
            return Ok(RatFunc::zero());
        }
        let sp = self.space(&beta)?;
        let r = sp.index[x];
        let c = sp.index[&reversed(y)];
        Ok(RatFunc::from_laurent(sp.gram[r][c].clone()) * sp.scale.inv().unwrap())
    }

    pub fn pair_elements(&self, x: &HalfElement, y: &HalfElement) -> Result<RatFunc, DepthError> {
        let mut acc = RatFunc::zero();
        for (xw, xc) in x {
            for (yw, yc) in y {
                let p = self.pair_words(xw, yw)?;
                if !p.is_zero() {
                    acc += xc * yc * p;
                }
            }
        }
        Ok(acc)
    }

    /// Coordinates of an e-word on the positive basis of its weight.
    pub fn e_coords(&self, w: &[u8]) -> Result<Arc<Vec<(usize, RatFunc)>>, DepthError> {
        let sp = self.space(&self.word_weight(w))?;
        let r = sp.index[w];
        Ok(sp.e_coords_row(r))
    }

    /// Coordinates of an f-word on the negative basis of its weight.
    pub fn f_coords(&self, w: &[u8]) -> Result<Arc<Vec<(usize, RatFunc)>>, DepthError> {
        let sp = self.space(&self.word_weight(w))?;
        let c = sp.index[&reversed(w)];
        Ok(sp.f_coords_col(c))
    }

    /// True when a homogeneous e-side element pairs to zero with every
    /// f-word of its weight, i.e. vanishes in the positive half.
    pub fn e_in_radical(&self, x: &HalfElement) -> Result<bool, DepthError> {
        let Some((w0, _)) = x.first() else { return Ok(true) };
        let sp = self.space(&self.word_weight(w0))?;
        for c in 0..sp.words.len() {
            let mut acc = RatFunc::zero();
            for (w, coef) in x {
                acc += coef * RatFunc::from_laurent(sp.gram[sp.index[w]][c].clone());
            }
            if !acc.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when a homogeneous f-side element vanishes in the negative half.
    pub fn f_in_radical(&self, y: &HalfElement) -> Result<bool, DepthError> {
        let Some((w0, _)) = y.first() else { return Ok(true) };
        let sp = self.space(&self.word_weight(w0))?;
        for r in 0..sp.words.len() {
            let mut acc = RatFunc::zero();
            for (w, coef) in y {
                acc += coef * RatFunc::from_laurent(sp.gram[r][sp.index[&reversed(w)]].clone());
            }
            if !acc.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The quantum Serre element in `e_{i,k}` and `e_{j,l}` (nodes `i != j`,
    /// `a_ii = 2`), as an e-side combination.
    pub fn serre_element(&self, i: usize, k: usize, j: usize, l: usize) -> HalfElement {
        let d = &self.datum;
        let li = d.letter_index(i, k).expect("letter") as u8;
        let lj = d.letter_index(j, l).expect("letter") as u8;
        let n_top = 1 - d.a(i, j);
        let e = d.root_order() * d.s(i);
        let mut out = Vec::new();
        for n in 0..=n_top {
            let mut c = super_binomial(n_top, n, e, d.theta_ij(i, i)).unwrap();
            let mut sign = if n % 2 == 0 { 1 } else { -1 };
            if n % 2 == 1 && d.theta_ij(i, j) == -1 {
                sign = -sign;
            }
            if (n * (n - 1) / 2) % 2 == 1 && d.theta_ij(i, i) == -1 {
                sign = -sign;
            }
            c = c.scale_int(sign);
            let mut w = vec![li; (n_top - n) as usize];
            w.push(lj);
            w.extend(std::iter::repeat(li).take(n as usize));
            out.push((w, c));
        }
        out
    }

    /// `e_{i,k} e_{j,l} - theta_ij e_{j,l} e_{i,k}`, a relation when `a_ij = 0`.
    pub fn commutation_element(&self, i: usize, k: usize, j: usize, l: usize) -> HalfElement {
        let d = &self.datum;
        let li = d.letter_index(i, k).expect("letter") as u8;
        let lj = d.letter_index(j, l).expect("letter") as u8;
        let mut out: Vec<(Word, RatFunc)> = vec![(vec![li, lj], RatFunc::one())];
        let c = RatFunc::from_int(-d.theta_ij(i, j));
        if li == lj {
            out[0].1 = out[0].1.add_ref(&c);
            out.retain(|(_, c)| !c.is_zero());
        } else {
            out.push((vec![lj, li], c));
        }
        out
    }

    /// Every defining relation of the positive half whose weight fits in the
    /// depth bound, labelled.
    pub fn fundamental_relations(&self) -> Vec<(String, HalfElement)> {
        let d = &self.datum;
        let mut out = Vec::new();
        for i in 0..d.rank() {
            for j in 0..d.rank() {
                for k in 0..d.charge(i) {
                    for l in 0..d.charge(j) {
                        if d.is_real(i) && i != j {
                            let h = 2 - d.a(i, j);
                            if h as usize <= self.depth {
                                out.push((format!("serre(e[{i},{k}], e[{j},{l}])"), self.serre_element(i, k, j, l)));
                            }
                        }
                        if d.a(i, j) == 0 && 2 <= self.depth {
                            out.push((format!("commute(e[{i},{k}], e[{j},{l}])"), self.commutation_element(i, k, j, l)));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Chooses pivot rows greedily at the evaluation point of largest modular
/// rank, and pivot columns as the mirrored rows when that block is
/// invertible, otherwise greedily.
fn choose_pivots(gram: &[Vec<LaurentPoly>]) -> (Vec<usize>, Vec<usize>, Option<(u64, u64)>) {
    let n = gram.len();
    let mut best: Option<(usize, u64, Vec<Vec<u64>>)> = None;
    for &pt in &modp::POINTS {
        let m: Vec<Vec<u64>> = gram.iter().map(|row| row.iter().map(|x| x.eval_mod(pt)).collect()).collect();
        let r = modp::rank(m.clone());
        if best.as_ref().is_none_or(|b| r > b.0) {
            best = Some((r, pt, m));
        }
        if r == n {
            break;
        }
    }
    let (rank, pt, m) = best.unwrap();
    if rank == 0 {
        return (Vec::new(), Vec::new(), None);
    }
    let rows = if rank == n { (0..n).collect() } else { modp::independent_rows(&m) };
    let block = |cols: &[usize]| -> Vec<Vec<u64>> {
        rows.iter().map(|&r| cols.iter().map(|&c| m[r][c]).collect()).collect()
    };
    let cols = if modp::rank(block(&rows)) == rows.len() {
        rows.clone()
    } else {
        let t: Vec<Vec<u64>> = (0..n).map(|c| rows.iter().map(|&r| m[r][c]).collect()).collect();
        modp::independent_rows(&t)
    };
    let det = mod_det(block(&cols));
    debug_assert!(det != 0);
    (rows, cols, Some((pt, det)))
}

fn mod_det(mut m: Vec<Vec<u64>>) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| m[r][c] != 0) else { return 0 };
        if p != c {
            m.swap(p, c);
            det = modp::neg(det);
        }
        det = modp::mul(det, m[c][c]);
        let iv = modp::inv(m[c][c]).unwrap();
        for r in c + 1..n {
            if m[r][c] != 0 {
                let f = modp::mul(m[r][c], iv);
                for k in c..n {
                    let t = modp::mul(f, m[c][k]);
                    m[r][k] = modp::sub(m[r][k], t);
                }
            }
        }
    }
    det
}

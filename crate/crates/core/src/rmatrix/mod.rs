//! The quasi-R-matrix `C = sum_beta theta(beta,beta) q^{(beta|beta)}
//! (K_beta^{-1} (x) K_beta) C_beta` truncated by height, its inverse, the
//! automorphism `Phi`, and the identities tying them to the coproduct.
//! Every identity in the completion is checked one weight at a time.

mod operator;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{Algebra, Elem, Mono, Tensor};
use crate::datum::{Datum, Root};
use crate::half::DepthError;
use crate::linalg::Matrix;
use crate::module::ModuleError;
use crate::scalar::RatFunc;

pub use operator::{check_intertwining, check_r_invertible, r_operator, ybe_check, ProductModule, ROperator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RMatrixError {
    #[error(transparent)]
    Depth(#[from] DepthError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("product depth {want} exceeds the depth {have} of a factor that is not exhausted")]
    FactorDepth { want: usize, have: usize },
}

/// `C_beta = sum_r x_r (x) y^r` for dual bases of the two halves in weight
/// `beta`.
#[derive(Clone, Debug)]
pub struct CanonicalElement {
    pub weight: Root,
    /// `(x_r, y^r)` with `(x_r | y^s) = delta_rs`.
    pub pairs: Vec<(Elem, Elem)>,
    /// Inverse of the pairing matrix between the pivot bases; column `s`
    /// holds the coordinates of `y^s` over the f-pivots.
    pub gram_inverse: Matrix<RatFunc>,
}

impl CanonicalElement {
    pub fn to_tensor(&self, alg: &Algebra) -> Tensor {
        let mut t = Tensor::zero();
        for (x, y) in &self.pairs {
            t.add_scaled(&alg.tensor_of(&[x.clone(), y.clone()]), &RatFunc::one());
        }
        t
    }

    /// Recomputes every pairing `(x_r | y^s)`.
    pub fn check_duality(&self, alg: &Algebra) -> Result<bool, DepthError> {
        for (r, (x, _)) in self.pairs.iter().enumerate() {
            for (s, (_, y)) in self.pairs.iter().enumerate() {
                let p = alg.pair(x, y)?;
                let ok = if r == s { p.is_one() } else { p.is_zero() };
                if !ok {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub fn dual_bases(alg: &Algebra, beta: &[i64]) -> Result<CanonicalElement, DepthError> {
    let sp = alg.registry().space(beta)?;
    let z = alg.datum().zero_coweight();
    let inv = sp.pivot_pairing_inverse();
    let n = sp.dim();
    let pairs = (0..n)
        .map(|s| {
            let x = Elem::from_mono(Mono { y: Vec::new(), h: z.clone(), x: sp.e_pivot_word(s).clone() }, RatFunc::one());
            let mut y = Elem::zero();
            for (l, row) in inv.iter().enumerate() {
                y.add_term(Mono { y: sp.f_pivot_word(l), h: z.clone(), x: Vec::new() }, row[s].clone());
            }
            (x, y)
        })
        .collect();
    Ok(CanonicalElement { weight: beta.to_vec(), pairs, gram_inverse: inv })
}

/// Summands of `C` (or of `C'`) keyed by weight, all weights of height at
/// most `depth`.
#[derive(Clone, Debug)]
pub struct TruncatedQuasiR {
    pub depth: usize,
    pub summands: BTreeMap<Root, Tensor>,
}

impl TruncatedQuasiR {
    pub fn summand(&self, beta: &[i64]) -> &Tensor {
        &self.summands[beta]
    }

    pub fn total(&self) -> Tensor {
        let mut t = Tensor::zero();
        for s in self.summands.values() {
            t.add_scaled(s, &RatFunc::one());
        }
        t
    }
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Root {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn check_depth(alg: &Algebra, depth: usize) -> Result<(), DepthError> {
    if depth > alg.depth() {
        return Err(DepthError::DepthExceeded { height: depth as i64, depth: alg.depth() });
    }
    Ok(())
}

/// `theta(beta, beta) q^{(beta|beta)}`.
fn summand_scalar(alg: &Algebra, beta: &[i64]) -> RatFunc {
    let d = alg.datum();
    alg.q(d.root_form(beta, beta)).scale_int(d.theta(beta, beta))
}

/// `(K_delta (x) 1)(S (x) 1)(C_delta)`, the inner factor of both inverse
/// identities.
fn antipode_side(alg: &Algebra, c: &Tensor, k: &[i64]) -> Result<Tensor, DepthError> {
    let s = alg.map_leg(c, 0, |m| alg.antipode_mono(m))?;
    alg.tensor_mul(&alg.tensor_of(&[alg.k_root(k), alg.one()]), &s)
}

pub fn quasi_r(alg: &Algebra, depth: usize) -> Result<TruncatedQuasiR, DepthError> {
    check_depth(alg, depth)?;
    let d = alg.datum();
    let mut summands = BTreeMap::new();
    for beta in d.roots_up_to(depth as i64) {
        let c = dual_bases(alg, &beta)?.to_tensor(alg);
        let k = alg.tensor_of(&[alg.k_root(&neg(&beta)), alg.k_root(&beta)]);
        let t = alg.tensor_mul(&k, &c)?.scale(&summand_scalar(alg, &beta));
        summands.insert(beta, t);
    }
    Ok(TruncatedQuasiR { depth, summands })
}

/// `C' = sum theta(beta,beta) q^{(beta|beta)} (1 (x) K_beta)(S (x) 1)(C_beta)`.
pub fn quasi_r_inverse(alg: &Algebra, depth: usize) -> Result<TruncatedQuasiR, DepthError> {
    check_depth(alg, depth)?;
    let d = alg.datum();
    let mut summands = BTreeMap::new();
    for beta in d.roots_up_to(depth as i64) {
        let c = dual_bases(alg, &beta)?.to_tensor(alg);
        let s = alg.map_leg(&c, 0, |m| alg.antipode_mono(m))?;
        let k = alg.tensor_of(&[alg.one(), alg.k_root(&beta)]);
        let t = alg.tensor_mul(&k, &s)?.scale(&summand_scalar(alg, &beta));
        summands.insert(beta, t);
    }
    Ok(TruncatedQuasiR { depth, summands })
}

/// `Phi` acting on legs `i` and `j` of a tensor of any arity:
/// `a (x) b -> a K_{deg b} (x) K_{deg a} b`, the multiplicative extension of
/// `e (x) 1 -> e (x) K`, `1 (x) e -> K (x) e` and their `f` counterparts.
pub fn phi_legs(alg: &Algebra, t: &Tensor, i: usize, j: usize) -> Result<Tensor, DepthError> {
    let mut out = Tensor::zero();
    for (legs, c) in t.iter() {
        let di = alg.degree(&legs[i]);
        let dj = alg.degree(&legs[j]);
        let mut new: Vec<Elem> = legs.iter().map(|m| Elem::from_mono(m.clone(), RatFunc::one())).collect();
        new[i] = alg.mul(&new[i], &alg.k_root(&dj))?;
        new[j] = alg.mul(&alg.k_root(&di), &new[j])?;
        out.add_outer(&new, c);
    }
    Ok(out)
}

pub fn phi(alg: &Algebra, t: &Tensor) -> Result<Tensor, DepthError> {
    phi_legs(alg, t, 0, 1)
}

/// Places the legs of `t` at `positions` of an `arity`-fold tensor, with
/// `1` elsewhere.
pub fn embed(alg: &Algebra, t: &Tensor, arity: usize, positions: &[usize]) -> Tensor {
    let one = Mono { y: Vec::new(), h: alg.datum().zero_coweight(), x: Vec::new() };
    let mut out = Tensor::zero();
    for (legs, c) in t.iter() {
        let mut l = vec![one.clone(); arity];
        for (m, &p) in legs.iter().zip(positions) {
            l[p] = m.clone();
        }
        out.add_term(l, c.clone());
    }
    out
}

fn tensor_one(alg: &Algebra, arity: usize) -> Tensor {
    alg.tensor_of(&vec![alg.one(); arity])
}

/// Pairs `(gamma, beta - gamma)` with both in `Q+`.
fn splittings(beta: &[i64]) -> Vec<(Root, Root)> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; beta.len()];
    fn rec(beta: &[i64], k: usize, cur: &mut Vec<i64>, out: &mut Vec<(Root, Root)>) {
        if k == beta.len() {
            out.push((cur.clone(), sub(beta, cur)));
            return;
        }
        for v in 0..=beta[k] {
            cur[k] = v;
            rec(beta, k + 1, cur, out);
        }
        cur[k] = 0;
    }
    rec(beta, 0, &mut cur, &mut out);
    out
}

/// Outcome of the six weight-wise identities for the canonical elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalIdentities {
    /// `sum C_gamma (K_delta (x) 1)(S (x) 1)(C_delta) = delta_{beta,0}`.
    pub inverse_right: bool,
    /// `sum (K_gamma (x) 1)(S (x) 1)(C_gamma) C_delta = delta_{beta,0}`.
    pub inverse_left: bool,
    /// Commutator of `1 (x) e` with `C_{beta + alpha_i}`.
    pub raising_commutator: bool,
    /// Commutator of `f (x) 1` with `C_{beta + alpha_i}`.
    pub lowering_commutator: bool,
    /// `(Delta (x) 1)(C_beta)` as a sum of products of legs 13 and 23.
    pub coproduct_left: bool,
    /// `(1 (x) Delta)(C_beta)` as a sum of products of legs 13 and 12.
    pub coproduct_right: bool,
}

impl CanonicalIdentities {
    pub fn all(&self) -> bool {
        self.inverse_right
            && self.inverse_left
            && self.raising_commutator
            && self.lowering_commutator
            && self.coproduct_left
            && self.coproduct_right
    }
}

/// Evaluates the six identities at weight `beta`, using the generator
/// `e_{i,k}`, `f_{i,k}` for the two commutator identities.
pub fn canonical_identities(alg: &Algebra, beta: &[i64], i: usize, k: usize) -> Result<CanonicalIdentities, DepthError> {
    let d = alg.datum();
    let mut canon: BTreeMap<Root, Tensor> = BTreeMap::new();
    let mut get = |g: &[i64]| -> Result<Tensor, DepthError> {
        if let Some(t) = canon.get(g) {
            return Ok(t.clone());
        }
        let t = dual_bases(alg, g)?.to_tensor(alg);
        canon.insert(g.to_vec(), t.clone());
        Ok(t)
    };
    let zero_target = |arity: usize| if Datum::height(beta) == 0 { tensor_one(alg, arity) } else { Tensor::zero() };

    let mut right = Tensor::zero();
    let mut left = Tensor::zero();
    let mut cop_left = Tensor::zero();
    let mut cop_right = Tensor::zero();
    for (gamma, delta) in splittings(beta) {
        let cg = get(&gamma)?;
        let cd = get(&delta)?;
        right.add_scaled(&alg.tensor_mul(&cg, &antipode_side(alg, &cd, &delta)?)?, &RatFunc::one());
        left.add_scaled(&alg.tensor_mul(&antipode_side(alg, &cg, &gamma)?, &cd)?, &RatFunc::one());

        let c = alg.q(-d.root_form(&gamma, &delta));
        let k1 = alg.tensor_of(&[alg.k_root(&delta), alg.one(), alg.one()]);
        let p = alg.tensor_mul(&embed(alg, &cg, 3, &[0, 2]), &embed(alg, &cd, 3, &[1, 2]))?;
        cop_left.add_scaled(&alg.tensor_mul(&k1, &p)?, &c);
        let k3 = alg.tensor_of(&[alg.one(), alg.one(), alg.k_root(&neg(&delta))]);
        let p = alg.tensor_mul(&embed(alg, &cg, 3, &[0, 2]), &embed(alg, &cd, 3, &[0, 1]))?;
        cop_right.add_scaled(&alg.tensor_mul(&k3, &p)?, &c);
    }
    let cb = get(beta)?;
    let delta_left = alg.expand_leg(&cb, 0, |m| alg.coproduct_mono(m))?;
    let delta_right = alg.expand_leg(&cb, 1, |m| alg.coproduct_mono(m))?;

    let mut up = beta.to_vec();
    up[i] += 1;
    let cu = get(&up)?;
    let theta_ii = d.theta_ij(i, i);
    let ki = alg.k_root(&d.simple_root(i));
    let ki_inv = alg.k_root(&neg(&d.simple_root(i)));
    let one = alg.one();

    let e = alg.tensor_of(&[one.clone(), alg.e(i, k)]);
    let lhs = alg.tensor_mul(&e, &cu)?.sub(&alg.tensor_mul(&cu, &e)?).scale(&RatFunc::from_int(theta_ii));
    let rhs = alg
        .tensor_mul(&cb, &alg.tensor_of(&[alg.e(i, k), ki_inv.clone()]))?
        .sub(&alg.tensor_mul(&alg.tensor_of(&[alg.e(i, k), ki.clone()]), &cb)?);
    let raising = lhs == rhs;

    let f = alg.tensor_of(&[alg.f(i, k), one]);
    let lhs = alg.tensor_mul(&f, &cu)?.sub(&alg.tensor_mul(&cu, &f)?).scale(&RatFunc::from_int(theta_ii));
    let rhs = alg
        .tensor_mul(&cb, &alg.tensor_of(&[ki, alg.f(i, k)]))?
        .sub(&alg.tensor_mul(&alg.tensor_of(&[ki_inv, alg.f(i, k)]), &cb)?);
    let lowering = lhs == rhs;

    Ok(CanonicalIdentities {
        inverse_right: right == zero_target(2),
        inverse_left: left == zero_target(2),
        raising_commutator: raising,
        lowering_commutator: lowering,
        coproduct_left: delta_left == cop_left,
        coproduct_right: delta_right == cop_right,
    })
}

/// Outcome of the pre-triangular relations, each checked on every weight
/// component determined by the truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreTriangularReport {
    /// `C C' = C' C = 1`.
    pub invertible: bool,
    /// `C Delta(g) = Phi(Delta'(g)) C` for every generator `g`.
    pub intertwining: bool,
    /// `Phi_23 Phi_13 (C_12) = C_12`.
    pub phi_fixes_first: bool,
    /// `Phi_12 Phi_13 (C_23) = C_23`.
    pub phi_fixes_last: bool,
    /// `Phi_23(C_13) C_23 = (Delta (x) 1)(C)`.
    pub coproduct_left: bool,
    /// `Phi_12(C_13) C_12 = (1 (x) Delta)(C)`.
    pub coproduct_right: bool,
}

impl PreTriangularReport {
    pub fn all(&self) -> bool {
        self.invertible
            && self.intertwining
            && self.phi_fixes_first
            && self.phi_fixes_last
            && self.coproduct_left
            && self.coproduct_right
    }
}

/// Product of two truncated series, component `beta` for each `beta` up to
/// the depth.
fn series_product(alg: &Algebra, a: &TruncatedQuasiR, b: &TruncatedQuasiR, beta: &[i64]) -> Result<Tensor, DepthError> {
    let mut acc = Tensor::zero();
    for (g, dl) in splittings(beta) {
        acc.add_scaled(&alg.tensor_mul(a.summand(&g), b.summand(&dl))?, &RatFunc::one());
    }
    Ok(acc)
}

pub fn check_inverse(alg: &Algebra, c: &TruncatedQuasiR, cp: &TruncatedQuasiR) -> Result<bool, DepthError> {
    for beta in c.summands.keys() {
        let target = if Datum::height(beta) == 0 { tensor_one(alg, 2) } else { Tensor::zero() };
        if series_product(alg, c, cp, beta)? != target || series_product(alg, cp, c, beta)? != target {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `C Delta(g) - Phi(Delta'(g)) C` restricted to the components fully
/// determined by the truncation: one leg of height at most `depth - ht(g)`.
pub fn intertwining_residual(alg: &Algebra, c: &TruncatedQuasiR, g: &Elem) -> Result<Tensor, DepthError> {
    let ct = c.total();
    let dg = alg.coproduct(g)?;
    let lhs = alg.tensor_mul(&ct, &dg)?;
    let rhs = alg.tensor_mul(&phi(alg, &alg.flip(&dg))?, &ct)?;
    let shift = g.iter().map(|(m, _)| Datum::height(&alg.degree(m)).abs()).max().unwrap_or(0);
    let bound = c.depth as i64 - shift;
    let mut out = Tensor::zero();
    for (legs, v) in lhs.sub(&rhs).iter() {
        let h0 = Datum::height(&alg.degree(&legs[0])).abs();
        let h1 = Datum::height(&alg.degree(&legs[1])).abs();
        if h0.min(h1) <= bound {
            out.add_term(legs.clone(), v.clone());
        }
    }
    Ok(out)
}

pub fn pretriangular_report(alg: &Algebra, depth: usize) -> Result<PreTriangularReport, DepthError> {
    let c = quasi_r(alg, depth)?;
    let cp = quasi_r_inverse(alg, depth)?;
    let invertible = check_inverse(alg, &c, &cp)?;

    let mut intertwining = true;
    for (_, g) in alg.generator_elements() {
        if !intertwining_residual(alg, &c, &g)?.is_zero() {
            intertwining = false;
            break;
        }
    }

    let mut phi_fixes_first = true;
    let mut phi_fixes_last = true;
    for s in c.summands.values() {
        let c12 = embed(alg, s, 3, &[0, 1]);
        let t = phi_legs(alg, &phi_legs(alg, &c12, 0, 2)?, 1, 2)?;
        phi_fixes_first &= t == c12;
        let c23 = embed(alg, s, 3, &[1, 2]);
        let t = phi_legs(alg, &phi_legs(alg, &c23, 0, 2)?, 0, 1)?;
        phi_fixes_last &= t == c23;
    }

    let mut coproduct_left = true;
    let mut coproduct_right = true;
    for beta in c.summands.keys() {
        let mut l = Tensor::zero();
        let mut r = Tensor::zero();
        for (g, dl) in splittings(beta) {
            let c13 = embed(alg, c.summand(&g), 3, &[0, 2]);
            let c23 = embed(alg, c.summand(&dl), 3, &[1, 2]);
            l.add_scaled(&alg.tensor_mul(&phi_legs(alg, &c13, 1, 2)?, &c23)?, &RatFunc::one());
            let c12 = embed(alg, c.summand(&dl), 3, &[0, 1]);
            r.add_scaled(&alg.tensor_mul(&phi_legs(alg, &c13, 0, 1)?, &c12)?, &RatFunc::one());
        }
        let s = c.summand(beta);
        coproduct_left &= l == alg.expand_leg(s, 0, |m| alg.coproduct_mono(m))?;
        coproduct_right &= r == alg.expand_leg(s, 1, |m| alg.coproduct_mono(m))?;
    }

    Ok(PreTriangularReport {
        invertible,
        intertwining,
        phi_fixes_first,
        phi_fixes_last,
        coproduct_left,
        coproduct_right,
    })
}

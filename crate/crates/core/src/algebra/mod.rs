//! The full algebra in triangular normal form `f-word * q^h * e-word`.

mod hopf;
mod killing;
mod text;
mod tensor;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use crate::datum::{Coweight, Datum, Root};
use crate::half::{reversed, DepthError, Registry, Word};
use crate::scalar::RatFunc;

pub use killing::{LeftForm, RightForm};
pub use tensor::Tensor;
pub use text::ParseError;

/// A basis monomial `y q^h x`: `y` an f-word, `x` an e-word. In a normalized
/// element both words are registry pivot words.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub y: Word,
    pub h: Coweight,
    pub x: Word,
}

/// A finite linear combination of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Elem {
    pub terms: BTreeMap<Mono, RatFunc>,
}

impl Elem {
    pub fn zero() -> Self {
        Elem::default()
    }

    pub fn from_mono(m: Mono, c: RatFunc) -> Self {
        let mut e = Elem::zero();
        e.add_term(m, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Mono, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Elem, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn add(&self, other: &Elem) -> Elem {
        let mut out = self.clone();
        out.add_scaled(other, &RatFunc::one());
        out
    }

    pub fn sub(&self, other: &Elem) -> Elem {
        let mut out = self.clone();
        out.add_scaled(other, &RatFunc::from_int(-1));
        out
    }

    pub fn scale(&self, c: &RatFunc) -> Elem {
        let mut out = Elem::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &RatFunc)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the monomial `q^h` (both words empty).
    pub fn toral_coefficient(&self, h: &[i64]) -> RatFunc {
        self.terms
            .get(&Mono { y: Vec::new(), h: h.to_vec(), x: Vec::new() })
            .cloned()
            .unwrap_or_else(RatFunc::zero)
    }
}

/// A term of a straightening: `c * y q^h x` with free words.
type FreeTerm = (RatFunc, Word, Coweight, Word);

/// The algebra attached to a datum, with its registry and rewriting caches.
pub struct Algebra {
    reg: Registry,
    /// `e-word * f-word` rewritten as `sum c y q^h x`.
    ef_cache: RwLock<HashMap<(Word, Word), Arc<Vec<FreeTerm>>>>,
    /// `f-word * e-word` rewritten as `sum c x q^h y` (e-word first).
    fe_cache: RwLock<HashMap<(Word, Word), Arc<Vec<FreeTerm>>>>,
}

impl Algebra {
    pub fn new(datum: Datum, depth: usize) -> Self {
        Algebra { reg: Registry::new(datum, depth), ef_cache: RwLock::default(), fe_cache: RwLock::default() }
    }

    pub fn registry(&self) -> &Registry {
        &self.reg
    }

    pub fn datum(&self) -> &Datum {
        self.reg.datum()
    }

    pub fn depth(&self) -> usize {
        self.reg.depth()
    }

    /// `q^k` as an element of the scalar field.
    pub fn q(&self, k: i64) -> RatFunc {
        self.reg.q(k)
    }

    pub fn xi(&self, i: usize) -> RatFunc {
        self.reg.xi(i)
    }

    pub fn word_weight(&self, w: &[u8]) -> Root {
        self.reg.word_weight(w)
    }

    /// `Q`-degree of a monomial: weight of `x` minus weight of `y`.
    pub fn degree(&self, m: &Mono) -> Root {
        let mut d = self.word_weight(&m.x);
        for &l in &m.y {
            d[self.reg.node(l)] -= 1;
        }
        d
    }

    /// Splits an element into homogeneous components.
    pub fn components(&self, a: &Elem) -> BTreeMap<Root, Elem> {
        let mut out: BTreeMap<Root, Elem> = BTreeMap::new();
        for (m, c) in a.iter() {
            out.entry(self.degree(m)).or_default().add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn theta(&self, a: &[i64], b: &[i64]) -> i64 {
        self.datum().theta(a, b)
    }

    pub fn one(&self) -> Elem {
        self.toral(self.datum().zero_coweight())
    }

    pub fn scalar(&self, c: RatFunc) -> Elem {
        self.one().scale(&c)
    }

    pub fn toral(&self, h: Coweight) -> Elem {
        Elem::from_mono(Mono { y: Vec::new(), h, x: Vec::new() }, RatFunc::one())
    }

    /// `K_beta = q^{h_beta}`.
    pub fn k_root(&self, beta: &[i64]) -> Elem {
        self.toral(self.datum().h_beta(beta))
    }

    fn letter(&self, i: usize, k: usize) -> u8 {
        self.datum().letter_index(i, k).expect("generator index out of range") as u8
    }

    pub fn e(&self, i: usize, k: usize) -> Elem {
        let z = self.datum().zero_coweight();
        Elem::from_mono(Mono { y: Vec::new(), h: z, x: vec![self.letter(i, k)] }, RatFunc::one())
    }

    pub fn f(&self, i: usize, k: usize) -> Elem {
        let z = self.datum().zero_coweight();
        Elem::from_mono(Mono { y: vec![self.letter(i, k)], h: z, x: Vec::new() }, RatFunc::one())
    }

    /// Every generator letter as `(e, f)` pairs with their node.
    pub fn generators(&self) -> Vec<(usize, usize)> {
        self.datum().letters().to_vec()
    }

    /// Normal form of `c * y q^h x` for free words `y`, `x`.
    pub fn normalize(&self, c: &RatFunc, y: &[u8], h: &[i64], x: &[u8]) -> Result<Elem, DepthError> {
        let mut out = Elem::zero();
        if c.is_zero() {
            return Ok(out);
        }
        let ysp = self.reg.space(&self.word_weight(y))?;
        let xsp = self.reg.space(&self.word_weight(x))?;
        let ycoords = ysp.f_coords_col(ysp.index[&reversed(y)]);
        let xcoords = xsp.e_coords_row(xsp.index[x]);
        for (a, ca) in ycoords.iter() {
            let yw = ysp.f_pivot_word(*a);
            let cya = c * ca;
            for (b, cb) in xcoords.iter() {
                out.add_term(Mono { y: yw.clone(), h: h.to_vec(), x: xsp.e_pivot_word(*b).clone() }, &cya * cb);
            }
        }
        Ok(out)
    }

    /// Rewrites `e-word * f-word` in the order `f q^h e`, with free words.
    fn straighten_ef(&self, e: &[u8], f: &[u8]) -> Arc<Vec<FreeTerm>> {
        let zero = self.datum().zero_coweight();
        if e.is_empty() || f.is_empty() {
            return Arc::new(vec![(RatFunc::one(), f.to_vec(), zero, e.to_vec())]);
        }
        let key = (e.to_vec(), f.to_vec());
        if let Some(v) = self.ef_cache.read().unwrap().get(&key) {
            return v.clone();
        }
        let d = self.datum();
        let j = f[0];
        let jn = self.reg.node(j);
        let aj = d.simple_root(jn);
        let rest = &f[1..];
        let mut acc: HashMap<(Word, Coweight, Word), RatFunc> = HashMap::new();
        let mut push = |c: RatFunc, y: Word, h: Coweight, x: Word| {
            if c.is_zero() {
                return;
            }
            let entry = acc.entry((y, h, x)).or_insert_with(RatFunc::zero);
            *entry = entry.add_ref(&c);
        };
        // f_j passes every letter of e
        let s = d.theta(&aj, &self.word_weight(e));
        for (c, y, h, x) in self.straighten_ef(e, rest).iter() {
            let mut y2 = vec![j];
            y2.extend_from_slice(y);
            push(c.scale_int(s), y2, h.clone(), x.clone());
        }
        // the delta terms of the commutation relation
        let kj = d.k_coweight(jn);
        let inv_xi = self.xi(jn).inv().unwrap();
        for p in 0..e.len() {
            if e[p] != j {
                continue;
            }
            let before = self.word_weight(&e[..p]);
            let after = self.word_weight(&e[p + 1..]);
            let sign = d.theta(&aj, &after);
            let pb = d.root_form(&aj, &before);
            let mut e2 = e[..p].to_vec();
            e2.extend_from_slice(&e[p + 1..]);
            for (c, y, h, x) in self.straighten_ef(&e2, rest).iter() {
                let wy = d.root_form(&aj, &self.word_weight(y));
                let base = c * &inv_xi;
                let base = base.scale_int(sign);
                // q^{-(a_j|before)} K_j moved right past y
                let hp: Coweight = h.iter().zip(&kj).map(|(a, b)| a + b).collect();
                push(&base * &self.q(-pb - wy), y.clone(), hp, x.clone());
                let hm: Coweight = h.iter().zip(&kj).map(|(a, b)| a - b).collect();
                push(-(&base * &self.q(pb + wy)), y.clone(), hm, x.clone());
            }
        }
        let mut out: Vec<FreeTerm> = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((y, h, x), c)| (c, y, h, x)).collect();
        out.sort_by(|a, b| (&a.1, &a.2, &a.3).cmp(&(&b.1, &b.2, &b.3)));
        let out = Arc::new(out);
        self.ef_cache.write().unwrap().insert(key, out.clone());
        out
    }

    /// Rewrites `f-word * e-word` in the order `e q^h f`; terms are returned
    /// as `(c, x, h, y)` meaning `c * x q^h y`.
    fn straighten_fe(&self, f: &[u8], e: &[u8]) -> Arc<Vec<FreeTerm>> {
        let zero = self.datum().zero_coweight();
        if e.is_empty() || f.is_empty() {
            return Arc::new(vec![(RatFunc::one(), e.to_vec(), zero, f.to_vec())]);
        }
        let key = (f.to_vec(), e.to_vec());
        if let Some(v) = self.fe_cache.read().unwrap().get(&key) {
            return v.clone();
        }
        let d = self.datum();
        let i = e[0];
        let inode = self.reg.node(i);
        let ai = d.simple_root(inode);
        let rest = &e[1..];
        let mut acc: HashMap<(Word, Coweight, Word), RatFunc> = HashMap::new();
        let mut push = |c: RatFunc, x: Word, h: Coweight, y: Word| {
            if c.is_zero() {
                return;
            }
            let entry = acc.entry((x, h, y)).or_insert_with(RatFunc::zero);
            *entry = entry.add_ref(&c);
        };
        let s = d.theta(&ai, &self.word_weight(f));
        for (c, x, h, y) in self.straighten_fe(f, rest).iter() {
            let mut x2 = vec![i];
            x2.extend_from_slice(x);
            push(c.scale_int(s), x2, h.clone(), y.clone());
        }
        let ki = d.k_coweight(inode);
        let inv_xi = self.xi(inode).inv().unwrap();
        let tii = d.theta_ij(inode, inode);
        for p in 0..f.len() {
            if f[p] != i {
                continue;
            }
            let before = self.word_weight(&f[..p]);
            let after = self.word_weight(&f[p + 1..]);
            let sign = -d.theta(&ai, &after) * tii;
            let pb = d.root_form(&ai, &before);
            let mut f2 = f[..p].to_vec();
            f2.extend_from_slice(&f[p + 1..]);
            for (c, x, h, y) in self.straighten_fe(&f2, rest).iter() {
                // K_i^{+-1} moved right past the e-word x
                let wx = d.root_form(&ai, &self.word_weight(x));
                let base = (c * &inv_xi).scale_int(sign);
                let hp: Coweight = h.iter().zip(&ki).map(|(a, b)| a + b).collect();
                push(&base * &self.q(pb + wx), x.clone(), hp, y.clone());
                let hm: Coweight = h.iter().zip(&ki).map(|(a, b)| a - b).collect();
                push(-(&base * &self.q(-pb - wx)), x.clone(), hm, y.clone());
            }
        }
        let mut out: Vec<FreeTerm> = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((x, h, y), c)| (c, x, h, y)).collect();
        out.sort_by(|a, b| (&a.1, &a.2, &a.3).cmp(&(&b.1, &b.2, &b.3)));
        let out = Arc::new(out);
        self.fe_cache.write().unwrap().insert(key, out.clone());
        out
    }

    /// Product of two normal-form monomials, as free terms.
    fn mul_mono_free(&self, a: &Mono, b: &Mono) -> Vec<FreeTerm> {
        let d = self.datum();
        let mut out = Vec::new();
        for (c, y, h, x) in self.straighten_ef(&a.x, &b.y).iter() {
            let e1 = d.root_eval(&self.word_weight(y), &a.h);
            let e2 = d.root_eval(&self.word_weight(x), &b.h);
            let coef = c * &self.q(-e1 - e2);
            let mut yy = a.y.clone();
            yy.extend_from_slice(y);
            let mut xx = x.clone();
            xx.extend_from_slice(&b.x);
            let hh: Coweight = a.h.iter().zip(h).zip(&b.h).map(|((p, q), r)| p + q + r).collect();
            out.push((coef, yy, hh, xx));
        }
        out
    }

    pub fn mul_mono(&self, a: &Mono, b: &Mono) -> Result<Elem, DepthError> {
        let mut out = Elem::zero();
        for (c, y, h, x) in self.mul_mono_free(a, b) {
            out.add_scaled(&self.normalize(&RatFunc::one(), &y, &h, &x)?, &c);
        }
        Ok(out)
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Result<Elem, DepthError> {
        // accumulate free terms first so each free word is projected once
        let mut free: HashMap<(Word, Coweight, Word), RatFunc> = HashMap::new();
        for (ma, ca) in a.iter() {
            for (mb, cb) in b.iter() {
                let cab = ca * cb;
                for (c, y, h, x) in self.mul_mono_free(ma, mb) {
                    let e = free.entry((y, h, x)).or_insert_with(RatFunc::zero);
                    *e = e.add_ref(&(c * &cab));
                }
            }
        }
        let mut keys: Vec<_> = free.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        keys.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out = Elem::zero();
        for ((y, h, x), c) in keys {
            out.add_scaled(&self.normalize(&RatFunc::one(), &y, &h, &x)?, &c);
        }
        Ok(out)
    }

    pub fn mul_all(&self, factors: &[&Elem]) -> Result<Elem, DepthError> {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, a: &Elem, n: usize) -> Result<Elem, DepthError> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// `ab - ba`.
    pub fn commutator(&self, a: &Elem, b: &Elem) -> Result<Elem, DepthError> {
        Ok(self.mul(a, b)?.sub(&self.mul(b, a)?))
    }

    /// Sum over the generators `q^{h_i}`, `q^{d_i}`, `e_{i,k}`, `f_{i,k}`.
    pub fn generator_elements(&self) -> Vec<(String, Elem)> {
        let d = self.datum();
        let r = d.rank();
        let mut out = Vec::new();
        for a in 0..2 * r {
            let mut h = d.zero_coweight();
            h[a] = 1;
            let name = if a < r { format!("q^h{}", d.names()[a]) } else { format!("q^d{}", d.names()[a - r]) };
            out.push((name, self.toral(h)));
        }
        for (i, k) in self.generators() {
            out.push((format!("e[{},{}]", d.names()[i], k + 1), self.e(i, k)));
            out.push((format!("f[{},{}]", d.names()[i], k + 1), self.f(i, k)));
        }
        out
    }

    /// Rewrites `f-word * e-word` into `sum c x q^h y` with free words.
    pub fn reorder_fe(&self, f: &[u8], e: &[u8]) -> Vec<(RatFunc, Word, Coweight, Word)> {
        self.straighten_fe(f, e).as_ref().clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::samples;

    #[test]
    fn commutator_of_e_and_f_on_sl2() {
        let alg = Algebra::new(samples::sl2(), 3);
        let e = alg.e(0, 0);
        let f = alg.f(0, 0);
        let lhs = alg.commutator(&e, &f).unwrap();
        let k = alg.k_root(&[1]);
        let kinv = alg.k_root(&[-1]);
        let rhs = k.sub(&kinv).scale(&alg.xi(0).inv().unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn toral_conjugation() {
        let alg = Algebra::new(samples::a2(), 3);
        let mut h = alg.datum().zero_coweight();
        h[0] = 1;
        h[3] = 2;
        let qh = alg.toral(h.clone());
        let e = alg.e(0, 0);
        let lhs = alg.mul(&qh, &e).unwrap();
        let rhs = alg.mul(&e, &qh).unwrap().scale(&alg.q(alg.datum().simple_eval(0, &h)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn e_f_different_nodes_commute_up_to_sign() {
        let alg = Algebra::new(samples::a2(), 3);
        let ef = alg.mul(&alg.e(0, 0), &alg.f(1, 0)).unwrap();
        let fe = alg.mul(&alg.f(1, 0), &alg.e(0, 0)).unwrap();
        assert_eq!(ef, fe.scale(&RatFunc::from_int(alg.datum().theta_ij(1, 0))));
    }

    #[test]
    fn associativity_on_words() {
        let alg = Algebra::new(samples::osp12(), 6);
        let e = alg.e(0, 0);
        let f = alg.f(0, 0);
        let ee = alg.mul(&e, &e).unwrap();
        let ff = alg.mul(&f, &f).unwrap();
        let a = alg.mul(&alg.mul(&ee, &ff).unwrap(), &e).unwrap();
        let b = alg.mul(&ee, &alg.mul(&ff, &e).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

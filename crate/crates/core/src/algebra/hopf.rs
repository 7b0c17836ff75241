//! Coproduct, counit, antipode, the adjoint actions and the pairing between
//! the nonnegative and nonpositive parts.

use std::collections::HashMap;

use super::{Algebra, Elem, Mono, Tensor};
use crate::datum::Coweight;
use crate::half::{reversed, DepthError, Word};
use crate::scalar::RatFunc;

impl Algebra {
    /// `(sign, sum_{p<r} (a_p|a_r))` over ordered letter pairs of a word.
    pub(crate) fn word_twist(&self, w: &[u8]) -> (i64, i64) {
        let d = self.datum();
        let mut sign = 1;
        let mut sum = 0;
        for p in 0..w.len() {
            let ap = d.simple_root(self.registry().node(w[p]));
            for r in p + 1..w.len() {
                let ar = d.simple_root(self.registry().node(w[r]));
                sign *= d.theta(&ap, &ar);
                sum += d.root_form(&ap, &ar);
            }
        }
        (sign, sum)
    }

    fn neg_coweight(h: &[i64]) -> Coweight {
        h.iter().map(|x| -x).collect()
    }

    /// Coproduct of an f-word: routing each letter left (`f (x) K^{-1}`) or
    /// right (`1 (x) f`).
    fn coproduct_f_word(&self, y: &[u8]) -> Result<Tensor, DepthError> {
        let d = self.datum();
        let n = y.len();
        let mut free: HashMap<(Word, Word), RatFunc> = HashMap::new();
        for mask in 0u32..(1u32 << n) {
            let mut sign = 1;
            let mut exp = 0;
            let (mut left, mut right) = (Word::new(), Word::new());
            let mut right_before = d.zero_root();
            for b in 0..n {
                let ab = d.simple_root(self.registry().node(y[b]));
                if mask >> b & 1 == 1 {
                    sign *= d.theta(&right_before, &ab);
                    let right_after = self.word_weight(
                        &(b + 1..n).filter(|&p| mask >> p & 1 == 0).map(|p| y[p]).collect::<Vec<_>>(),
                    );
                    exp += d.root_form(&ab, &right_after);
                    left.push(y[b]);
                } else {
                    right_before[self.registry().node(y[b])] += 1;
                    right.push(y[b]);
                }
            }
            let slot = free.entry((left, right)).or_insert_with(RatFunc::zero);
            *slot = slot.add_ref(&self.q(exp).scale_int(sign));
        }
        let mut t = Tensor::zero();
        let zero = d.zero_coweight();
        let mut keys: Vec<_> = free.into_iter().collect();
        keys.sort_by(|a, b| a.0.cmp(&b.0));
        for ((left, right), c) in keys {
            let k = Self::neg_coweight(&d.h_beta(&self.word_weight(&left)));
            let l = self.normalize(&RatFunc::one(), &left, &zero, &[])?;
            let r = self.normalize(&RatFunc::one(), &right, &k, &[])?;
            t.add_outer(&[l, r], &c);
        }
        Ok(t)
    }

    /// Coproduct of an e-word: each letter goes left (`e (x) 1`) or right
    /// (`K (x) e`).
    fn coproduct_e_word(&self, x: &[u8]) -> Result<Tensor, DepthError> {
        let d = self.datum();
        let n = x.len();
        let mut free: HashMap<(Word, Word), RatFunc> = HashMap::new();
        for mask in 0u32..(1u32 << n) {
            let mut sign = 1;
            let mut exp = 0;
            let (mut left, mut right) = (Word::new(), Word::new());
            let mut right_before = d.zero_root();
            for p in 0..n {
                let ap = d.simple_root(self.registry().node(x[p]));
                if mask >> p & 1 == 1 {
                    sign *= d.theta(&right_before, &ap);
                    exp += d.root_form(&right_before, &ap);
                    left.push(x[p]);
                } else {
                    right_before[self.registry().node(x[p])] += 1;
                    right.push(x[p]);
                }
            }
            let slot = free.entry((left, right)).or_insert_with(RatFunc::zero);
            *slot = slot.add_ref(&self.q(exp).scale_int(sign));
        }
        let mut t = Tensor::zero();
        let zero = d.zero_coweight();
        let mut keys: Vec<_> = free.into_iter().collect();
        keys.sort_by(|a, b| a.0.cmp(&b.0));
        for ((left, right), c) in keys {
            // left K_gamma with gamma the weight of the right word, in q^h e order
            let gamma = self.word_weight(&right);
            let lw = self.word_weight(&left);
            let c = c * self.q(-d.root_form(&lw, &gamma));
            let l = self.normalize(&RatFunc::one(), &[], &d.h_beta(&gamma), &left)?;
            let r = self.normalize(&RatFunc::one(), &[], &zero, &right)?;
            t.add_outer(&[l, r], &c);
        }
        Ok(t)
    }

    pub fn coproduct_mono(&self, m: &Mono) -> Result<Tensor, DepthError> {
        let dy = self.coproduct_f_word(&m.y)?;
        let qh = Elem::from_mono(Mono { y: Vec::new(), h: m.h.clone(), x: Vec::new() }, RatFunc::one());
        let dh = self.tensor_of(&[qh.clone(), qh]);
        let dx = self.coproduct_e_word(&m.x)?;
        let t = self.tensor_mul(&dy, &dh)?;
        self.tensor_mul(&t, &dx)
    }

    pub fn coproduct(&self, a: &Elem) -> Result<Tensor, DepthError> {
        let mut out = Tensor::zero();
        for (m, c) in a.iter() {
            out.add_scaled(&self.coproduct_mono(m)?, c);
        }
        Ok(out)
    }

    /// `(Delta (x) 1) Delta`.
    pub fn coproduct2(&self, a: &Elem) -> Result<Tensor, DepthError> {
        let t = self.coproduct(a)?;
        self.expand_leg(&t, 0, |m| self.coproduct_mono(m))
    }

    pub fn counit_mono(&self, m: &Mono) -> bool {
        m.x.is_empty() && m.y.is_empty()
    }

    pub fn counit(&self, a: &Elem) -> RatFunc {
        let mut acc = RatFunc::zero();
        for (m, c) in a.iter() {
            if self.counit_mono(m) {
                acc += c;
            }
        }
        acc
    }

    /// `S` of an e-word `x` of weight `beta`:
    /// `sign (-1)^n q^{sum} K_{-beta} rev(x)`.
    fn antipode_e_word(&self, x: &[u8]) -> Result<Elem, DepthError> {
        let (sign, sum) = self.word_twist(x);
        let beta = self.word_weight(x);
        let c = self.q(sum).scale_int(sign * if x.len() % 2 == 0 { 1 } else { -1 });
        let h = Self::neg_coweight(&self.datum().h_beta(&beta));
        self.normalize(&c, &[], &h, &reversed(x))
    }

    /// `S` of an f-word `y` of weight `gamma`:
    /// `sign (-1)^m q^{-sum} rev(y) K_gamma`.
    fn antipode_f_word(&self, y: &[u8]) -> Result<Elem, DepthError> {
        let (sign, sum) = self.word_twist(y);
        let gamma = self.word_weight(y);
        let c = self.q(-sum).scale_int(sign * if y.len() % 2 == 0 { 1 } else { -1 });
        self.normalize(&c, &reversed(y), &self.datum().h_beta(&gamma), &[])
    }

    /// `S(y q^h x) = theta(y, x) S(x) q^{-h} S(y)`.
    pub fn antipode_mono(&self, m: &Mono) -> Result<Elem, DepthError> {
        let sx = self.antipode_e_word(&m.x)?;
        let sy = self.antipode_f_word(&m.y)?;
        let qh = self.toral(Self::neg_coweight(&m.h));
        let s = self.theta(&self.word_weight(&m.y), &self.word_weight(&m.x));
        let p = self.mul(&self.mul(&sx, &qh)?, &sy)?;
        Ok(p.scale(&RatFunc::from_int(s)))
    }

    pub fn antipode(&self, a: &Elem) -> Result<Elem, DepthError> {
        let mut out = Elem::zero();
        for (m, c) in a.iter() {
            out.add_scaled(&self.antipode_mono(m)?, c);
        }
        Ok(out)
    }

    /// Inverse antipode, the colored anti-homomorphism with
    /// `e -> -e K^{-1}`, `f -> -K f`, `q^h -> q^{-h}`.
    pub fn antipode_inverse_mono(&self, m: &Mono) -> Result<Elem, DepthError> {
        let d = self.datum();
        let (sx_sign, sx_sum) = self.word_twist(&m.x);
        let beta = self.word_weight(&m.x);
        let cx = self
            .q(-sx_sum + d.root_form(&beta, &beta))
            .scale_int(sx_sign * if m.x.len() % 2 == 0 { 1 } else { -1 });
        let sx = self.normalize(&cx, &[], &Self::neg_coweight(&d.h_beta(&beta)), &reversed(&m.x))?;
        let (sy_sign, sy_sum) = self.word_twist(&m.y);
        let gamma = self.word_weight(&m.y);
        let cy = self
            .q(sy_sum - d.root_form(&gamma, &gamma))
            .scale_int(sy_sign * if m.y.len() % 2 == 0 { 1 } else { -1 });
        let sy = self.normalize(&cy, &reversed(&m.y), &d.h_beta(&gamma), &[])?;
        let qh = self.toral(Self::neg_coweight(&m.h));
        let s = self.theta(&gamma, &beta);
        let p = self.mul(&self.mul(&sx, &qh)?, &sy)?;
        Ok(p.scale(&RatFunc::from_int(s)))
    }

    pub fn antipode_inverse(&self, a: &Elem) -> Result<Elem, DepthError> {
        let mut out = Elem::zero();
        for (m, c) in a.iter() {
            out.add_scaled(&self.antipode_inverse_mono(m)?, c);
        }
        Ok(out)
    }

    /// `ad(u) v = sum theta(u_1, v) u_0 v S(u_1)`.
    pub fn ad(&self, u: &Elem, v: &Elem) -> Result<Elem, DepthError> {
        let du = self.coproduct(u)?;
        let vc = self.components(v);
        let mut out = Elem::zero();
        let mut s_cache: HashMap<Mono, Elem> = HashMap::new();
        for (legs, c) in du.iter() {
            let d1 = self.degree(&legs[1]);
            if !s_cache.contains_key(&legs[1]) {
                s_cache.insert(legs[1].clone(), self.antipode_mono(&legs[1])?);
            }
            let s1 = &s_cache[&legs[1]];
            let u0 = Elem::from_mono(legs[0].clone(), c.clone());
            for (deg, part) in &vc {
                let sign = self.theta(&d1, deg);
                let p = self.mul(&self.mul(&u0, part)?, s1)?;
                out.add_scaled(&p, &RatFunc::from_int(sign));
            }
        }
        Ok(out)
    }

    /// `v . adt(u) = sum theta(v, u_0) S(u_0) v u_1`.
    pub fn adt(&self, u: &Elem, v: &Elem) -> Result<Elem, DepthError> {
        let du = self.coproduct(u)?;
        let vc = self.components(v);
        let mut out = Elem::zero();
        let mut s_cache: HashMap<Mono, Elem> = HashMap::new();
        for (legs, c) in du.iter() {
            let d0 = self.degree(&legs[0]);
            if !s_cache.contains_key(&legs[0]) {
                s_cache.insert(legs[0].clone(), self.antipode_mono(&legs[0])?);
            }
            let s0 = s_cache[&legs[0]].scale(c);
            let u1 = Elem::from_mono(legs[1].clone(), RatFunc::one());
            for (deg, part) in &vc {
                let sign = self.theta(deg, &d0);
                let p = self.mul(&self.mul(&s0, part)?, &u1)?;
                out.add_scaled(&p, &RatFunc::from_int(sign));
            }
        }
        Ok(out)
    }

    pub fn in_nonnegative_part(&self, a: &Elem) -> bool {
        a.iter().all(|(m, _)| m.y.is_empty())
    }

    pub fn in_nonpositive_part(&self, a: &Elem) -> bool {
        a.iter().all(|(m, _)| m.x.is_empty())
    }

    /// Pairing of `q^h x` against `y q^{h'}`:
    /// `q^{beta(h)} q^{-(h|h')} (x|y)`.
    pub fn pair_mono(&self, a: &Mono, b: &Mono) -> Result<RatFunc, DepthError> {
        assert!(a.y.is_empty() && b.x.is_empty(), "pairing needs a nonnegative and a nonpositive argument");
        let p = self.registry().pair_words(&a.x, &b.y)?;
        if p.is_zero() {
            return Ok(p);
        }
        let d = self.datum();
        let beta = self.word_weight(&a.x);
        let u_exp = d.root_eval(&beta, &a.h) * d.root_order() - 2 * d.half_coweight_form_u(&a.h, &b.h);
        Ok(p * RatFunc::u_pow(u_exp))
    }

    /// The bilinear pairing between the nonnegative and nonpositive parts.
    pub fn pair(&self, a: &Elem, b: &Elem) -> Result<RatFunc, DepthError> {
        let mut acc = RatFunc::zero();
        for (ma, ca) in a.iter() {
            for (mb, cb) in b.iter() {
                let p = self.pair_mono(ma, mb)?;
                if !p.is_zero() {
                    acc += ca * cb * p;
                }
            }
        }
        Ok(acc)
    }
}

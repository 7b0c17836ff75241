//! The invariant form on the algebra, evaluated on the bases
//! `x q^h S(y)` (left form) and `y q^h S(x)` (right form).

use std::collections::{BTreeMap, HashMap};

use super::{Algebra, Elem};
use crate::datum::Coweight;
use crate::half::{reversed, DepthError, Word};
use crate::scalar::RatFunc;

/// `sum c * x q^h S(y)` keyed by `(x, h, y)` with pivot words.
pub type LeftForm = BTreeMap<(Word, Coweight, Word), RatFunc>;
/// `sum c * y q^h S(x)` keyed by `(y, h, x)` with pivot words.
pub type RightForm = BTreeMap<(Word, Coweight, Word), RatFunc>;

fn add_to(map: &mut BTreeMap<(Word, Coweight, Word), RatFunc>, key: (Word, Coweight, Word), c: RatFunc) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(key.clone()).or_insert_with(RatFunc::zero);
    *slot = slot.add_ref(&c);
    if slot.is_zero() {
        map.remove(&key);
    }
}

fn sign_pow(n: usize) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

impl Algebra {
    /// Rewrites a normal-form element as `sum x q^h S(y)`.
    pub fn to_left_form(&self, a: &Elem) -> Result<LeftForm, DepthError> {
        let d = self.datum();
        // free (x, h, w) terms meaning x q^h S(w)
        let mut free: HashMap<(Word, Coweight, Word), RatFunc> = HashMap::new();
        for (m, c) in a.iter() {
            let beta = self.word_weight(&m.x);
            // y q^h x = q^{beta(h)} y x q^h
            let c0 = c * &self.q(d.root_eval(&beta, &m.h));
            for (c1, x1, h1, y1) in self.reorder_fe(&m.y, &m.x) {
                let g = self.word_weight(&y1);
                // y1 q^h = q^{g(h)} q^h y1, then y1 = s (-1)^n q^{sum} S(w) K_{-g} with w = rev y1
                // and S(w) K_{-g} = q^{-(g|g)} K_{-g} S(w)
                let w = reversed(&y1);
                let (s, sum) = self.word_twist(&w);
                let exp = d.root_eval(&g, &m.h) + sum - d.root_form(&g, &g);
                let coef = &c0 * &c1 * self.q(exp).scale_int(s * sign_pow(w.len()));
                let hg = d.h_beta(&g);
                let h: Coweight = h1.iter().zip(&m.h).zip(&hg).map(|((a, b), c)| a + b - c).collect();
                let slot = free.entry((x1, h, w)).or_insert_with(RatFunc::zero);
                *slot = slot.add_ref(&coef);
            }
        }
        let mut out = LeftForm::new();
        for ((x, h, w), c) in free {
            if c.is_zero() {
                continue;
            }
            let xs = self.registry().space(&self.word_weight(&x))?;
            let ws = self.registry().space(&self.word_weight(&w))?;
            let xc = self.registry().e_coords(&x)?;
            let wc = self.registry().f_coords(&w)?;
            for (i, ci) in xc.iter() {
                for (j, cj) in wc.iter() {
                    let key = (xs.e_pivot_word(*i).clone(), h.clone(), ws.f_pivot_word(*j));
                    add_to(&mut out, key, &c * ci * cj);
                }
            }
        }
        Ok(out)
    }

    /// Rewrites a normal-form element as `sum y q^h S(x)`.
    pub fn to_right_form(&self, b: &Elem) -> Result<RightForm, DepthError> {
        let d = self.datum();
        let mut out = RightForm::new();
        for (m, c) in b.iter() {
            // x = s (-1)^n q^{-sum} K_beta S(w) with w = rev x
            let w = reversed(&m.x);
            let (s, sum) = self.word_twist(&w);
            let beta = self.word_weight(&m.x);
            let coef = c * &self.q(-sum).scale_int(s * sign_pow(w.len()));
            let h: Coweight = m.h.iter().zip(d.h_beta(&beta)).map(|(a, b)| a + b).collect();
            let ws = self.registry().space(&beta)?;
            for (j, cj) in self.registry().e_coords(&w)?.iter() {
                add_to(&mut out, (m.y.clone(), h.clone(), ws.e_pivot_word(*j).clone()), &coef * cj);
            }
        }
        Ok(out)
    }

    /// `<x1 q^{h1} S(y1) | y2 q^{h2} S(x2)> =
    /// (x1|y2)(x2|y1) q^{-(h1|h2)/2} theta(y1, y2) theta(y1, x2)`.
    pub fn killing_forms(&self, left: &LeftForm, right: &RightForm) -> Result<RatFunc, DepthError> {
        let d = self.datum();
        let mut acc = RatFunc::zero();
        for ((x1, h1, y1), c1) in left {
            let g1 = self.word_weight(y1);
            let b1 = self.word_weight(x1);
            for ((y2, h2, x2), c2) in right {
                if self.word_weight(y2) != b1 || self.word_weight(x2) != g1 {
                    continue;
                }
                let p1 = self.registry().pair_words(x1, y2)?;
                if p1.is_zero() {
                    continue;
                }
                let p2 = self.registry().pair_words(x2, y1)?;
                if p2.is_zero() {
                    continue;
                }
                let sign = d.theta(&g1, &self.word_weight(y2)) * d.theta(&g1, &self.word_weight(x2));
                let t = RatFunc::u_pow(-d.half_coweight_form_u(h1, h2));
                acc += c1 * c2 * p1 * p2 * t.scale_int(sign);
            }
        }
        Ok(acc)
    }

    pub fn killing(&self, a: &Elem, b: &Elem) -> Result<RatFunc, DepthError> {
        self.killing_forms(&self.to_left_form(a)?, &self.to_right_form(b)?)
    }

    /// Element `x q^h S(y)` in normal form.
    pub fn left_basis_element(&self, x: &[u8], h: &[i64], y: &[u8]) -> Result<Elem, DepthError> {
        // x q^h = q^{-beta(h)} q^h x
        let c = self.q(-self.datum().root_eval(&self.word_weight(x), h));
        let xe = self.normalize(&c, &[], h, x)?;
        let ye = self.normalize(&RatFunc::one(), y, &self.datum().zero_coweight(), &[])?;
        self.mul(&xe, &self.antipode(&ye)?)
    }

    /// Element `y q^h S(x)` in normal form.
    pub fn right_basis_element(&self, y: &[u8], h: &[i64], x: &[u8]) -> Result<Elem, DepthError> {
        let ye = self.normalize(&RatFunc::one(), y, h, &[])?;
        let xe = self.normalize(&RatFunc::one(), &[], &self.datum().zero_coweight(), x)?;
        self.mul(&ye, &self.antipode(&xe)?)
    }
}

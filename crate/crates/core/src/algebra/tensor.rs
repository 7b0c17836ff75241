//! Colored tensor powers of the algebra.

use std::collections::BTreeMap;

use super::{Algebra, Elem, Mono};
use crate::half::DepthError;
use crate::scalar::RatFunc;

/// A linear combination of pure tensors of normal-form monomials, all of one
/// arity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tensor {
    pub terms: BTreeMap<Vec<Mono>, RatFunc>,
}

impl Tensor {
    pub fn zero() -> Self {
        Tensor::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Mono>, &RatFunc)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, legs: Vec<Mono>, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(legs) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Tensor, c: &RatFunc) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_scaled(other, &RatFunc::from_int(-1));
        out
    }

    pub fn scale(&self, c: &RatFunc) -> Tensor {
        let mut out = Tensor::zero();
        out.add_scaled(self, c);
        out
    }

    /// Adds `c * legs[0] (x) legs[1] (x) ...`, expanding each leg.
    pub fn add_outer(&mut self, legs: &[Elem], c: &RatFunc) {
        fn rec(t: &mut Tensor, legs: &[Elem], acc: &mut Vec<Mono>, c: &RatFunc) {
            if acc.len() == legs.len() {
                t.add_term(acc.clone(), c.clone());
                return;
            }
            for (m, v) in legs[acc.len()].iter() {
                acc.push(m.clone());
                rec(t, legs, acc, &(c * v));
                acc.pop();
            }
        }
        if c.is_zero() {
            return;
        }
        rec(self, legs, &mut Vec::new(), c);
    }
}

impl Algebra {
    pub fn tensor_of(&self, legs: &[Elem]) -> Tensor {
        let mut t = Tensor::zero();
        t.add_outer(legs, &RatFunc::one());
        t
    }

    /// Sign picked up when the right factor's legs pass the left factor's
    /// later legs.
    pub fn crossing_sign(&self, left: &[Mono], right: &[Mono]) -> i64 {
        let mut s = 1;
        for i in 0..left.len() {
            for j in 0..i {
                s *= self.theta(&self.degree(&left[i]), &self.degree(&right[j]));
            }
        }
        s
    }

    /// Colored product `(a_1 (x) .. a_n)(b_1 (x) .. b_n) =
    /// prod_{i>j} theta(a_i, b_j) a_1 b_1 (x) .. (x) a_n b_n`.
    pub fn tensor_mul(&self, a: &Tensor, b: &Tensor) -> Result<Tensor, DepthError> {
        let mut out = Tensor::zero();
        for (la, ca) in a.iter() {
            for (lb, cb) in b.iter() {
                assert_eq!(la.len(), lb.len(), "tensor arity mismatch");
                let sign = self.crossing_sign(la, lb);
                let mut legs = Vec::with_capacity(la.len());
                let mut dead = false;
                for (x, y) in la.iter().zip(lb) {
                    let p = self.mul_mono(x, y)?;
                    if p.is_zero() {
                        dead = true;
                        break;
                    }
                    legs.push(p);
                }
                if !dead {
                    out.add_outer(&legs, &(ca * cb).scale_int(sign));
                }
            }
        }
        Ok(out)
    }

    /// Applies `f` to leg `k` of every term.
    pub fn map_leg<F>(&self, t: &Tensor, k: usize, mut f: F) -> Result<Tensor, DepthError>
    where
        F: FnMut(&Mono) -> Result<Elem, DepthError>,
    {
        let mut out = Tensor::zero();
        for (legs, c) in t.iter() {
            let img = f(&legs[k])?;
            for (m, v) in img.iter() {
                let mut l = legs.clone();
                l[k] = m.clone();
                out.add_term(l, c * v);
            }
        }
        Ok(out)
    }

    /// Replaces leg `k` by a tensor of arity `a` produced by `f`.
    pub fn expand_leg<F>(&self, t: &Tensor, k: usize, mut f: F) -> Result<Tensor, DepthError>
    where
        F: FnMut(&Mono) -> Result<Tensor, DepthError>,
    {
        let mut out = Tensor::zero();
        for (legs, c) in t.iter() {
            let img = f(&legs[k])?;
            for (mid, v) in img.iter() {
                let mut l: Vec<Mono> = legs[..k].to_vec();
                l.extend(mid.iter().cloned());
                l.extend(legs[k + 1..].iter().cloned());
                out.add_term(l, c * v);
            }
        }
        Ok(out)
    }

    /// The twist `x (x) y -> theta(x, y) y (x) x`.
    pub fn flip(&self, t: &Tensor) -> Tensor {
        let mut out = Tensor::zero();
        for (legs, c) in t.iter() {
            assert_eq!(legs.len(), 2);
            let s = self.theta(&self.degree(&legs[0]), &self.degree(&legs[1]));
            out.add_term(vec![legs[1].clone(), legs[0].clone()], c.scale_int(s));
        }
        out
    }

    /// Multiplies the legs together in order.
    pub fn contract(&self, t: &Tensor) -> Result<Elem, DepthError> {
        let mut out = Elem::zero();
        for (legs, c) in t.iter() {
            let mut acc = Elem::from_mono(legs[0].clone(), c.clone());
            for m in &legs[1..] {
                acc = self.mul(&acc, &Elem::from_mono(m.clone(), RatFunc::one()))?;
            }
            out.add_scaled(&acc, &RatFunc::one());
        }
        Ok(out)
    }

    /// Applies the counit on leg `k`, dropping it.
    pub fn counit_leg(&self, t: &Tensor, k: usize) -> Tensor {
        let mut out = Tensor::zero();
        for (legs, c) in t.iter() {
            let e = self.counit_mono(&legs[k]);
            if e {
                let mut l = legs.clone();
                l.remove(k);
                out.add_term(l, c.clone());
            }
        }
        out
    }

    /// Views an arity-1 tensor as an element.
    pub fn tensor_to_elem(&self, t: &Tensor) -> Elem {
        let mut out = Elem::zero();
        for (legs, c) in t.iter() {
            assert_eq!(legs.len(), 1);
            out.add_term(legs[0].clone(), c.clone());
        }
        out
    }
}

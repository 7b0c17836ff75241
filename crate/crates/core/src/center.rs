//! Central elements of rank-one algebras, the projection of central
//! elements onto the Cartan part, and the finite-type trace functionals.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{Algebra, Elem};
use crate::datum::{Coweight, Datum, LatticeError, Root};
use crate::half::DepthError;
use crate::module::{HighestWeightModule, ModuleError};
use crate::scalar::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CenterError {
    #[error("node {node} does not admit the {variant} central element")]
    VariantMismatch { node: usize, variant: &'static str },
    #[error("alpha_i(h) vanishes for the supplied coweight")]
    DegenerateCoweight,
    #[error("weight is not in one half of the coroot image lattice")]
    NotHalfCoroot,
    #[error(transparent)]
    Depth(#[from] DepthError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `sum c_h q^h` in the Cartan part.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ToralElement {
    terms: BTreeMap<Coweight, RatFunc>,
}

impl ToralElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(h: Coweight, c: RatFunc) -> Self {
        let mut t = Self::zero();
        t.add_term(h, c);
        t
    }

    pub fn add_term(&mut self, h: Coweight, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(h.clone()).or_insert_with(RatFunc::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&h);
        }
    }

    pub fn coefficient(&self, h: &[i64]) -> RatFunc {
        self.terms.get(h).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Coweight, &RatFunc)> {
        self.terms.iter()
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

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (h, c) in &o.terms {
            out.add_term(h.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (h, c) in &self.terms {
            for (g, d) in &o.terms {
                out.add_term(h.iter().zip(g).map(|(a, b)| a + b).collect(), c * d);
            }
        }
        out
    }

    /// The character `q^h -> q^{lambda(h)}`.
    pub fn chi(&self, alg: &Algebra, lambda: &[i64]) -> RatFunc {
        let mut acc = RatFunc::zero();
        for (h, c) in &self.terms {
            acc += c * &alg.q(alg.datum().weight_eval(lambda, h));
        }
        acc
    }

    pub fn to_elem(&self, alg: &Algebra) -> Elem {
        let mut out = Elem::zero();
        for (h, c) in &self.terms {
            out.add_scaled(&alg.toral(h.clone()), c);
        }
        out
    }
}

/// Which rank-one central element to build.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CasimirVariant {
    /// `a_ii != 0`, even.
    Even,
    /// `a_ii != 0`, odd.
    Odd,
    /// `a_ii = 0`, odd, with the coweight twisting the quadratic term.
    IsotropicOdd(Coweight),
}

/// The quadratic central element attached to the first copy of node `i`.
pub fn casimir_rank1(alg: &Algebra, i: usize, variant: &CasimirVariant) -> Result<Elem, CenterError> {
    let d = alg.datum();
    let aii = d.a(i, i);
    let l = d.letter_index(i, 0).expect("node has a first copy") as u8;
    let k = d.k_coweight(i);
    let kinv: Coweight = k.iter().map(|x| -x).collect();
    let zero = d.zero_coweight();
    let one = RatFunc::one();
    let xi = alg.xi(i);
    let sa = d.s(i) * aii;
    let mismatch = |name| Err(CenterError::VariantMismatch { node: i, variant: name });
    match variant {
        CasimirVariant::Even => {
            if aii == 0 || d.is_odd(i) {
                return mismatch("even");
            }
            let c1 = (one.clone() - alg.q(-sa)).inv().unwrap() / xi.clone();
            let c2 = (one.clone() - alg.q(sa)).inv().unwrap() / xi;
            let mut z = alg.normalize(&one, &[l], &zero, &[l])?;
            z.add_scaled(&alg.toral(k), &c1);
            z.add_scaled(&alg.toral(kinv), &-c2);
            Ok(z)
        }
        CasimirVariant::Odd => {
            if aii == 0 || !d.is_odd(i) {
                return mismatch("odd");
            }
            let a = (one.clone() - alg.q(sa)) / (one.clone() + alg.q(sa));
            let b = (one.clone() - alg.q(-sa)) / (one.clone() + alg.q(-sa));
            let c1 = (one.clone() + alg.q(-sa)).pow(-2).unwrap();
            let c2 = (one.clone() + alg.q(sa)).pow(-2).unwrap();
            let xi_inv = xi.inv().unwrap();
            let xi_inv2 = xi_inv.pow(2).unwrap();
            let k2: Coweight = k.iter().map(|x| 2 * x).collect();
            let k2inv: Coweight = k.iter().map(|x| -2 * x).collect();
            let mut z = alg.normalize(&one, &[l, l], &zero, &[l, l])?;
            z = z.add(&alg.normalize(&(&xi_inv * &a), &[l], &k, &[l])?);
            z = z.sub(&alg.normalize(&(&xi_inv * &b), &[l], &kinv, &[l])?);
            z.add_scaled(&alg.toral(k2), &-(&xi_inv2 * &c1));
            z.add_scaled(&alg.toral(k2inv), &-(&xi_inv2 * &c2));
            Ok(z)
        }
        CasimirVariant::IsotropicOdd(h) => {
            if aii != 0 || !d.is_odd(i) {
                return mismatch("isotropic odd");
            }
            let ah = d.simple_eval(i, h);
            if ah == 0 {
                return Err(CenterError::DegenerateCoweight);
            }
            let c = (one.clone() - alg.q(-ah)).inv().unwrap() / xi;
            let hk: Coweight = h.iter().zip(&k).map(|(a, b)| a + b).collect();
            let hkinv: Coweight = h.iter().zip(&k).map(|(a, b)| a - b).collect();
            let mut z = alg.normalize(&one, &[l], h, &[l])?;
            z.add_scaled(&alg.toral(hk), &c);
            z.add_scaled(&alg.toral(hkinv), &-c);
            Ok(z)
        }
    }
}

/// `[z, g] = 0` for every generator `g`.
pub fn is_central(alg: &Algebra, z: &Elem) -> Result<bool, DepthError> {
    for (_, g) in alg.generator_elements() {
        if alg.mul(z, &g)? != alg.mul(&g, z)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cartan projection followed by the shift `q^h -> q^{-rho(h)} q^h`.
pub fn harish_chandra(alg: &Algebra, z: &Elem) -> ToralElement {
    let rho = alg.datum().rho();
    let mut out = ToralElement::zero();
    for (m, c) in z.iter() {
        if m.x.is_empty() && m.y.is_empty() {
            out.add_term(m.h.clone(), c * &alg.q(-alg.datum().weight_eval(&rho, &m.h)));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ImageReport {
    pub weyl_invariant: bool,
    pub restricted: bool,
}

/// Invariance under the reflections of non-isotropic nodes.
pub fn is_weyl_invariant(d: &Datum, t: &ToralElement) -> bool {
    t.iter().all(|(h, c)| {
        (0..d.rank()).filter(|&i| d.a(i, i) != 0).all(|i| match d.reflect_coweight(i, h) {
            Ok(g) => t.coefficient(&g) == *c,
            Err(_) => false,
        })
    })
}

/// Divisibility of `alpha_i(h)` by `s_i a_ii` (even nodes) or `2 s_i a_ii`
/// (odd non-isotropic nodes) on every supported coweight.
pub fn is_restricted(d: &Datum, t: &ToralElement) -> bool {
    t.iter().all(|(h, _)| {
        (0..d.rank()).all(|i| {
            let v = d.simple_eval(i, h);
            let m = d.s(i) * d.a(i, i);
            if !d.is_odd(i) {
                if m == 0 {
                    v == 0
                } else {
                    v % m == 0
                }
            } else if m != 0 {
                v % (2 * m) == 0
            } else {
                true
            }
        })
    })
}

pub fn check_image_constraints(d: &Datum, t: &ToralElement) -> ImageReport {
    ImageReport { weyl_invariant: is_weyl_invariant(d, t), restricted: is_restricted(d, t) }
}

fn k_two_rho_inverse(alg: &Algebra) -> Result<Elem, CenterError> {
    let two_rho = alg.datum().two_rho_in_q()?;
    let neg: Root = two_rho.iter().map(|x| -x).collect();
    Ok(alg.k_root(&neg))
}

/// `str(u K_{2 rho}^{-1})` on the irreducible module of highest weight
/// `lambda`.
pub fn f_lambda(alg: &Algebra, module: &HighestWeightModule, u: &Elem) -> Result<RatFunc, CenterError> {
    let uk = alg.mul(u, &k_two_rho_inverse(alg)?)?;
    Ok(module.supertrace(&uk)?)
}

/// `sum_beta theta(beta, beta) dim V_{lambda - beta} K_{-2(lambda - beta)}`,
/// with `K_{alpha_i / s_i} = q^{h_i}`.
pub fn xi_z_lambda(alg: &Algebra, lambda: &[i64], depth: usize) -> Result<ToralElement, CenterError> {
    let d = alg.datum();
    if !d.is_finite_type() {
        return Err(LatticeError::NotFiniteType.into());
    }
    let k2l = d.double_weight_coweight(lambda).ok_or(CenterError::NotHalfCoroot)?;
    let v = HighestWeightModule::irreducible(alg, lambda, depth)?;
    let top = v.exhausted_at().ok_or(ModuleError::NotExhausted(depth))?;
    let mut out = ToralElement::zero();
    for (beta, n) in v.dims() {
        if n == 0 || Datum::height(&beta) >= top as i64 {
            continue;
        }
        let hb = d.h_beta(&beta);
        let h: Coweight = k2l.iter().zip(&hb).map(|(a, b)| 2 * b - a).collect();
        out.add_term(h, RatFunc::from_int(d.theta(&beta, &beta) * n as i64));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::samples;

    #[test]
    fn sl2_casimir_projection() {
        let alg = Algebra::new(samples::sl2(), 4);
        let c = casimir_rank1(&alg, 0, &CasimirVariant::Even).unwrap();
        assert!(is_central(&alg, &c).unwrap());
        let t = harish_chandra(&alg, &c);
        // hand substitution of phi(K^{+-1}) = q^{-+1} K^{+-1}
        let one = RatFunc::one();
        let q = |k| alg.q(k);
        let xi = q(1) - q(-1);
        let kp = q(-1) / ((one.clone() - q(-2)) * xi.clone());
        let km = -(q(1) / ((one - q(2)) * xi));
        assert_eq!(t.coefficient(&[1, 0]), kp);
        assert_eq!(t.coefficient(&[-1, 0]), km);
        assert_eq!(t.len(), 2);
        assert_eq!(check_image_constraints(alg.datum(), &t), ImageReport { weyl_invariant: true, restricted: true });
    }

    #[test]
    fn lone_toral_term_is_not_invariant() {
        let d = samples::sl2();
        let t = ToralElement::monomial(vec![1, 0], RatFunc::one());
        assert!(!check_image_constraints(&d, &t).weyl_invariant);
        let one = ToralElement::monomial(vec![0, 0], RatFunc::one());
        assert_eq!(check_image_constraints(&d, &one), ImageReport { weyl_invariant: true, restricted: true });
    }

    #[test]
    fn variant_mismatch() {
        let alg = Algebra::new(samples::sl2(), 2);
        assert!(matches!(casimir_rank1(&alg, 0, &CasimirVariant::Odd), Err(CenterError::VariantMismatch { .. })));
        let alg = Algebra::new(samples::isotropic_odd(), 2);
        assert_eq!(
            casimir_rank1(&alg, 0, &CasimirVariant::IsotropicOdd(vec![1, 0])).err(),
            Some(CenterError::DegenerateCoweight)
        );
    }

    #[test]
    fn generators_are_not_central() {
        let alg = Algebra::new(samples::sl2(), 3);
        assert!(is_central(&alg, &alg.one()).unwrap());
        assert!(!is_central(&alg, &alg.e(0, 0)).unwrap());
    }
}

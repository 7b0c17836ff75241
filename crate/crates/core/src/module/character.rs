//! The alternating-sum side of the irreducible character: the set of
//! imaginary root sums orthogonal to the highest weight, the Weyl orbit of
//! `lambda + rho` up to the truncation, and the product with the Verma
//! series.

use std::collections::{BTreeMap, HashSet, VecDeque};

use super::{check_dominant, ModuleError};
use crate::algebra::Algebra;
use crate::datum::{Datum, Root, Weight};

/// One Weyl group element, recorded by its action.
#[derive(Clone, Debug)]
pub struct WeylElement {
    pub length: usize,
    /// `w(lambda + rho)`.
    pub image: Weight,
    /// `w(alpha_j)` for every node `j`.
    pub root_images: Vec<Root>,
}

impl WeylElement {
    pub fn apply_root(&self, mu: &[i64]) -> Root {
        let r = mu.len();
        let mut out = vec![0; r];
        for (j, &c) in mu.iter().enumerate() {
            if c != 0 {
                for k in 0..r {
                    out[k] += c * self.root_images[j][k];
                }
            }
        }
        out
    }
}

fn weight_gap(d: &Datum, top: &[i64], w: &[i64]) -> Root {
    // d-coordinates of a root weight are its simple root coefficients
    let r = d.rank();
    (0..r).map(|j| top[r + j] - w[r + j]).collect()
}

/// Elements `w` of the Weyl group with `ht(lambda + rho - w(lambda + rho))`
/// at most `depth`, by breadth-first search over simple reflections.
pub fn weyl_orbit(d: &Datum, lambda: &[i64], depth: usize) -> Result<Vec<WeylElement>, ModuleError> {
    let r = d.rank();
    let rho = d.rho();
    let top: Weight = lambda.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let id = WeylElement { length: 0, image: top.clone(), root_images: (0..r).map(|j| d.simple_root(j)).collect() };
    let mut seen: HashSet<Weight> = HashSet::from([top.clone()]);
    let mut queue = VecDeque::from([id.clone()]);
    let mut out = vec![id];
    while let Some(w) = queue.pop_front() {
        for i in (0..r).filter(|&i| d.is_real(i)) {
            // only length-increasing steps, which move the image down
            if w.image[i] <= 0 {
                continue;
            }
            let image = d.reflect_weight(i, &w.image)?;
            if Datum::height(&weight_gap(d, &top, &image)) > depth as i64 || !seen.insert(image.clone()) {
                continue;
            }
            let root_images = w.root_images.iter().map(|a| d.reflect_root(i, a)).collect::<Result<_, _>>()?;
            let next = WeylElement { length: w.length + 1, image, root_images };
            queue.push_back(next.clone());
            out.push(next);
        }
    }
    Ok(out)
}

/// Sums `mu` of pairwise orthogonal imaginary simple roots orthogonal to
/// `lambda`, each copy of a charged root counted separately, with the sign
/// `(-1)^{ht mu}`. Odd roots may repeat only when isotropic.
pub fn r_lambda(d: &Datum, lambda: &[i64], depth: usize) -> Vec<(Root, i64)> {
    let members: Vec<usize> = d
        .letters()
        .iter()
        .map(|&(i, _)| i)
        .filter(|&i| !d.is_real(i) && d.s(i) * lambda[i] == 0)
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    let mut mu = d.zero_root();
    fn rec(
        d: &Datum,
        members: &[usize],
        next: usize,
        depth: i64,
        chosen: &mut Vec<usize>,
        mu: &mut Root,
        out: &mut Vec<(Root, i64)>,
    ) {
        let ht = Datum::height(mu);
        out.push((mu.clone(), if ht % 2 == 0 { 1 } else { -1 }));
        for m in next..members.len() {
            let i = members[m];
            if chosen.iter().any(|&j| d.simple_form(i, j) != 0) {
                continue;
            }
            let max_l = if d.is_odd(i) && d.a(i, i) == 0 { depth - ht } else { 1 };
            chosen.push(i);
            for l in 1..=max_l.min(depth - ht) {
                mu[i] += l;
                rec(d, members, m + 1, depth, chosen, mu, out);
                mu[i] -= l;
            }
            chosen.pop();
        }
    }
    rec(d, &members, 0, depth as i64, &mut chosen, &mut mu, &mut out);
    out
}

/// Coefficients of the numerator: `beta -> sum (-1)^{l(w) + ht mu}` over the
/// pairs with `w(lambda + rho - mu) - rho = lambda - beta`.
pub fn numerator_terms(d: &Datum, lambda: &[i64], depth: usize) -> Result<BTreeMap<Root, i64>, ModuleError> {
    let rho = d.rho();
    let top: Weight = lambda.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let rs = r_lambda(d, lambda, depth);
    let mut out: BTreeMap<Root, i64> = BTreeMap::new();
    for w in weyl_orbit(d, lambda, depth)? {
        let gap = weight_gap(d, &top, &w.image);
        let sign = if w.length % 2 == 0 { 1 } else { -1 };
        for (mu, s) in &rs {
            let beta: Root = gap.iter().zip(w.apply_root(mu)).map(|(a, b)| a + b).collect();
            if Datum::in_q_plus(&beta) && Datum::height(&beta) <= depth as i64 {
                *out.entry(beta).or_insert(0) += sign * s;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

/// Weight multiplicities `beta -> dim V_{lambda - beta}` predicted by the
/// character formula, with the denominator replaced by the series of
/// negative-half dimensions.
pub fn character_formula(alg: &Algebra, lambda: &[i64], depth: usize) -> Result<BTreeMap<Root, i64>, ModuleError> {
    let d = alg.datum();
    check_dominant(d, lambda)?;
    let num = numerator_terms(d, lambda, depth)?;
    let mut out = BTreeMap::new();
    for beta in d.roots_up_to(depth as i64) {
        let mut acc = 0i64;
        for (b1, c) in &num {
            let rest: Root = beta.iter().zip(b1).map(|(a, b)| a - b).collect();
            if Datum::in_q_plus(&rest) {
                acc += c * alg.registry().dim(&rest)? as i64;
            }
        }
        out.insert(beta, acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::samples;

    #[test]
    fn sl2_orbit_and_numerator() {
        let d = samples::sl2();
        let orbit = weyl_orbit(&d, &[1, 0], 5).unwrap();
        // identity and the reflection, gap 2
        assert_eq!(orbit.len(), 2);
        let num = numerator_terms(&d, &[1, 0], 5).unwrap();
        assert_eq!(num, BTreeMap::from([(vec![0], 1), (vec![2], -1)]));
    }

    #[test]
    fn r_lambda_trivial_when_imaginary_nodes_see_lambda() {
        let d = samples::borcherds_mixed();
        assert_eq!(r_lambda(&d, &[0, 1, 0, 0], 4), vec![(vec![0, 0], 1)]);
        // charge two, a_22 = -2: copies are not orthogonal to each other
        let r = r_lambda(&d, &[0, 0, 0, 0], 4);
        assert_eq!(r, vec![(vec![0, 0], 1), (vec![0, 1], -1), (vec![0, 1], -1)]);
    }

    #[test]
    fn isotropic_odd_repeats() {
        let d = samples::isotropic_odd();
        let r = r_lambda(&d, &[0, 0], 3);
        assert_eq!(r, vec![(vec![0], 1), (vec![1], -1), (vec![2], 1), (vec![3], -1)]);
    }
}

#![allow(dead_code)]

use std::sync::OnceLock;

use qborch::algebra::{Algebra, Elem, Tensor};
use qborch::datum::samples;
use qborch::scalar::RatFunc;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const NAMES: [&str; 5] = ["sl2", "osp12", "a2", "isotropic_odd", "borcherds_mixed"];

/// Shared algebras of depth 6 so weight-space caches persist across cases.
pub fn algebras() -> &'static Vec<Algebra> {
    static ALGS: OnceLock<Vec<Algebra>> = OnceLock::new();
    ALGS.get_or_init(|| NAMES.iter().map(|n| Algebra::new(samples::by_name(n).unwrap(), 6)).collect())
}

pub fn random_word(alg: &Algebra, rng: &mut ChaCha8Rng, len: usize) -> Vec<u8> {
    let n = alg.datum().letters().len();
    (0..len).map(|_| rng.gen_range(0..n) as u8).collect()
}

pub fn random_coweight(alg: &Algebra, rng: &mut ChaCha8Rng) -> Vec<i64> {
    (0..2 * alg.datum().rank()).map(|_| rng.gen_range(-1..=1)).collect()
}

pub fn random_scalar(rng: &mut ChaCha8Rng) -> RatFunc {
    let c = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    RatFunc::monomial(c, rng.gen_range(-2..=2))
}

/// A random monomial `c y q^h x` with `|y| + |x| <= total`, each side at most
/// `side` letters.
pub fn random_mono(alg: &Algebra, rng: &mut ChaCha8Rng, side: usize, total: usize) -> Elem {
    let ly = rng.gen_range(0..=side.min(total));
    let lx = rng.gen_range(0..=side.min(total - ly));
    let y = random_word(alg, rng, ly);
    let x = random_word(alg, rng, lx);
    let h = random_coweight(alg, rng);
    alg.normalize(&random_scalar(rng), &y, &h, &x).unwrap()
}

/// A sum of one or two random monomials.
pub fn random_elem(alg: &Algebra, rng: &mut ChaCha8Rng, side: usize, total: usize) -> Elem {
    let mut a = random_mono(alg, rng, side, total);
    if rng.gen_bool(0.5) {
        a = a.add(&random_mono(alg, rng, side, total));
    }
    a
}

/// `(x1 (x) x2 | y1 (x) y2) = theta(beta_2, -gamma_1) (x1|y1)(x2|y2)`.
pub fn pair_tensors(alg: &Algebra, x: &Tensor, y: &Tensor) -> RatFunc {
    let mut acc = RatFunc::zero();
    for (xl, xc) in x.iter() {
        for (yl, yc) in y.iter() {
            let p1 = alg.pair_mono(&xl[0], &yl[0]).unwrap();
            if p1.is_zero() {
                continue;
            }
            let p2 = alg.pair_mono(&xl[1], &yl[1]).unwrap();
            if p2.is_zero() {
                continue;
            }
            let s = alg.theta(&alg.degree(&xl[1]), &alg.degree(&yl[0]));
            acc += xc * yc * p1 * p2 * RatFunc::from_int(s);
        }
    }
    acc
}

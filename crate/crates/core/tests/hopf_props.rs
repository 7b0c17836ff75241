mod common;

use common::{algebras, pair_tensors, random_elem, random_word};
use proptest::prelude::*;
use qborch::algebra::{Algebra, Elem, Mono, Tensor};
use qborch::scalar::RatFunc;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn one_mono(m: &Mono) -> Elem {
    Elem::from_mono(m.clone(), RatFunc::one())
}

fn coassoc_gap(alg: &Algebra, a: &Elem) -> Tensor {
    let t = alg.coproduct(a).unwrap();
    let left = alg.expand_leg(&t, 0, |m| alg.coproduct_mono(m)).unwrap();
    let right = alg.expand_leg(&t, 1, |m| alg.coproduct_mono(m)).unwrap();
    left.sub(&right)
}

/// `m (S (x) 1) Delta (a)` and `m (1 (x) S) Delta (a)`.
fn antipode_sides(alg: &Algebra, a: &Elem) -> (Elem, Elem) {
    let t = alg.coproduct(a).unwrap();
    let l = alg.contract(&alg.map_leg(&t, 0, |m| alg.antipode_mono(m)).unwrap()).unwrap();
    let r = alg.contract(&alg.map_leg(&t, 1, |m| alg.antipode_mono(m)).unwrap()).unwrap();
    (l, r)
}

fn nonneg(alg: &Algebra, rng: &mut ChaCha8Rng, len: usize) -> Elem {
    let x = random_word(alg, rng, len);
    let h = common::random_coweight(alg, rng);
    alg.normalize(&common::random_scalar(rng), &[], &h, &x).unwrap()
}

fn nonpos(alg: &Algebra, rng: &mut ChaCha8Rng, len: usize) -> Elem {
    let y = random_word(alg, rng, len);
    let h = common::random_coweight(alg, rng);
    alg.normalize(&common::random_scalar(rng), &y, &h, &[]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn multiplication_is_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for alg in algebras() {
            let a = random_elem(alg, &mut rng, 2, 3);
            let b = random_elem(alg, &mut rng, 2, 3);
            let c = random_elem(alg, &mut rng, 2, 3);
            let ab_c = alg.mul(&alg.mul(&a, &b).unwrap(), &c).unwrap();
            let a_bc = alg.mul(&a, &alg.mul(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn coproduct_is_coassociative_on_products(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for alg in algebras() {
            let a = random_elem(alg, &mut rng, 1, 2);
            let b = random_elem(alg, &mut rng, 1, 2);
            let p = alg.mul(&a, &b).unwrap();
            prop_assert!(coassoc_gap(alg, &p).is_zero());
        }
    }

    #[test]
    fn coproduct_is_multiplicative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for alg in algebras() {
            let a = random_elem(alg, &mut rng, 1, 2);
            let b = random_elem(alg, &mut rng, 1, 2);
            let lhs = alg.coproduct(&alg.mul(&a, &b).unwrap()).unwrap();
            let rhs = alg.tensor_mul(&alg.coproduct(&a).unwrap(), &alg.coproduct(&b).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn counit_axioms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for alg in algebras() {
            let a = random_elem(alg, &mut rng, 2, 3);
            let t = alg.coproduct(&a).unwrap();
            prop_assert_eq!(alg.tensor_to_elem(&alg.counit_leg(&t, 0)), a.clone());
            prop_assert_eq!(alg.tensor_to_elem(&alg.counit_leg(&t, 1)), a);
        }
    }

    #[test]
    fn antipode_axiom(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for alg in algebras() {
            let a = random_elem(alg, &mut rng, 2, 3);
            let want = alg.scalar(alg.counit(&a));
            let (l, r) = antipode_sides(alg, &a);
            prop_assert_eq!(l, want.clone());
            prop_assert_eq!(r, want);
        }
    }

    #[test]
    fn antipode_is_colored_antihomomorphism(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for alg in algebras() {
            let a = common::random_mono(alg, &mut rng, 1, 2);
            let b = common::random_mono(alg, &mut rng, 1, 2);
            let da = alg.degree(a.iter().next().unwrap().0);
            let db = alg.degree(b.iter().next().unwrap().0);
            let lhs = alg.antipode(&alg.mul(&a, &b).unwrap()).unwrap();
            let rhs = alg
                .mul(&alg.antipode(&b).unwrap(), &alg.antipode(&a).unwrap())
                .unwrap()
                .scale(&RatFunc::from_int(alg.theta(&da, &db)));
            prop_assert_eq!(lhs, rhs);
            let back = alg.antipode_inverse(&alg.antipode(&a).unwrap()).unwrap();
            prop_assert_eq!(back, a);
        }
    }

    #[test]
    fn pairing_hopf_axioms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for alg in algebras() {
            // (x | y1 y2) = (Delta x | y1 (x) y2)
            let n1 = rng.gen_range(0..=2);
            let n2 = rng.gen_range(0..=2);
            let x = nonneg(alg, &mut rng, n1 + n2);
            let y1 = nonpos(alg, &mut rng, n1);
            let y2 = nonpos(alg, &mut rng, n2);
            let lhs = alg.pair(&x, &alg.mul(&y1, &y2).unwrap()).unwrap();
            let rhs = pair_tensors(alg, &alg.coproduct(&x).unwrap(), &alg.tensor_of(&[y1, y2]));
            prop_assert_eq!(lhs, rhs);
            // (x1 x2 | y) = (P(x1 (x) x2) | Delta y)
            let x1 = nonneg(alg, &mut rng, n1);
            let x2 = nonneg(alg, &mut rng, n2);
            let y = nonpos(alg, &mut rng, n1 + n2);
            let lhs = alg.pair(&alg.mul(&x1, &x2).unwrap(), &y).unwrap();
            let rhs = pair_tensors(alg, &alg.flip(&alg.tensor_of(&[x1, x2])), &alg.coproduct(&y).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn pairing_is_antipode_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for alg in algebras() {
            let n = rng.gen_range(0..=3);
            let x = nonneg(alg, &mut rng, n);
            let y = nonpos(alg, &mut rng, n);
            let lhs = alg.pair(&alg.antipode(&x).unwrap(), &alg.antipode(&y).unwrap()).unwrap();
            prop_assert_eq!(lhs, alg.pair(&x, &y).unwrap());
        }
    }

    #[test]
    fn product_through_pairing(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for alg in algebras() {
            let nx = rng.gen_range(0..=3);
            let ny = rng.gen_range(0..=3);
            let x = nonneg(alg, &mut rng, nx);
            let y = nonpos(alg, &mut rng, ny);
            let dx = alg.coproduct2(&x).unwrap();
            let dy = alg.coproduct2(&y).unwrap();
            let mut rhs = Elem::zero();
            for (xl, xc) in dx.iter() {
                for (yl, yc) in dy.iter() {
                    let p0 = alg.pair_mono(&xl[0], &yl[0]).unwrap();
                    if p0.is_zero() {
                        continue;
                    }
                    let s2 = alg.antipode_mono(&yl[2]).unwrap();
                    let p2 = alg.pair(&one_mono(&xl[2]), &s2).unwrap();
                    if p2.is_zero() {
                        continue;
                    }
                    let deg = |m: &Mono| alg.degree(m);
                    let sign = alg.theta(&deg(&xl[1]), &deg(&yl[1]))
                        * alg.theta(&deg(&xl[1]), &deg(&yl[0]))
                        * alg.theta(&deg(&xl[2]), &deg(&yl[0]))
                        * alg.theta(&deg(&xl[2]), &deg(&yl[1]));
                    let prod = alg.mul(&one_mono(&yl[1]), &one_mono(&xl[1])).unwrap();
                    rhs.add_scaled(&prod, &(xc * yc * p0 * p2).scale_int(sign));
                }
            }
            prop_assert_eq!(alg.mul(&x, &y).unwrap(), rhs);
        }
    }
}

#[test]
fn coassociativity_on_generators() {
    for alg in algebras() {
        for (name, g) in alg.generator_elements() {
            assert!(coassoc_gap(alg, &g).is_zero(), "{name}");
        }
    }
}

#[test]
fn colored_coproduct_of_two_f_letters() {
    // osp(1|2): (f (x) K^-1 + 1 (x) f)^2 by hand, theta(f, f) = -1
    let alg = &algebras()[1];
    let f = alg.f(0, 0);
    let kinv = alg.k_root(&[-1]);
    let ff = alg.mul(&f, &f).unwrap();
    let mut want = alg.tensor_of(&[ff.clone(), alg.mul(&kinv, &kinv).unwrap()]);
    want.add_scaled(&alg.tensor_of(&[f.clone(), alg.mul(&kinv, &f).unwrap()]), &RatFunc::one());
    want.add_scaled(&alg.tensor_of(&[f.clone(), alg.mul(&f, &kinv).unwrap()]), &RatFunc::from_int(-1));
    want.add_scaled(&alg.tensor_of(&[alg.one(), ff.clone()]), &RatFunc::one());
    assert_eq!(alg.coproduct(&ff).unwrap(), want);
}

#[test]
fn square_of_antipode_is_conjugation_in_finite_type() {
    for alg in algebras() {
        let d = alg.datum();
        if !d.is_finite_type() {
            continue;
        }
        let k = alg.k_root(&d.two_rho_in_q().unwrap());
        for (name, g) in alg.generator_elements() {
            let s2 = alg.antipode(&alg.antipode(&g).unwrap()).unwrap();
            assert_eq!(alg.mul(&k, &s2).unwrap(), alg.mul(&g, &k).unwrap(), "{name}");
        }
        let e = alg.e(0, 0);
        let s2 = alg.antipode(&alg.antipode(&e).unwrap()).unwrap();
        assert_eq!(s2, e.scale(&alg.q(-d.simple_form(0, 0))));
    }
}

/// Monomials `y q^h x` with at most two letters and `h` from a small window.
fn spanning_set(alg: &Algebra) -> Vec<Elem> {
    let d = alg.datum();
    let n = d.letters().len() as u8;
    let mut words: Vec<Vec<u8>> = vec![vec![]];
    for a in 0..n {
        words.push(vec![a]);
        for b in 0..n {
            words.push(vec![a, b]);
        }
    }
    let mut hs = vec![d.zero_coweight()];
    let mut h = d.zero_coweight();
    h[0] = 1;
    hs.push(h);
    let mut h = d.zero_coweight();
    h[d.rank()] = 1;
    hs.push(h);
    let mut out = Vec::new();
    for y in &words {
        for x in &words {
            if y.len() + x.len() > 2 {
                continue;
            }
            for h in &hs {
                out.push(alg.normalize(&RatFunc::one(), y, h, x).unwrap());
            }
        }
    }
    out.retain(|e| !e.is_zero());
    out
}

fn degree_of(alg: &Algebra, a: &Elem) -> Vec<i64> {
    alg.degree(a.iter().next().unwrap().0)
}

#[test]
fn killing_form_is_invariant() {
    for alg in algebras() {
        let span = spanning_set(alg);
        let gens = alg.generator_elements();
        let mut checked = 0;
        for (_, u) in &gens {
            let du = degree_of(alg, u);
            for v in &span {
                let dv = degree_of(alg, v);
                let adv = alg.ad(u, v).unwrap();
                for w in &span {
                    let dw = degree_of(alg, w);
                    let total: Vec<i64> = (0..du.len()).map(|i| du[i] + dv[i] + dw[i]).collect();
                    if total.iter().any(|&c| c != 0) {
                        continue;
                    }
                    let lhs = alg.killing(&adv, w).unwrap();
                    let sign = alg.theta(&du, &dv) * alg.theta(&du, &dw);
                    let rhs = alg.killing(v, &alg.adt(u, w).unwrap()).unwrap().scale_int(sign);
                    assert_eq!(lhs, rhs, "u={} v={} w={}", alg.render(u), alg.render(v), alg.render(w));
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }
}

#[test]
fn killing_form_is_nondegenerate_on_triangular_bases() {
    for alg in algebras() {
        let d = alg.datum();
        let r = d.rank();
        let mut window = vec![d.zero_coweight()];
        for a in [0, r] {
            let mut h = d.zero_coweight();
            h[a] = 1;
            window.push(h);
        }
        let mut hd = d.zero_coweight();
        hd[0] = 1;
        hd[r] = 1;
        window.push(hd);
        for alpha_h in 0..=2i64 {
            for beta_h in 0..=1i64 {
                // weights (alpha, beta) on the first node only keeps the blocks small
                let mut alpha = d.zero_root();
                alpha[0] = alpha_h;
                let mut beta = d.zero_root();
                beta[r - 1] = beta_h;
                let sa = alg.registry().space(&alpha).unwrap();
                let sb = alg.registry().space(&beta).unwrap();
                let mut left = Vec::new();
                let mut right = Vec::new();
                for i in 0..sa.dim() {
                    for j in 0..sb.dim() {
                        for h in &window {
                            left.push(alg.left_basis_element(sa.e_pivot_word(i), h, &sb.f_pivot_word(j)).unwrap());
                            right.push(alg.right_basis_element(&sa.f_pivot_word(i), h, sb.e_pivot_word(j)).unwrap());
                        }
                    }
                }
                let lf: Vec<_> = left.iter().map(|a| alg.to_left_form(a).unwrap()).collect();
                let rf: Vec<_> = right.iter().map(|b| alg.to_right_form(b).unwrap()).collect();
                let gram: Vec<Vec<RatFunc>> =
                    lf.iter().map(|a| rf.iter().map(|b| alg.killing_forms(a, b).unwrap()).collect()).collect();
                let n = gram.len();
                assert_eq!(qborch::linalg::rank(&gram), n, "alpha={alpha:?} beta={beta:?}");
            }
        }
    }
}

mod common;

use common::algebras;
use proptest::prelude::*;
use qborch::algebra::{Algebra, Elem};
use qborch::center::*;
use qborch::datum::Coweight;
use qborch::linalg;
use qborch::module::HighestWeightModule;
use qborch::scalar::RatFunc;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn alg(name: &str) -> &'static Algebra {
    &algebras()[common::NAMES.iter().position(|n| *n == name).unwrap()]
}

fn weight(alg: &Algebra, h: &[i64]) -> Vec<i64> {
    let mut w = vec![0; 2 * alg.datum().rank()];
    w[..h.len()].copy_from_slice(h);
    w
}

/// Rank-one central elements with the data they live on.
fn casimirs() -> Vec<(&'static str, CasimirVariant)> {
    vec![
        ("sl2", CasimirVariant::Even),
        ("osp12", CasimirVariant::Odd),
        ("isotropic_odd", CasimirVariant::IsotropicOdd(vec![0, 1])),
        ("isotropic_odd", CasimirVariant::IsotropicOdd(vec![1, -2])),
    ]
}

#[test]
fn rank_one_casimirs_are_central() {
    for (name, v) in casimirs() {
        let a = alg(name);
        let c = casimir_rank1(a, 0, &v).unwrap();
        assert!(is_central(a, &c).unwrap(), "{name} {v:?}");
        // the quadratic term alone is not
        let quad: Elem = {
            let mut q = Elem::zero();
            for (m, x) in c.iter().filter(|(m, _)| !m.x.is_empty()) {
                q.add_term(m.clone(), x.clone());
            }
            q
        };
        assert!(!is_central(a, &quad).unwrap());
    }
    let a = alg("sl2");
    assert!(is_central(a, &a.one()).unwrap());
    assert!(!is_central(a, &a.e(0, 0)).unwrap());
}

#[test]
fn isotropic_even_node_has_no_quadratic_element() {
    // an even isotropic node admits none of the displayed variants
    let d = qborch::datum::Datum::from_json(r#"{"index":["1"],"A":[[0]],"s":[1],"m":[1],"theta":[[1]]}"#).unwrap();
    let a = Algebra::new(d, 2);
    for v in [CasimirVariant::Even, CasimirVariant::Odd, CasimirVariant::IsotropicOdd(vec![0, 1])] {
        assert!(matches!(casimir_rank1(&a, 0, &v), Err(CenterError::VariantMismatch { .. })));
    }
}

#[test]
fn projection_drops_nontoral_terms() {
    let a = alg("sl2");
    let t = harish_chandra(a, &a.normalize(&RatFunc::one(), &[0], &[1, 0], &[0]).unwrap());
    assert!(t.is_zero());
    // q^h -> q^{-rho(h)} q^h
    let t = harish_chandra(a, &a.toral(vec![2, 1]));
    assert_eq!(t, ToralElement::monomial(vec![2, 1], a.q(-2)));
}

#[test]
fn image_constraints_hold() {
    for (name, v) in casimirs() {
        let a = alg(name);
        let t = harish_chandra(a, &casimir_rank1(a, 0, &v).unwrap());
        assert_eq!(
            check_image_constraints(a.datum(), &t),
            ImageReport { weyl_invariant: true, restricted: true },
            "{name} {v:?}"
        );
    }
}

#[test]
fn projection_is_multiplicative_and_injective_on_powers() {
    for (name, v) in casimirs() {
        let a = alg(name);
        let c = casimir_rank1(a, 0, &v).unwrap();
        let tc = harish_chandra(a, &c);
        let mut power = a.one();
        let mut tpow = ToralElement::monomial(a.datum().zero_coweight(), RatFunc::one());
        let mut images = Vec::new();
        for n in 0..=3 {
            if n > 0 {
                power = a.mul(&power, &c).unwrap();
                tpow = tpow.mul(&tc);
            }
            let t = harish_chandra(a, &power);
            assert_eq!(t, tpow, "{name} n={n}");
            images.push(t);
        }
        let support: Vec<Coweight> = {
            let mut s: Vec<Coweight> = images.iter().flat_map(|t| t.iter().map(|(h, _)| h.clone())).collect();
            s.sort();
            s.dedup();
            s
        };
        let m: Vec<Vec<RatFunc>> = images.iter().map(|t| support.iter().map(|h| t.coefficient(h)).collect()).collect();
        assert_eq!(linalg::rank(&m), 4, "{name}");
    }
}

#[test]
fn casimir_acts_by_shifted_character() {
    for (name, v) in casimirs() {
        let a = alg(name);
        let c = casimir_rank1(a, 0, &v).unwrap();
        let t = harish_chandra(a, &c);
        let rho = a.datum().rho();
        for h in [[0i64, 0], [1, 0], [2, 1]] {
            let lambda = weight(a, &h);
            let m = HighestWeightModule::verma(a, &lambda, 2).unwrap();
            let out = m.apply(&c, &[0], &[RatFunc::one()]).unwrap();
            let scalar = out.get(&vec![0]).map(|v| v[0].clone()).unwrap_or_else(RatFunc::zero);
            let shifted: Vec<i64> = lambda.iter().zip(&rho).map(|(x, y)| x + y).collect();
            assert_eq!(scalar, t.chi(a, &shifted), "{name} {h:?}");
            // central: the same scalar one step down
            let v1 = m.apply(&c, &[1], &[RatFunc::one()]).unwrap();
            if m.dim(&[1]).unwrap() > 0 {
                assert_eq!(v1.get(&vec![1]).map(|v| v[0].clone()).unwrap_or_else(RatFunc::zero), scalar);
            }
        }
    }
}

#[test]
fn trace_functional_values() {
    let a = alg("sl2");
    let v = HighestWeightModule::irreducible(a, &weight(a, &[1]), 4).unwrap();
    assert_eq!(f_lambda(a, &v, &a.one()).unwrap(), a.q(-1) + a.q(1));
    assert!(f_lambda(a, &v, &a.e(0, 0)).unwrap().is_zero());
}

#[test]
fn cartan_image_from_multiplicities() {
    let a = alg("sl2");
    assert_eq!(xi_z_lambda(a, &weight(a, &[0]), 4).unwrap(), ToralElement::monomial(vec![0, 0], RatFunc::one()));
    let t = xi_z_lambda(a, &weight(a, &[1]), 4).unwrap();
    let expect = ToralElement::monomial(vec![-1, 0], RatFunc::one()).add(&ToralElement::monomial(vec![1, 0], RatFunc::one()));
    assert_eq!(t, expect);
    for (name, hs) in [("sl2", vec![vec![2], vec![3]]), ("osp12", vec![vec![2], vec![4]]), ("a2", vec![vec![1, 1]])] {
        let a = alg(name);
        for h in hs {
            let t = xi_z_lambda(a, &weight(a, &h), 6).unwrap();
            assert_eq!(
                check_image_constraints(a.datum(), &t),
                ImageReport { weyl_invariant: true, restricted: true },
                "{name} {h:?}"
            );
        }
    }
    // odd real node: theta(alpha, alpha) = -1 on odd levels
    let a = alg("osp12");
    let t = xi_z_lambda(a, &weight(a, &[2]), 4).unwrap();
    assert_eq!(t.coefficient(&[0, 0]), RatFunc::from_int(-1));
    // a fundamental weight of a2 is not half of a root lattice element
    let a2 = alg("a2");
    assert_eq!(xi_z_lambda(a2, &weight(a2, &[1, 0]), 4), Err(CenterError::NotHalfCoroot));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn trace_functional_is_ad_invariant(seed in any::<u64>(), which in 0usize..3) {
        let (name, h): (&str, i64) = [("sl2", 1), ("sl2", 2), ("osp12", 2)][which];
        let a = alg(name);
        let v = HighestWeightModule::irreducible(a, &weight(a, &[h]), 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = common::random_mono(a, &mut rng, 2, 3);
        let (du, u) = a.components(&m).into_iter().next().unwrap();
        let base = f_lambda(a, &v, &u).unwrap();
        for (_, x) in a.generator_elements() {
            let dx = a.degree(x.iter().next().unwrap().0);
            let lhs = f_lambda(a, &v, &a.ad(&x, &u).unwrap()).unwrap().scale_int(a.theta(&du, &dx));
            prop_assert_eq!(lhs, &a.counit(&x) * &base);
        }
    }
}

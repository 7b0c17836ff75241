use num_bigint::BigInt;
use proptest::prelude::*;
use qborch::scalar::{super_binomial, IntPoly, LaurentPoly, RatFunc};

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    (-3i64..3, prop::collection::vec(-4i64..5, 0..4))
        .prop_map(|(low, cs)| LaurentPoly::from_terms(cs.into_iter().enumerate().map(|(i, c)| (low + i as i64, BigInt::from(c)))))
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (laurent(), laurent()).prop_map(|(n, d)| {
        if d.is_zero() {
            RatFunc::from_laurent(n)
        } else {
            RatFunc::from_parts(n, d).unwrap()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn addition_is_associative(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_distributes(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
    }

    #[test]
    fn normalization_is_idempotent(a in ratfunc()) {
        let again = RatFunc::from_parts(
            a.numerator().clone(),
            LaurentPoly::from_poly(0, a.denominator().clone()),
        ).unwrap();
        prop_assert_eq!(&again, &a);
        prop_assert_eq!(format!("{again:?}"), format!("{a:?}"));
    }

    #[test]
    fn division_inverts_multiplication(a in ratfunc(), b in ratfunc()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a);
    }
}

/// Ordinary Gaussian binomial in `t` by the Pascal recursion.
fn gaussian(n: usize, k: usize) -> IntPoly {
    if k == 0 || k == n {
        return IntPoly::one();
    }
    let shifted = gaussian(n - 1, k).shift_up(k);
    gaussian(n - 1, k - 1).add(&shifted)
}

#[test]
fn even_binomial_matches_gaussian_binomial() {
    // symmetric binomial in q equals q^{-k(n-k)} times the Gaussian binomial in t = q^2
    for e in 1..=2i64 {
        for n in 0..=6usize {
            for k in 0..=n {
                let g = gaussian(n, k);
                let mut terms = Vec::new();
                for (i, c) in g.coeffs().iter().enumerate() {
                    terms.push((2 * e * i as i64 - e * (k * (n - k)) as i64, c.clone()));
                }
                let want = RatFunc::from_laurent(LaurentPoly::from_terms(terms));
                assert_eq!(super_binomial(n as i64, k as i64, e, 1).unwrap(), want, "n={n} k={k}");
            }
        }
    }
}

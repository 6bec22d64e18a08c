use lacunary::refuter::{
    coeff_bound_d, generalized_witness, liouville_nonvanishing, mahler_witness, verify_certificate,
    GeneralizedOptions, LiouvilleOutcome, VerifyOptions,
};
use lacunary::repcount::{dnq_pow2, weighted_digit_coeff};
use lacunary::{DyadicNumber, IntPolynomial, SeriesSpec};
use num_bigint::BigInt;
use proptest::prelude::*;

fn poly_strategy(max_degree: usize, height: i64) -> impl Strategy<Value = IntPolynomial> {
    (1..=max_degree)
        .prop_flat_map(move |t| {
            (
                prop_oneof![-height..=-1i64, 1..=height],
                prop::collection::vec(-height..=height, t),
            )
        })
        .prop_map(|(lead, rest)| {
            IntPolynomial::from_leading_first(std::iter::once(lead).chain(rest)).unwrap()
        })
}

/// `Σ_q a_q d_n(q)` for the pow2 counts.
fn digit(f: &IntPolynomial, n: u64) -> BigInt {
    f.coeffs()
        .iter()
        .enumerate()
        .map(|(q, a)| a * BigInt::from(dnq_pow2(n, q as u32)))
        .sum()
}

#[test]
fn generalized_search_certifies_mahler_quadratics() {
    let opts = GeneralizedOptions::default();
    for f in IntPolynomial::enumerate(2, 5) {
        let outcome = generalized_witness(&SeriesSpec::mahler(), &f, &opts).unwrap();
        assert!(outcome.is_certified(), "{f}");
    }
}

#[test]
fn weighted_coefficients_match_pow2_counts() {
    for q in 0..=4u32 {
        for n in 0..=300u64 {
            assert_eq!(
                weighted_digit_coeff(&SeriesSpec::mahler(), n, q).unwrap(),
                BigInt::from(dnq_pow2(n, q)),
                "n={n} q={q}"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn digits_bounded_by_d(f in poly_strategy(4, 20), n in 0u64..4096) {
        let d = coeff_bound_d(&f);
        prop_assert!(digit(&f, n).magnitude() <= d.magnitude());
    }

    #[test]
    fn liouville_denominators(f in poly_strategy(3, 10)) {
        let t = f.degree() as i64;
        let mut lambda = DyadicNumber::zero();
        let mut fact = 1i64;
        for s in 0..=5i64 {
            if s > 0 {
                fact *= s;
            }
            lambda = &lambda + &DyadicNumber::pow2(-fact);
            prop_assert!(f.eval(&lambda).shift(t * fact).is_integer());
        }
        let certified = matches!(liouville_nonvanishing(&f).unwrap(), LiouvilleOutcome::Certified(_));
        prop_assert!(certified);
    }

    #[test]
    fn certificates_verify_and_sign_symmetric(f in poly_strategy(4, 50)) {
        let c = mahler_witness(&f).unwrap();
        prop_assert!(verify_certificate(&c, &VerifyOptions::default()).unwrap().accepted);
        let neg = mahler_witness(&f.negated()).unwrap();
        prop_assert_eq!((neg.p, neg.k, neg.m, neg.s), (c.p, c.k, c.m, c.s));
        prop_assert_eq!(neg.d_m, -c.d_m.clone());
        // only d_m survives on (s, k)
        for n in (c.s + 1)..c.k.min(c.s + 4096) {
            if n != c.m {
                prop_assert_eq!(digit(&f, n), BigInt::from(0));
            }
        }
    }
}

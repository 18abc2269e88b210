use hsbb_core::linalg::{rat, Rational, RationalMatrix};
use hsbb_core::positivity::{
    curvature_identity_check, curvature_identity_check_f64, generic_samples, numerical_dimension, sigma1_triple,
    sigma_weight1, sigma_weight2, CurvatureTriple, DEFAULT_SAMPLES,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm};

fn triple() -> impl Strategy<Value = CurvatureTriple> {
    (1usize..=3, 1usize..=3, 1usize..=3).prop_flat_map(|(t, w, u)| {
        (
            proptest::collection::vec(-3i64..=3, t * w * u),
            proptest::collection::vec(-2i64..=2, u * u),
        )
            .prop_map(move |(a, m)| {
                let a: Vec<Vec<Vec<Rational>>> = (0..u)
                    .map(|i| (0..t).map(|j| (0..w).map(|k| rat(a[(i * t + j) * w + k])).collect()).collect())
                    .collect();
                // symmetrize the metric
                let metric: Vec<Vec<Rational>> =
                    (0..u).map(|i| (0..u).map(|j| rat(m[i * u + j] + m[j * u + i])).collect()).collect();
                CurvatureTriple::new(t, w, u, a, metric).unwrap()
            })
    })
}

fn sym(e: [[i64; 2]; 2]) -> RationalMatrix {
    RationalMatrix::from_ints(&e)
}

#[test]
fn sigma1_exhaustive_rank_strata() {
    for a in -2..=2 {
        for b in -2..=2 {
            for c in -2..=2 {
                let q = sym([[a, b], [b, c]]);
                let r = sigma_weight1(&q).unwrap();
                assert_eq!(r.injective, a * c - b * b != 0, "{a} {b} {c}");
            }
        }
    }
    assert!(sigma_weight1(&RationalMatrix::from_ints(&[[0, 1], [2, 0]])).is_err());
}

#[test]
fn sigma1_triple_dimension() {
    let c = sigma1_triple(2);
    let nd = numerical_dimension(&c, &generic_samples(3, DEFAULT_SAMPLES, 0));
    // generic Q is nonsingular, so A(·)Q is injective on S²W
    assert_eq!(nd.rho, 3);
    assert_eq!(nd.n, 5);
}

#[test]
fn sigma2_of_zero_triple() {
    let c = CurvatureTriple::zero(2, 2, 1);
    let r = sigma_weight2(&c, &RationalMatrix::identity(2)).unwrap();
    assert!(!r.injective && !r.a_injective && r.integrable);
    assert!(sigma_weight2(&c, &RationalMatrix::identity(3)).is_err());
}

proptest! {
    #![proptest_config(Config { cases: 100, rng_algorithm: RngAlgorithm::ChaCha, ..Config::default() })]

    #[test]
    fn curvature_identity_is_exact(c in triple(), seed in any::<u64>()) {
        let (t, w, _) = c.dims();
        let e = &generic_samples(w, 1, seed)[0];
        let xi = &generic_samples(t, 1, seed ^ 1)[0];
        let exact = curvature_identity_check(&c, e, xi).unwrap();
        prop_assert!(exact.matches);
        let to_f = |v: &[Rational]| v.iter().map(hsbb_core::linalg::to_f64).collect::<Vec<_>>();
        prop_assert!(curvature_identity_check_f64(&c.to_f64(), &to_f(e), &to_f(xi)).unwrap().matches);
    }

    #[test]
    fn numerical_dimension_monotone(c in triple(), seed in any::<u64>(), keep in proptest::collection::vec(-2i64..=2, 9)) {
        let (t, w, _) = c.dims();
        let samples = generic_samples(w, DEFAULT_SAMPLES, seed);
        let full = numerical_dimension(&c, &samples);
        let rows = (t - 1).max(1);
        let basis: Vec<Vec<Rational>> = (0..rows).map(|i| (0..t).map(|j| rat(keep[(i * t + j) % 9])).collect()).collect();
        let sub = numerical_dimension(&c.restrict_t(&basis), &samples);
        prop_assert!(sub.n <= full.n);
        prop_assert!(full.rho <= t);
    }

    #[test]
    fn sigma1_injective_iff_nonsingular(d in 2usize..=3, v in proptest::collection::vec(-3i64..=3, 9)) {
        let q = RationalMatrix::from_rows(
            (0..d).map(|i| (0..d).map(|j| rat(v[i.min(j) * 3 + i.max(j)])).collect()).collect(),
            d,
        );
        let r = sigma_weight1(&q).unwrap();
        prop_assert_eq!(r.injective, q.rank() == d);
    }
}

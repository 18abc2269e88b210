use hsbb_core::IndexSet;
use hsbb_metrics::calculus::directional_mixed;
use hsbb_metrics::fit::{default_taus, expansion_fit, FitTarget, Ray};
use hsbb_metrics::fixtures::*;
use hsbb_metrics::orbit::{augmented_log_det_flag, curvature_limit_check, ell};
use hsbb_metrics::{hodge_decomposition, MetricsError, C};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn zero() -> C {
    c(0.0, 0.0)
}

fn det2_im(tau: [[C; 2]; 2]) -> f64 {
    tau[0][0].im * tau[1][1].im - tau[0][1].im * tau[1][0].im
}

#[test]
fn genus2_point_is_polarized() {
    let o = genus2_orbit([[zero(); 2]; 2]);
    let t = [c(1e-3, 0.0); 3];
    let z = o.z_from_t(&t).unwrap();
    let dec = hodge_decomposition(&o.flag_at_z(&z, zero()), &genus2_q()).unwrap();
    assert_eq!(dec.pieces.iter().map(|p| p.ncols()).collect::<Vec<_>>(), vec![2, 2]);
    assert!(dec.min_eigenvalue > 0.0 && dec.direct_sum_margin > 1e-8);
}

#[test]
fn sp4_point_is_polarized() {
    let (f, q) = sp4_point();
    hodge_decomposition(&f, &q).unwrap();
}

#[test]
fn real_period_is_not_polarized() {
    let o = genus2_orbit([[zero(); 2]; 2]);
    let z = [c(0.3, 0.0), c(0.1, 0.0), c(0.2, 0.0)];
    assert!(matches!(hodge_decomposition(&o.flag_at_z(&z, zero()), &genus2_q()), Err(MetricsError::NotPolarized(_))));
    assert!(matches!(o.log_det_lambda_z(&z, zero()), Err(MetricsError::NotPolarized(_))));
}

#[test]
fn log_det_matches_period_matrix() {
    let o = genus2_orbit([[zero(); 2]; 2]);
    let mut offset = None;
    for t in [[1e-3, 1e-3, 1e-3], [1e-2, 1e-5, 3e-3], [0.2, 0.01, 1e-6]] {
        let tc: Vec<C> = t.iter().map(|&x| c(x, 0.0)).collect();
        let z: Vec<C> = tc.iter().map(|&x| ell(x)).collect();
        let direct = det2_im(genus2_period_matrix(&z)).ln();
        let d = o.log_det_lambda(&tc, zero()).unwrap() - direct;
        let off = *offset.get_or_insert(d);
        assert!((d - off).abs() < 1e-10);
    }
    assert!((offset.unwrap() - 4f64.ln()).abs() < 1e-10);
}

#[test]
fn symmetric_permutation() {
    // swapping t₁ and t₂ exchanges e₁ ↔ e₂, f₁ ↔ f₂
    let o = genus2_orbit([[zero(); 2]; 2]);
    let a = o.log_det_lambda(&[c(1e-2, 0.0), c(1e-4, 0.0), c(1e-3, 0.0)], zero()).unwrap();
    let b = o.log_det_lambda(&[c(1e-4, 0.0), c(1e-2, 0.0), c(1e-3, 0.0)], zero()).unwrap();
    assert!((a - b).abs() < 1e-10);
}

#[test]
fn trivial_twist_at_origin() {
    let t = [c(1e-3, 0.0)];
    let a = curvature_fixture().log_det_lambda(&t, zero()).unwrap();
    let b = curvature_fixture_untwisted().log_det_lambda(&t, zero()).unwrap();
    assert!((a - b).abs() < 1e-12);
}

#[test]
fn augmented_agrees_in_low_weight() {
    let o = genus2_orbit([[zero(); 2]; 2]);
    let z = o.z_from_t(&[c(1e-2, 0.0); 3]).unwrap();
    let a = o.augmented_log_det_z(&z, zero()).unwrap();
    let b = o.log_det_lambda_z(&z, zero()).unwrap();
    assert!((a - b).abs() < 1e-8);
    let o = case_c();
    let z = [c(0.2, 1.5)];
    assert!((o.augmented_log_det_z(&z, zero()).unwrap() - o.log_det_lambda_z(&z, zero()).unwrap()).abs() < 1e-8);
}

#[test]
fn augmented_weight_three() {
    let (f, q) = weight3_point();
    hodge_decomposition(&f, &q).unwrap();
    // h(ω, ω) = h(η, η) = 2 and (n₀, n₁) = (2, 1)
    let v = augmented_log_det_flag(&f, &q).unwrap();
    assert!((v - 3.0 * 2f64.ln()).abs() < 1e-10, "{v}");
}

#[test]
fn expansion_exponents() {
    let w = zero();
    let f = expansion_fit(&case_c(), &Ray { exponents: vec![1.0] }, w, FitTarget::Det, &default_taus()).unwrap();
    assert_eq!(f.m, 2);
    assert!(f.residual < 1e-8);
    assert!((f.a - 2.0 / (4.0 * std::f64::consts::PI.powi(2))).abs() < 1e-9);
    let f = expansion_fit(&case_b(), &Ray { exponents: vec![1.0] }, w, FitTarget::Det, &default_taus()).unwrap();
    assert_eq!(f.m, 1);
    let f = expansion_fit(&case_a(), &Ray { exponents: vec![1.0] }, w, FitTarget::Section(CASE_A_SECTION), &default_taus())
        .unwrap();
    assert_eq!(f.m, 0);
    assert!((f.a - 2.0).abs() < 1e-9);
}

#[test]
fn curvature_limit() {
    let taus: Vec<f64> = (2..=6).map(|k| 10f64.powi(-k)).collect();
    let r = curvature_limit_check(&curvature_fixture(), &IndexSet::new([0]), zero(), &taus, 0.5).unwrap();
    assert!((r.boundary_value + 0.25).abs() < 1e-8, "{}", r.boundary_value);
    assert!(r.decreasing);
    assert!(r.final_relative_error < 1e-2);
    let r = curvature_limit_check(&curvature_fixture_untwisted(), &IndexSet::new([0]), zero(), &taus, 0.5).unwrap();
    assert!(r.boundary_value.abs() < 1e-9 && r.rows.iter().all(|x| x.value.abs() < 1e-9));
}

#[test]
fn curvature_limit_matches_closed_form() {
    // log det Im τ = log((α + y)(β + v) − γ²) up to constants, v = Im w
    let [[_, (_, g)], [_, (_, b)]] = CURVATURE_TAU0;
    let a = CURVATURE_TAU0[0][0].1;
    let taus = [1e-3];
    let r = curvature_limit_check(&curvature_fixture(), &IndexSet::new([0]), zero(), &taus, 0.5).unwrap();
    let y = (1e3f64).ln() / (2.0 * std::f64::consts::PI);
    let d = (a + y) * b - g * g;
    let expected = -0.25 * (a + y).powi(2) / (d * d);
    assert!((r.rows[0].value - expected).abs() < 1e-7, "{} vs {expected}", r.rows[0].value);
}

#[test]
fn gamma_invariance() {
    let o = genus2_orbit([[c(0.1, 0.3), c(0.0, 0.1)], [c(0.0, 0.1), c(-0.2, 0.4)]]);
    let z = [c(0.3, 1.1), c(-0.2, 0.9), c(0.7, 1.3)];
    let base = o.log_det_lambda_z(&z, zero()).unwrap();
    for j in 0..3 {
        let mut shifted = z;
        shifted[j] += c(1.0, 0.0);
        assert!((o.log_det_lambda_z(&shifted, zero()).unwrap() - base).abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, rng_algorithm: proptest::test_runner::RngAlgorithm::ChaCha, ..ProptestConfig::default() })]

    #[test]
    fn hodge_metric_positive(ys in proptest::collection::vec(0.5f64..4.0, 3), xs in proptest::collection::vec(-1.0f64..1.0, 3)) {
        let o = genus2_orbit([[zero(); 2]; 2]);
        let z: Vec<C> = xs.iter().zip(&ys).map(|(&x, &y)| c(x, y)).collect();
        let dec = hodge_decomposition(&o.flag_at_z(&z, zero()), &genus2_q()).unwrap();
        prop_assert!(dec.min_eigenvalue > 0.0);
    }

    #[test]
    fn curvature_nonnegative(
        ys in proptest::collection::vec(0.5f64..4.0, 3),
        xs in proptest::collection::vec(-1.0f64..1.0, 3),
        dir in proptest::collection::vec(-1.0f64..1.0, 6),
    ) {
        let o = genus2_orbit([[zero(); 2]; 2]);
        let z: Vec<C> = xs.iter().zip(&ys).map(|(&x, &y)| c(x, y)).collect();
        let xi: Vec<C> = (0..3).map(|j| c(dir[2 * j], dir[2 * j + 1])).collect();
        let omega = -directional_mixed(|p| o.log_det_lambda_z(p, zero()).unwrap(), &z, &xi, 1e-2);
        prop_assert!(omega >= -1e-8, "{}", omega);
    }
}

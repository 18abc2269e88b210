use hsbb_core::siegel::{
    boundedness_probe, build_setup, log_grid, orbit_point, solve_maximal, solve_minimal, ConeSpec, Family, Parabolic,
    SiegelError, Verdict,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm};

fn normal_form_cone() -> impl Strategy<Value = ConeSpec> {
    proptest::collection::vec((0.0f64..3.0, 0.0f64..3.0, any::<bool>()), 1..=3).prop_map(|g| {
        let p: Vec<f64> = g.iter().map(|x| x.0).collect();
        let q: Vec<f64> = g.iter().map(|x| x.1).collect();
        let r: Vec<f64> = g.iter().map(|x| if x.2 { (x.0 * x.1).sqrt() } else { -(x.0 * x.1).sqrt() }).collect();
        ConeSpec::new(p, q, r).expect("normal form by construction")
    })
}

#[test]
fn setup_relations() {
    let checks = build_setup().checks();
    assert!(checks.all(), "{checks:?}");
}

#[test]
fn normal_form_enforced() {
    assert!(matches!(ConeSpec::new(vec![1.0], vec![1.0], vec![0.5]), Err(SiegelError::InvalidCone(_))));
    assert!(ConeSpec::interior(vec![1.0], vec![1.0], vec![0.5]).is_ok());
    assert!(matches!(ConeSpec::interior(vec![1.0], vec![1.0], vec![2.0]), Err(SiegelError::InvalidCone(_))));
    assert!(matches!(ConeSpec::new(vec![-1.0], vec![0.0], vec![0.0]), Err(SiegelError::InvalidCone(_))));
}

#[test]
fn single_normal_form_generator_is_degenerate() {
    // r² = pq makes qp − r² vanish identically
    let c = ConeSpec::new(vec![1.0], vec![4.0], vec![2.0]).unwrap();
    assert!(matches!(solve_minimal(&c, &[1.0]), Err(SiegelError::NotInDomain(_))));
    let c = ConeSpec::new(vec![0.0], vec![1.0], vec![0.0]).unwrap();
    assert_eq!(solve_minimal(&c, &[1.0]), Err(SiegelError::PZero));
}

#[test]
fn family_parser() {
    assert_eq!(Family::parse("y=(T,1)").unwrap().terms, vec![(1.0, 1.0), (1.0, 0.0)]);
    assert_eq!(Family::parse("(2T^2, 3*T)").unwrap().at(2.0), vec![8.0, 6.0]);
    assert!(Family::parse("y=T,1").is_err());
}

proptest! {
    #![proptest_config(Config { cases: 128, rng_algorithm: RngAlgorithm::ChaCha, ..Config::default() })]

    #[test]
    fn solutions_rebuild_the_orbit_point(cone in normal_form_cone(), y in proptest::collection::vec(0.05f64..20.0, 3)) {
        let y = &y[..cone.s()];
        let direct = orbit_point(&cone, y).unwrap();
        let scale = 1.0 + direct.im.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
        match solve_minimal(&cone, y) {
            Ok(s) => prop_assert!(s.flag_point().distance(&direct) < 1e-10 * scale),
            Err(e) => prop_assert!(matches!(e, SiegelError::PZero | SiegelError::NotInDomain(_))),
        }
        match solve_maximal(&cone, y) {
            Ok(s) => prop_assert!(s.flag_point().distance(&direct) < 1e-10 * scale),
            Err(e) => prop_assert!(matches!(e, SiegelError::NotInDomain(_))),
        }
    }

    #[test]
    fn verdict_stable_under_refinement(a in 0.2f64..5.0, b in 0.2f64..5.0, k in 1.0f64..2.0) {
        let fam = Family { terms: vec![(a, k), (b, 0.0)] };
        for (cone, par) in [(ConeSpec::sigma_hat(), Parabolic::Minimal), (ConeSpec::sigma_hat_swapped(), Parabolic::Maximal)] {
            let coarse = boundedness_probe(&cone, &fam, &log_grid(0, 5, 2), par).unwrap();
            let fine = boundedness_probe(&cone, &fam, &log_grid(0, 5, 8), par).unwrap();
            prop_assert_eq!(coarse.verdict, Verdict::Escapes);
            prop_assert_eq!(fine.verdict, Verdict::Escapes);
        }
        let one = Family { terms: vec![(a, k)] };
        let r = boundedness_probe(&ConeSpec::one_variable(), &one, &log_grid(0, 5, 4), Parabolic::Minimal).unwrap();
        prop_assert_eq!(r.verdict, Verdict::Contained);
    }
}

use hsbb_core::lmhs::examples::{tetrahedron, tetrahedron_of_planes, triangle, two_components};
use hsbb_core::lmhs::{
    build_weight_complexes, curve_lmhs, friedman_check, graded_dims, monodromy_graded_maps, triple_point_check,
    Component, DoubleCurve, DualGraph, LmhsError, NcdSurface,
};
use hsbb_oracles::rng;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm};
use rand::Rng;

/// Chain or cycle of surfaces meeting along smooth curves, without triple points.
fn random_ring(r: &mut impl Rng) -> NcdSurface {
    let c = r.gen_range(2..=5);
    let cycle = c >= 3 && r.gen_bool(0.5);
    let mut pairs: Vec<[usize; 2]> = (1..c).map(|i| [i, i + 1]).collect();
    if cycle {
        pairs.push([1, c]);
    }
    let double_curves: Vec<DoubleCurve> = pairs
        .iter()
        .map(|&p| {
            let s = r.gen_range(-3..=3);
            let t = if r.gen_bool(0.6) { -s } else { r.gen_range(-3..=3) };
            DoubleCurve { components: p, genus: r.gen_range(0..=2), self_intersection: [s, t] }
        })
        .collect();
    let components = (1..=c)
        .map(|i| {
            let on = pairs.iter().filter(|p| p.contains(&i)).count();
            let pad = r.gen_range(0..=2);
            Component { name: format!("X{i}"), h: [1, 0, on + 1 + pad, 0, 1], class_relations: vec![] }
        })
        .collect();
    NcdSurface { components, double_curves, triple_points: vec![], odd: None }
}

/// A shipped configuration with its self-intersections perturbed.
fn perturbed(r: &mut impl Rng) -> NcdSurface {
    let mut x = if r.gen_bool(0.5) { triangle() } else { tetrahedron() };
    for d in &mut x.double_curves {
        if r.gen_bool(0.3) {
            let k = r.gen_range(0..2);
            d.self_intersection[k] += r.gen_range(-2..=2);
        }
    }
    x
}

fn random_graph(r: &mut impl Rng) -> DualGraph {
    let v = r.gen_range(1..=5);
    let mut edges: Vec<[usize; 2]> = (1..v).map(|i| [r.gen_range(0..i), i]).collect();
    for _ in 0..r.gen_range(0..=4) {
        edges.push([r.gen_range(0..v), r.gen_range(0..v)]);
    }
    DualGraph { genera: (0..v).map(|_| r.gen_range(0..=2)).collect(), edges }
}

#[test]
fn negative_controls() {
    let x = tetrahedron_of_planes();
    assert!(!triple_point_check(&x).unwrap().iter().all(|c| c.pass));
    let w = build_weight_complexes(&x).unwrap();
    assert!(!friedman_check(&w));
    assert!(matches!(graded_dims(&w), Err(LmhsError::NotAComplex(_))));
    let x = two_components(1, 0);
    let mut bad = x.clone();
    bad.double_curves[0].self_intersection = [1, 1];
    assert!(!friedman_check(&build_weight_complexes(&bad).unwrap()));
}

#[test]
fn incidence_errors() {
    let mut x = triangle();
    x.double_curves[0].components = [1, 7];
    assert!(matches!(triple_point_check(&x), Err(LmhsError::IncidenceError(_))));
    let mut x = triangle();
    x.triple_points.push([1, 1, 2]);
    assert!(matches!(build_weight_complexes(&x), Err(LmhsError::IncidenceError(_))));
}

#[test]
fn curve_examples() {
    let dollar = DualGraph { genera: vec![0, 0], edges: vec![[0, 1]; 3] };
    assert_eq!(curve_lmhs(&dollar).unwrap(), (2, 0, 2));
    assert_eq!(curve_lmhs(&DualGraph { genera: vec![2], edges: vec![] }).unwrap(), (0, 4, 0));
    assert_eq!(curve_lmhs(&DualGraph { genera: vec![1, 1], edges: vec![[0, 1]] }).unwrap(), (0, 4, 0));
    assert_eq!(curve_lmhs(&DualGraph { genera: vec![0, 0], edges: vec![] }), Err(LmhsError::Disconnected));
}

proptest! {
    #![proptest_config(Config { cases: 64, rng_algorithm: RngAlgorithm::ChaCha, ..Config::default() })]

    #[test]
    fn smoothability_checks_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = if r.gen_bool(0.5) { random_ring(&mut r) } else { perturbed(&mut r) };
        let triple = triple_point_check(&x).unwrap().iter().all(|c| c.pass);
        let w = build_weight_complexes(&x).unwrap();
        prop_assert_eq!(triple, friedman_check(&w));
        if triple {
            let d = graded_dims(&w).unwrap();
            prop_assert_eq!(d.i4, d.i0);
            prop_assert_eq!(d.i3, d.i1);
            let m = monodromy_graded_maps(&w).unwrap();
            prop_assert!(m.hodge_tate.iso && m.odd.iso);
        } else {
            prop_assert!(graded_dims(&w).is_err());
        }
    }

    #[test]
    fn curve_dims_sum_to_twice_the_genus(seed in any::<u64>()) {
        let g = random_graph(&mut rng(seed));
        let (a, b, c) = curve_lmhs(&g).unwrap();
        let b1 = g.edges.len() + 1 - g.genera.len();
        let arithmetic_genus = g.genera.iter().sum::<usize>() + b1;
        prop_assert_eq!(a, c);
        prop_assert_eq!(a + b + c, 2 * arithmetic_genus);
    }
}

//! Acceptance suite. Each criterion prints one line with its verdict, the pinned
//! tolerance, and the elapsed time against its budget. Exits nonzero on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hsbb_core::charts::binomial_relations;
use hsbb_core::filtration::{in_adjoint_step, weight_filtration};
use hsbb_core::fixtures::genus2_cone;
use hsbb_core::linalg::{orthogonal_complement, rat, Rational, RationalMatrix, Subspace};
use hsbb_core::lmhs::examples::{tetrahedron, tetrahedron_of_planes, triangle, two_components};
use hsbb_core::lmhs::{
    build_weight_complexes, curve_lmhs, friedman_check, graded_dims, triple_point_check, DualGraph, NcdSurface,
};
use hsbb_core::positivity::{curvature_identity_check, sigma_weight1, CurvatureTriple};
use hsbb_core::relations::{farkas_alternative, farkas_split, k_index_map, relation_space};
use hsbb_core::siegel::{boundedness_probe, log_grid, ConeSpec, Family, Parabolic, Verdict};
use hsbb_core::IndexSet;
use hsbb_metrics::fit::{default_taus, expansion_fit, FitTarget, Ray};
use hsbb_metrics::fixtures::{case_a, case_b, case_c, curvature_fixture, CASE_A_SECTION};
use hsbb_metrics::orbit::curvature_limit_check;
use hsbb_metrics::residue::{default_ts, residue_sweep, Polynomial};
use hsbb_metrics::C;
use hsbb_oracles::{
    feasible_by_supports, max_nonnegative_support, random_nilpotent, random_subspace, random_system,
    recursive_weight_filtration, rng, satisfies_weight_properties,
};
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

fn genus2_golden() -> Outcome {
    let cone = genus2_cone();
    let s = |i: &[usize]| relation_space(&cone, &IndexSet::from_one_based(i)).map_err(|e| e.to_string());
    ensure(s(&[])?.is_zero(), || "S_∅ ≠ 0".into())?;
    ensure(orthogonal_complement(&s(&[1])?) == Subspace::from_vectors(3, &[ints(&[0, 1, 1])]), || {
        "S_{1}^⊥ ≠ span{(0,1,1)}".into()
    })?;
    ensure(s(&[1, 2])?.is_full(), || "S_{1,2} ≠ ℚ³".into())?;
    let map = k_index_map(&cone).map_err(|e| e.to_string())?;
    for i in [vec![], vec![1], vec![2], vec![3], vec![1, 2], vec![1, 3], vec![2, 3], vec![1, 2, 3]] {
        let want = if i.len() <= 1 { i.clone() } else { vec![1, 2, 3] };
        let got = map.k_of(&IndexSet::from_one_based(&i));
        ensure(got == &IndexSet::from_one_based(&want), || format!("K({i:?}) = {got:?}"))?;
    }
    let chart = RationalMatrix::from_ints(&[[1, 1, 0], [1, 0, 1], [0, 1, 1], [1, 1, 1]]);
    let rel = binomial_relations(&chart);
    ensure(rel.rendered() == vec!["z1*z2*z3 = z4^2"], || format!("relations {:?}", rel.rendered()))?;
    Ok("exact; z1*z2*z3 = z4^2".into())
}

fn membership() -> Outcome {
    let cone = genus2_cone();
    let n = cone.generators();
    let x = n[2].sub(&n[1]).sub(&n[0]);
    let i = IndexSet::from_one_based(&[1]);
    ensure(in_adjoint_step(&cone, &i, &x, -1).map_err(|e| e.to_string())?, || "N₃−N₂−N₁ ∉ W₋₁".into())?;
    ensure(!in_adjoint_step(&cone, &i, &n[2], -1).map_err(|e| e.to_string())?, || "control N₃ ∈ W₋₁".into())?;
    Ok("exact; N3-N2-N1 in W_-1(ad N1)".into())
}

fn farkas_suite() -> Outcome {
    let mut mismatches = Vec::new();
    for seed in 0..200u64 {
        let mut r = rng(seed);
        let (a, b) = random_system(&mut r);
        let alt = farkas_alternative(&a, &b);
        if !alt.verify(&a, &b) || alt.is_feasible() != feasible_by_supports(&a, &b) {
            mismatches.push(format!("alternative seed {seed}"));
        }
        let k = r.gen_range(1..=6);
        let s = random_subspace(&mut r, k);
        let split = farkas_split(&s);
        let perp = orthogonal_complement(&s);
        if split.k != max_nonnegative_support(&s) || split.k.complement(k) != max_nonnegative_support(&perp) {
            mismatches.push(format!("split seed {seed}"));
        }
    }
    ensure(mismatches.is_empty(), || format!("mismatches: {mismatches:?}"))?;
    Ok("200 seeds, 0 mismatches".into())
}

fn weight_suite() -> Outcome {
    for seed in 0..100u64 {
        let mut r = rng(seed);
        let center = r.gen_range(-2..=3);
        let n = random_nilpotent(&mut r, 8);
        let w = weight_filtration(&n, center).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(satisfies_weight_properties(&n, center, |l| w.step(l)), || format!("seed {seed}: properties"))?;
        let oracle = recursive_weight_filtration(&n, center);
        ensure((center - 9..=center + 9).all(|l| w.step(l) == oracle.step(l)), || format!("seed {seed}: not unique"))?;
    }
    Ok("100 seeds, dim <= 8, exact".into())
}

fn lmhs_suite() -> Outcome {
    let good: Vec<(&str, NcdSurface)> =
        vec![("two_components", two_components(1, 2)), ("triangle", triangle()), ("tetrahedron", tetrahedron())];
    for (name, x) in &good {
        ensure(triple_point_check(x).map_err(|e| e.to_string())?.iter().all(|c| c.pass), || {
            format!("{name}: triple point formula")
        })?;
        let w = build_weight_complexes(x).map_err(|e| e.to_string())?;
        ensure(w.mid_out.mul(&w.mid_in).is_zero(), || format!("{name}: composition ≠ 0"))?;
        let d = graded_dims(&w).map_err(|e| e.to_string())?;
        ensure(d.i4 == d.i0 && d.i3 == d.i1, || format!("{name}: {d:?}"))?;
    }
    let mut broken = two_components(1, 2);
    broken.double_curves[0].self_intersection = [1, 1];
    for (name, x) in [("tetrahedron_of_planes", tetrahedron_of_planes()), ("two_components(1,1)", broken)] {
        ensure(!triple_point_check(&x).map_err(|e| e.to_string())?.iter().all(|c| c.pass), || {
            format!("{name}: control passed the triple point formula")
        })?;
        let w = build_weight_complexes(&x).map_err(|e| e.to_string())?;
        ensure(!friedman_check(&w) && graded_dims(&w).is_err(), || format!("{name}: control is a complex"))?;
    }
    let dollar = DualGraph { genera: vec![0, 0], edges: vec![[0, 1]; 3] };
    ensure(curve_lmhs(&dollar) == Ok((2, 0, 2)), || "$-curve".into())?;
    Ok("3 fixtures exact, 2 negative controls".into())
}

fn residue_suite() -> Outcome {
    let tol = 0.02;
    let one = residue_sweep(&Polynomial::constant(1.0), &default_ts());
    ensure((one.slope - 1.0).abs() <= tol, || format!("g=1 slope {}", one.slope))?;
    let x = residue_sweep(&Polynomial::monomial(1.0, 1, 0), &default_ts());
    // bounded: no growth in log|t|⁻¹ beyond the first sample
    let bound = x.rows.iter().fold(0.0f64, |m, r| m.max(r.value.abs()));
    let first = x.rows[0].value.abs();
    ensure(x.slope.abs() <= tol && bound.is_finite() && bound <= 2.0 * first, || {
        format!("g=x slope {} max {bound}", x.slope)
    })?;
    Ok(format!("slope {:.5} (tol 2%), g=x slope {:.1e}", one.slope, x.slope))
}

fn curvature_suite() -> Outcome {
    let taus: Vec<f64> = (2..=6).map(|k| 10f64.powi(-k)).collect();
    let r = curvature_limit_check(&curvature_fixture(), &IndexSet::new([0]), C::new(0.0, 0.0), &taus, 0.5)
        .map_err(|e| e.to_string())?;
    ensure(r.decreasing, || "error not decreasing".into())?;
    ensure(r.final_relative_error < 1e-2, || format!("final error {}", r.final_relative_error))?;
    Ok(format!("final relative error {:.2e} (tol 1e-2)", r.final_relative_error))
}

fn expansion_suite() -> Outcome {
    let ray = Ray { exponents: vec![1.0] };
    let w = C::new(0.0, 0.0);
    let cases = [
        (case_c(), FitTarget::Det, 2),
        (case_b(), FitTarget::Det, 1),
        (case_a(), FitTarget::Section(CASE_A_SECTION), 0),
    ];
    let mut ms = Vec::new();
    for (orbit, target, want) in cases {
        let f = expansion_fit(&orbit, &ray, w, target, &default_taus()).map_err(|e| e.to_string())?;
        ensure(f.m == want && f.residual < 1e-2, || format!("m = {} (want {want}), residual {}", f.m, f.residual))?;
        ms.push(f.m);
    }
    Ok(format!("m = {ms:?}, residual < 1e-2"))
}

fn siegel_suite() -> Outcome {
    let tol = 0.05;
    let grid = log_grid(0, 6, 4);
    let fam = Family::parse("y=(T,1)").map_err(|e| e.to_string())?;
    let min = boundedness_probe(&ConeSpec::sigma_hat(), &fam, &grid, Parabolic::Minimal).map_err(|e| e.to_string())?;
    let ratio = min.monitors[0].slope;
    ensure(min.verdict == Verdict::Escapes && (ratio + 1.0).abs() <= tol, || format!("minimal: slope {ratio}"))?;
    let max = boundedness_probe(&ConeSpec::sigma_hat_swapped(), &fam, &grid, Parabolic::Maximal)
        .map_err(|e| e.to_string())?;
    let b1 = max.monitors[0].slope;
    ensure(max.verdict == Verdict::Escapes && (b1 - 1.0).abs() <= tol, || format!("maximal: slope {b1}"))?;
    let one = Family::parse("y=(T)").map_err(|e| e.to_string())?;
    for par in [Parabolic::Minimal, Parabolic::Maximal] {
        let r = boundedness_probe(&ConeSpec::one_variable(), &one, &grid, par).map_err(|e| e.to_string())?;
        ensure(r.verdict == Verdict::Contained, || format!("one-variable {par:?} escapes"))?;
    }
    Ok(format!("slopes {ratio:.4} and {b1:.4} (tol 0.05), one-variable contained"))
}

fn symmetric(r: &mut impl Rng, d: usize) -> RationalMatrix {
    let mut q = RationalMatrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let x = rat(r.gen_range(-3..=3));
            q[(i, j)] = x.clone();
            q[(j, i)] = x;
        }
    }
    q
}

fn random_triple(r: &mut impl Rng) -> CurvatureTriple {
    let (t, w, u) = (r.gen_range(1..=3), r.gen_range(1..=3), r.gen_range(1..=3));
    let a = (0..u)
        .map(|_| (0..t).map(|_| (0..w).map(|_| rat(r.gen_range(-3..=3))).collect()).collect())
        .collect();
    let m = symmetric(r, u);
    let metric = (0..u).map(|i| (0..u).map(|j| m[(i, j)].clone()).collect()).collect();
    CurvatureTriple::new(t, w, u, a, metric).expect("consistent dimensions")
}

fn positivity_suite() -> Outcome {
    let mut r = rng(10);
    let mut nonsingular = 0;
    while nonsingular < 50 {
        let d = 2 + nonsingular % 2;
        let q = symmetric(&mut r, d);
        if q.rank() < d {
            ensure(!sigma_weight1(&q).map_err(|e| e.to_string())?.injective, || format!("degenerate {q:?} injective"))?;
            continue;
        }
        ensure(sigma_weight1(&q).map_err(|e| e.to_string())?.injective, || format!("{q:?} not injective"))?;
        nonsingular += 1;
    }
    let mut degenerate = 0;
    for a in -2..=2 {
        for b in -2..=2 {
            for c in -2..=2 {
                if a * c == b * b {
                    let q = RationalMatrix::from_ints(&[[a, b], [b, c]]);
                    ensure(!sigma_weight1(&q).map_err(|e| e.to_string())?.injective, || format!("{q:?}"))?;
                    degenerate += 1;
                }
            }
        }
    }
    for seed in 0..100u64 {
        let mut r = rng(1000 + seed);
        let c = random_triple(&mut r);
        let (t, w, _) = c.dims();
        let e: Vec<Rational> = (0..w).map(|_| rat(r.gen_range(-5..=5))).collect();
        let xi: Vec<Rational> = (0..t).map(|_| rat(r.gen_range(-5..=5))).collect();
        let check = curvature_identity_check(&c, &e, &xi).map_err(|e| e.to_string())?;
        ensure(check.matches, || format!("identity fails, seed {seed}"))?;
    }
    Ok(format!("50 nonsingular, {degenerate} degenerate, 100 exact identities"))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 10] = [
        ("genus-2 golden", 1, genus2_golden),
        ("membership", 1, membership),
        ("farkas suite", 30, farkas_suite),
        ("weight filtrations", 30, weight_suite),
        ("LMHS complexes", 5, lmhs_suite),
        ("residue slope", 60, residue_suite),
        ("curvature restriction", 60, curvature_suite),
        ("expansion exponents", 60, expansion_suite),
        ("Siegel probes", 5, siegel_suite),
        ("positivity", 10, positivity_suite),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*budget);
        let (verdict, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("{verdict} {:>2} {name}: {detail} [{:.3}s / {budget}s]", i + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

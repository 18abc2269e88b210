//! Weight complexes for one-parameter semistable degenerations of surfaces with
//! normal-crossing central fiber, the dimensions of the graded pieces of the limit
//! mixed Hodge structure, and the triple point / Friedman checks.
//!
//! Sign conventions. Double curves `D_ij` are indexed with `i < j` and triple points
//! with `i < j < k`.
//! - `R : H⁰(X^[1]) → H⁰(X^[2])` is `(Rf)_ij = f_j − f_i`.
//! - `R : H⁰(X^[2]) → H⁰(X^[3])` is `(Rg)_ijk = g_jk − g_ik + g_ij`.
//! - Each Gysin map `G` is the transpose of the restriction map it is dual to.
//! - `G'(1_{D_ij}) = [D_ij]|X_i − [D_ij]|X_j`.
//! - `R'` sends a class `C` on `X_m` to `±(C·D)` on every double curve `D ⊂ X_m`.
//!   The sign is `+` when `m` is the smaller index of `D`.
//!
//! With these choices `R'G' + GR = 0` holds exactly when every double curve satisfies
//! `D²|X_i + D²|X_j + t_D = 0`, where `t_D` counts the triple points on `D`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{image, kernel, rat, Rational, RationalMatrix, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LmhsError {
    #[error("incidence error: {0}")]
    IncidenceError(String),
    #[error("composition {0} is nonzero")]
    NotAComplex(&'static str),
    #[error("odd-weight restriction map must be supplied when both H¹(X^[1]) and H¹(X^[2]) are nonzero")]
    MissingOddMap,
    #[error("dual graph is disconnected")]
    Disconnected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    #[serde(default)]
    pub name: String,
    /// `h⁰ … h⁴`.
    pub h: [usize; 5],
    /// Integer relations among the classes of the double curves lying on this
    /// component, indexed in the global double-curve order restricted to the
    /// component. Default: the classes are independent.
    #[serde(default)]
    pub class_relations: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleCurve {
    /// 1-based component indices.
    pub components: [usize; 2],
    pub genus: usize,
    /// `D²|X_i`, `D²|X_j` in the order of `components`.
    pub self_intersection: [i64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OddMaps {
    /// `H¹(X^[1]) → H¹(X^[2])`, `Σ 2g × Σ h¹`.
    pub restriction: RationalMatrix,
    /// `H¹(X^[2]) → H³(X^[1])`; defaults to the transpose of `restriction`.
    #[serde(default)]
    pub gysin: Option<RationalMatrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NcdSurface {
    pub components: Vec<Component>,
    pub double_curves: Vec<DoubleCurve>,
    /// 1-based component triples.
    #[serde(default)]
    pub triple_points: Vec<[usize; 3]>,
    #[serde(default)]
    pub odd: Option<OddMaps>,
}

/// Normalized incidence data: curves with `i < j`, triple points sorted.
#[derive(Clone, Debug)]
struct Incidence {
    c: usize,
    curves: Vec<(usize, usize, i64, i64, usize)>,
    points: Vec<(usize, usize, usize)>,
    /// curve index of each face of each triple point: (jk, ik, ij)
    faces: Vec<[usize; 3]>,
}

impl NcdSurface {
    fn incidence(&self) -> Result<Incidence, LmhsError> {
        let c = self.components.len();
        let bad = |s: String| LmhsError::IncidenceError(s);
        let mut curves = Vec::new();
        for (n, d) in self.double_curves.iter().enumerate() {
            let [a, b] = d.components;
            if a == 0 || b == 0 || a > c || b > c || a == b {
                return Err(bad(format!("double curve {} has invalid components", n + 1)));
            }
            let (i, j, si, sj) = if a < b {
                (a - 1, b - 1, d.self_intersection[0], d.self_intersection[1])
            } else {
                (b - 1, a - 1, d.self_intersection[1], d.self_intersection[0])
            };
            curves.push((i, j, si, sj, d.genus));
        }
        let find = |i: usize, j: usize| -> Result<usize, LmhsError> {
            let hits: Vec<usize> =
                curves.iter().enumerate().filter(|(_, x)| x.0 == i && x.1 == j).map(|(n, _)| n).collect();
            match hits.as_slice() {
                [n] => Ok(*n),
                [] => Err(bad(format!("no double curve between components {} and {}", i + 1, j + 1))),
                _ => Err(bad(format!("ambiguous double curve between {} and {}", i + 1, j + 1))),
            }
        };
        let mut points = Vec::new();
        let mut faces = Vec::new();
        for p in &self.triple_points {
            let mut s = *p;
            s.sort_unstable();
            if s[0] == 0 || s[2] > c || s[0] == s[1] || s[1] == s[2] {
                return Err(bad(format!("invalid triple point {:?}", p)));
            }
            let (i, j, k) = (s[0] - 1, s[1] - 1, s[2] - 1);
            faces.push([find(j, k)?, find(i, k)?, find(i, j)?]);
            points.push((i, j, k));
        }
        Ok(Incidence { c, curves, points, faces })
    }

    /// Number of triple points on each double curve.
    pub fn triple_counts(&self) -> Result<Vec<usize>, LmhsError> {
        let inc = self.incidence()?;
        let mut t = vec![0; inc.curves.len()];
        for f in &inc.faces {
            for &d in f {
                t[d] += 1;
            }
        }
        Ok(t)
    }
}

/// The complexes computing the graded pieces `I₀ … I₄`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightComplexes {
    /// `R : H⁰(X^[1]) → H⁰(X^[2])`.
    pub r1: RationalMatrix,
    /// `R : H⁰(X^[2]) → H⁰(X^[3])`.
    pub r2: RationalMatrix,
    /// `G : H⁰(X^[3])(−2) → H²(X^[2])(−1)`.
    pub g1: RationalMatrix,
    /// `G : H²(X^[2])(−1) → H⁴(X^[1])`.
    pub g2: RationalMatrix,
    /// `G' ⊕ R : H⁰(X^[2])(−1) → H²(X^[1]) ⊕ H⁰(X^[3])(−1)`.
    pub mid_in: RationalMatrix,
    /// `R' + G : H²(X^[1]) ⊕ H⁰(X^[3])(−1) → H²(X^[2])`.
    pub mid_out: RationalMatrix,
    /// `R : H¹(X^[1]) → H¹(X^[2])`.
    pub odd_r: RationalMatrix,
    /// `G : H¹(X^[2])(−1) → H³(X^[1])`.
    pub odd_g: RationalMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    pub i0: usize,
    pub i1: usize,
    pub i2: usize,
    pub i3: usize,
    pub i4: usize,
}

/// Intersection number on `X_m` of double curves `a`, `b` (both on `X_m`).
fn intersection(inc: &Incidence, m: usize, a: usize, b: usize) -> Rational {
    let (ai, aj, asi, asj, _) = inc.curves[a];
    if a == b {
        return rat(if ai == m { asi } else { asj });
    }
    let (bi, bj, ..) = inc.curves[b];
    let mut comps = vec![ai, aj, bi, bj];
    comps.sort_unstable();
    comps.dedup();
    if comps.len() != 3 || !comps.contains(&m) {
        return Rational::zero();
    }
    let n = inc.points.iter().filter(|p| [p.0, p.1, p.2] == comps[..]).count();
    rat(n as i64)
}

pub fn build_weight_complexes(x: &NcdSurface) -> Result<WeightComplexes, LmhsError> {
    let inc = x.incidence()?;
    let (c, e, t) = (inc.c, inc.curves.len(), inc.points.len());

    let mut r1 = RationalMatrix::zeros(e, c);
    for (d, &(i, j, ..)) in inc.curves.iter().enumerate() {
        r1[(d, j)] += rat(1);
        r1[(d, i)] -= rat(1);
    }
    let mut r2 = RationalMatrix::zeros(t, e);
    for (p, f) in inc.faces.iter().enumerate() {
        for (&d, s) in f.iter().zip([1, -1, 1]) {
            r2[(p, d)] += rat(s);
        }
    }
    let g1 = r2.transpose();
    let g2 = r1.transpose();

    // H²(X_m): quotient of the formal double-curve classes by the declared relations,
    // followed by the orthogonal padding.
    let mut blocks = Vec::new(); // (curves on m, projection Π, section S, pad)
    for (m, comp) in x.components.iter().enumerate() {
        let on_m: Vec<usize> =
            (0..e).filter(|&d| inc.curves[d].0 == m || inc.curves[d].1 == m).collect();
        let nm = on_m.len();
        for r in &comp.class_relations {
            if r.len() != nm {
                return Err(LmhsError::IncidenceError(format!(
                    "relation on component {} must have {} entries",
                    m + 1,
                    nm
                )));
            }
            for &b in &on_m {
                let v: Rational = on_m.iter().zip(r).map(|(&a, &ra)| intersection(&inc, m, a, b) * rat(ra)).sum();
                if !v.is_zero() {
                    return Err(LmhsError::IncidenceError(format!(
                        "relation on component {} is not numerically trivial",
                        m + 1
                    )));
                }
            }
        }
        let rel = Subspace::span(&RationalMatrix::from_rows(
            comp.class_relations.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect(),
            nm,
        ));
        let proj = crate::linalg::orthogonal_complement(&rel).basis().clone(); // r × nm, kernel = rel
        let rank = proj.rows();
        if comp.h[2] < rank {
            return Err(LmhsError::IncidenceError(format!(
                "h² of component {} is smaller than the span of its double-curve classes",
                m + 1
            )));
        }
        // S = Πᵀ(ΠΠᵀ)⁻¹
        let section = if rank == 0 {
            RationalMatrix::zeros(nm, 0)
        } else {
            proj.transpose().mul(&proj.mul(&proj.transpose()).inverse().expect("independent rows"))
        };
        blocks.push((on_m, proj, section, comp.h[2] - rank));
    }
    let h2_dims: Vec<usize> = blocks.iter().map(|b| b.1.rows() + b.3).collect();
    let h2_total: usize = h2_dims.iter().sum();
    let offsets: Vec<usize> = h2_dims.iter().scan(0, |acc, &d| {
        let o = *acc;
        *acc += d;
        Some(o)
    }).collect();

    // G' : H⁰(X^[2]) → H²(X^[1])
    let mut g_prime = RationalMatrix::zeros(h2_total, e);
    // R' : H²(X^[1]) → H²(X^[2])
    let mut r_prime = RationalMatrix::zeros(e, h2_total);
    for (m, (on_m, proj, section, _)) in blocks.iter().enumerate() {
        for (local, &d) in on_m.iter().enumerate() {
            let sign = if inc.curves[d].0 == m { 1 } else { -1 };
            for r in 0..proj.rows() {
                g_prime[(offsets[m] + r, d)] += &proj[(r, local)] * rat(sign);
            }
        }
        // formal R' on X_m: class a ↦ Σ_{D ∋ m} ±(a·D) 1_D, composed with the section
        for (lb, &b) in on_m.iter().enumerate() {
            let sign = if inc.curves[b].0 == m { 1 } else { -1 };
            for q in 0..section.cols() {
                let mut v = Rational::zero();
                for (la, &a) in on_m.iter().enumerate() {
                    v += &section[(la, q)] * intersection(&inc, m, a, b);
                }
                r_prime[(b, offsets[m] + q)] += v * rat(sign);
            }
            let _ = lb;
        }
    }
    let mid_in = g_prime.vstack(&r2);
    let mut mid_out = RationalMatrix::zeros(e, h2_total + t);
    for i in 0..e {
        for j in 0..h2_total {
            mid_out[(i, j)] = r_prime[(i, j)].clone();
        }
        for j in 0..t {
            mid_out[(i, h2_total + j)] = g1[(i, j)].clone();
        }
    }

    let h1: usize = x.components.iter().map(|c| c.h[1]).sum();
    let h3: usize = x.components.iter().map(|c| c.h[3]).sum();
    let g_curves: usize = 2 * inc.curves.iter().map(|c| c.4).sum::<usize>();
    let (odd_r, odd_g) = match &x.odd {
        Some(o) => {
            if o.restriction.rows() != g_curves || o.restriction.cols() != h1 {
                return Err(LmhsError::IncidenceError("odd restriction has wrong shape".into()));
            }
            let g = o.gysin.clone().unwrap_or_else(|| o.restriction.transpose());
            if g.rows() != h3 || g.cols() != g_curves {
                return Err(LmhsError::IncidenceError("odd Gysin map has wrong shape".into()));
            }
            (o.restriction.clone(), g)
        }
        None if h1 == 0 || g_curves == 0 => {
            (RationalMatrix::zeros(g_curves, h1), RationalMatrix::zeros(h3, g_curves))
        }
        None => return Err(LmhsError::MissingOddMap),
    };
    Ok(WeightComplexes { r1, r2, g1, g2, mid_in, mid_out, odd_r, odd_g })
}

impl WeightComplexes {
    fn compositions(&self) -> [(&'static str, RationalMatrix); 3] {
        [
            ("R∘R", self.r2.mul(&self.r1)),
            ("G∘G", self.g2.mul(&self.g1)),
            ("(R'⊕G)∘(G'⊕R)", self.mid_out.mul(&self.mid_in)),
        ]
    }

    fn check(&self) -> Result<(), LmhsError> {
        for (name, m) in self.compositions() {
            if !m.is_zero() {
                return Err(LmhsError::NotAComplex(name));
            }
        }
        Ok(())
    }
}

pub fn graded_dims(w: &WeightComplexes) -> Result<GradedDims, LmhsError> {
    w.check()?;
    let t = w.r2.rows();
    let gc = w.odd_r.rows();
    let mid = w.mid_out.cols();
    Ok(GradedDims {
        i4: t - w.g1.rank(),
        i0: t - w.r2.rank(),
        i3: gc - w.odd_g.rank(),
        i1: gc - w.odd_r.rank(),
        i2: mid - w.mid_out.rank() - w.mid_in.rank(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TriplePointCheck {
    pub curve: [usize; 2],
    pub lhs: i64,
    pub pass: bool,
}

/// `D²|X_i + D²|X_j + t_D = 0` per double curve.
pub fn triple_point_check(x: &NcdSurface) -> Result<Vec<TriplePointCheck>, LmhsError> {
    let inc = x.incidence()?;
    let t = x.triple_counts()?;
    Ok(inc
        .curves
        .iter()
        .zip(t)
        .map(|(&(i, j, si, sj, _), t)| {
            let lhs = si + sj + t as i64;
            TriplePointCheck { curve: [i + 1, j + 1], lhs, pass: lhs == 0 }
        })
        .collect())
}

/// All consecutive compositions vanish, in particular `(R'⊕G)∘(G'⊕R) = 0`.
pub fn friedman_check(w: &WeightComplexes) -> bool {
    w.check().is_ok()
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainIso {
    pub source_dim: usize,
    pub target_dim: usize,
    pub matrix: RationalMatrix,
    pub iso: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonodromyReport {
    /// `N² : I₄ → I₀`, induced by the identity of `H⁰(X^[3])`.
    pub hodge_tate: ChainIso,
    /// `N : I₃ → I₁`, induced by the identity of `H¹(X^[2])`.
    pub odd: ChainIso,
}

/// Matrix of `ker G ⊂ E → E / im R` induced by the identity of `E`.
fn kernel_to_cokernel(g: &RationalMatrix, r: &RationalMatrix) -> ChainIso {
    let n = g.cols();
    let ker = kernel(g);
    let im = image(r);
    let full = Subspace::full(n);
    let reps = Subspace::span(&full.complement_of(&im));
    let mut m = RationalMatrix::zeros(reps.dim(), ker.dim());
    for (j, v) in ker.basis_vecs().iter().enumerate() {
        let c = reps.coordinates(&im.reduce(v)).expect("complement spans the quotient");
        for (i, x) in c.into_iter().enumerate() {
            m[(i, j)] = x;
        }
    }
    let iso = m.rows() == m.cols() && m.rank() == m.rows();
    ChainIso { source_dim: ker.dim(), target_dim: reps.dim(), matrix: m, iso }
}

pub fn monodromy_graded_maps(w: &WeightComplexes) -> Result<MonodromyReport, LmhsError> {
    w.check()?;
    Ok(MonodromyReport {
        hodge_tate: kernel_to_cokernel(&w.g1, &w.r2),
        odd: kernel_to_cokernel(&w.odd_g, &w.odd_r),
    })
}

/// Dual graph of a nodal curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualGraph {
    pub genera: Vec<usize>,
    /// 0-based vertex pairs; loops and multi-edges allowed.
    pub edges: Vec<[usize; 2]>,
}

/// `(dim Gr₀, dim Gr₁, dim Gr₂) = (b₁, 2Σg, b₁)` of the limit of a curve degeneration.
pub fn curve_lmhs(g: &DualGraph) -> Result<(usize, usize, usize), LmhsError> {
    let v = g.genera.len();
    if v == 0 {
        return Err(LmhsError::Disconnected);
    }
    let mut parent: Vec<usize> = (0..v).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &[a, b] in &g.edges {
        if a >= v || b >= v {
            return Err(LmhsError::IncidenceError(format!("edge ({a},{b}) out of range")));
        }
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        parent[ra] = rb;
    }
    let r0 = root(&mut parent, 0);
    if (0..v).any(|x| root(&mut parent, x) != r0) {
        return Err(LmhsError::Disconnected);
    }
    let b1 = g.edges.len() + 1 - v;
    Ok((b1, 2 * g.genera.iter().sum::<usize>(), b1))
}

/// Shipped configurations.
pub mod examples {
    use super::*;

    fn comp(h2: usize) -> Component {
        Component { name: String::new(), h: [1, 0, h2, 0, 1], class_relations: vec![] }
    }

    fn curve(a: usize, b: usize, g: usize, s: [i64; 2]) -> DoubleCurve {
        DoubleCurve { components: [a, b], genus: g, self_intersection: s }
    }

    /// Two surfaces glued along a curve of genus `g` with `D²|X₁ = −D²|X₂`.
    pub fn two_components(g: usize, s: i64) -> NcdSurface {
        let mut x1 = comp(2);
        let mut x2 = comp(2);
        x1.h[1] = 0;
        x2.h[1] = 0;
        NcdSurface {
            components: vec![x1, x2],
            double_curves: vec![curve(1, 2, g, [s, -s])],
            triple_points: vec![],
            odd: None,
        }
    }

    /// Three surfaces meeting pairwise along rational curves through one triple point.
    pub fn triangle() -> NcdSurface {
        NcdSurface {
            components: vec![comp(3), comp(3), comp(3)],
            double_curves: vec![curve(1, 2, 0, [-1, 0]), curve(1, 3, 0, [0, -1]), curve(2, 3, 0, [-1, 0])],
            triple_points: vec![[1, 2, 3]],
            odd: None,
        }
    }

    /// Four blown-up planes in tetrahedral position; each edge carries two triple points.
    pub fn tetrahedron() -> NcdSurface {
        let mut curves = Vec::new();
        for i in 1..=4 {
            for j in i + 1..=4 {
                curves.push(curve(i, j, 0, [-1, -1]));
            }
        }
        NcdSurface {
            components: (0..4).map(|_| comp(4)).collect(),
            double_curves: curves,
            triple_points: vec![[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]],
            odd: None,
        }
    }

    /// Tetrahedron of plain planes: each `X_i = ℙ²`, whose three lines share one class.
    /// Violates the triple point formula (the total space is singular).
    pub fn tetrahedron_of_planes() -> NcdSurface {
        let mut x = tetrahedron();
        for c in &mut x.components {
            c.h[2] = 1;
            c.class_relations = vec![vec![1, -1, 0], vec![0, 1, -1]];
        }
        for d in &mut x.double_curves {
            d.self_intersection = [1, 1];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    #[test]
    fn two_components_dims() {
        let x = two_components(2, -1);
        assert!(triple_point_check(&x).unwrap().iter().all(|c| c.pass));
        let w = build_weight_complexes(&x).unwrap();
        assert_eq!(w.mid_in.cols(), 1);
        let d = graded_dims(&w).unwrap();
        assert_eq!((d.i4, d.i0), (0, 0));
        assert_eq!((d.i3, d.i1), (4, 4));
    }

    #[test]
    fn friedman_matches_triple_point() {
        for x in [triangle(), tetrahedron(), two_components(1, 3)] {
            assert!(triple_point_check(&x).unwrap().iter().all(|c| c.pass));
            let w = build_weight_complexes(&x).unwrap();
            assert!(friedman_check(&w));
            let d = graded_dims(&w).unwrap();
            assert_eq!(d.i4, d.i0);
            assert_eq!(d.i3, d.i1);
        }
        let mut bad = triangle();
        bad.double_curves[0].self_intersection = [0, 0];
        assert!(!triple_point_check(&bad).unwrap()[0].pass);
        let w = build_weight_complexes(&bad).unwrap();
        assert!(!friedman_check(&w));
        assert!(matches!(graded_dims(&w), Err(LmhsError::NotAComplex(_))));
    }

    #[test]
    fn tetrahedron_is_type_iii() {
        let w = build_weight_complexes(&tetrahedron()).unwrap();
        let d = graded_dims(&w).unwrap();
        assert_eq!((d.i4, d.i0), (1, 1));
        let m = monodromy_graded_maps(&w).unwrap();
        assert!(m.hodge_tate.iso);
    }

    #[test]
    fn planes_fail_friedman() {
        let x = tetrahedron_of_planes();
        assert!(triple_point_check(&x).unwrap().iter().all(|c| !c.pass));
        assert!(!friedman_check(&build_weight_complexes(&x).unwrap()));
    }

    #[test]
    fn triple_point_identity() {
        let mk = |s: [i64; 2], t: usize| {
            let mut x = two_components(0, 0);
            x.double_curves[0].self_intersection = s;
            // attach t triple points through extra components
            for n in 0..t {
                let k = x.components.len() + 1;
                x.components.push(Component { name: String::new(), h: [1, 0, 2, 0, 1], class_relations: vec![] });
                x.double_curves.push(DoubleCurve { components: [1, k], genus: 0, self_intersection: [0, 0] });
                x.double_curves.push(DoubleCurve { components: [2, k], genus: 0, self_intersection: [0, 0] });
                x.triple_points.push([1, 2, k]);
                let _ = n;
            }
            triple_point_check(&x).unwrap()[0].pass
        };
        assert!(mk([-1, 0], 1));
        assert!(mk([-2, 0], 2));
        assert!(!mk([0, 0], 1));
    }

    #[test]
    fn broken_rank_is_not_iso() {
        let mut w = build_weight_complexes(&tetrahedron()).unwrap();
        w.g1 = RationalMatrix::zeros(w.g1.rows(), w.g1.cols());
        let m = monodromy_graded_maps(&w).unwrap();
        assert!(!m.hodge_tate.iso);
        let empty = WeightComplexes {
            r1: RationalMatrix::zeros(0, 0),
            r2: RationalMatrix::zeros(0, 0),
            g1: RationalMatrix::zeros(0, 0),
            g2: RationalMatrix::zeros(0, 0),
            mid_in: RationalMatrix::zeros(0, 0),
            mid_out: RationalMatrix::zeros(0, 0),
            odd_r: RationalMatrix::zeros(0, 0),
            odd_g: RationalMatrix::zeros(0, 0),
        };
        assert!(friedman_check(&empty));
        assert!(monodromy_graded_maps(&empty).unwrap().hodge_tate.iso);
    }

    #[test]
    fn curves() {
        let dollar = DualGraph { genera: vec![0, 0], edges: vec![[0, 1], [0, 1], [0, 1]] };
        assert_eq!(curve_lmhs(&dollar).unwrap(), (2, 0, 2));
        assert_eq!(curve_lmhs(&DualGraph { genera: vec![2], edges: vec![] }).unwrap(), (0, 4, 0));
        assert_eq!(curve_lmhs(&DualGraph { genera: vec![1, 1], edges: vec![[0, 1]] }).unwrap(), (0, 4, 0));
        assert_eq!(
            curve_lmhs(&DualGraph { genera: vec![1, 1], edges: vec![] }),
            Err(LmhsError::Disconnected)
        );
    }
}

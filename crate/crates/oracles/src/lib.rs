//! Brute-force references for the exact algorithms in `hsbb-core`, and the seeded
//! generators the test suites draw from. Everything here trades speed for an
//! argument that is easy to check by hand.

use std::collections::BTreeMap;

use hsbb_core::linalg::{rat, solve, Rational, RationalMatrix, Subspace};
use hsbb_core::{IndexSet, NilpotentCone, Symmetry};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn columns(a: &RationalMatrix, cols: &[usize]) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(a.rows(), cols.len());
    for (j, &c) in cols.iter().enumerate() {
        for i in 0..a.rows() {
            m[(i, j)] = a[(i, c)].clone();
        }
    }
    m
}

/// `∃ x ≥ 0 : Ax = b`, decided by trying every set of linearly independent columns
/// (a feasible system has a basic feasible solution).
pub fn feasible_by_supports(a: &RationalMatrix, b: &[Rational]) -> bool {
    let n = a.cols();
    if b.iter().all(Zero::is_zero) {
        return true;
    }
    for mask in 1u32..(1 << n) {
        let cols: Vec<usize> = (0..n).filter(|&j| mask & (1 << j) != 0).collect();
        let sub = columns(a, &cols);
        if sub.rank() != cols.len() {
            continue;
        }
        if let Some(x) = solve(&sub, b) {
            if x.iter().all(|v| !v.is_negative()) {
                return true;
            }
        }
    }
    false
}

fn coordinate_subspace(k: usize, support: &[usize]) -> Subspace {
    let vecs: Vec<Vec<Rational>> = support
        .iter()
        .map(|&i| (0..k).map(|j| if i == j { rat(1) } else { rat(0) }).collect())
        .collect();
    Subspace::from_vectors(k, &vecs)
}

/// Supports of the extreme rays of `S ∩ ℝᵏ_{≥0}`: the sets `J` for which `S ∩ ℝ^J` is a
/// line spanned by a vector of constant sign with support exactly `J`.
pub fn extreme_ray_supports(s: &Subspace) -> Vec<IndexSet> {
    let k = s.ambient_dim();
    let mut out = Vec::new();
    for mask in 1u64..(1 << k) {
        let support: Vec<usize> = (0..k).filter(|&j| mask & (1 << j) != 0).collect();
        let line = s.intersection(&coordinate_subspace(k, &support));
        if line.dim() != 1 {
            continue;
        }
        let v = &line.basis_vecs()[0];
        let exact = (0..k).all(|j| v[j].is_zero() != support.contains(&j));
        let pos = support.iter().all(|&j| v[j].is_positive());
        let neg = support.iter().all(|&j| v[j].is_negative());
        if exact && (pos || neg) {
            out.push(IndexSet::new(support));
        }
    }
    out
}

/// Largest support of a nonnegative vector in `S`, as the union of extreme-ray supports.
pub fn max_nonnegative_support(s: &Subspace) -> IndexSet {
    IndexSet::new(extreme_ray_supports(s).iter().flat_map(|j| j.indices().to_vec()).collect::<Vec<_>>())
}

/// `W_ℓ(N)` built by Deligne's recursion: on a subquotient `A/B` with `N^{l+1} = 0`,
/// `W_l = A`, `W_{−l−1} = B`, and one recurses on `ker N^l ⊇ im N^l`.
#[derive(Clone, Debug)]
pub struct OracleFiltration {
    dim: usize,
    steps: BTreeMap<i64, Subspace>,
}

impl OracleFiltration {
    pub fn step(&self, l: i64) -> Subspace {
        match self.steps.range(..=l).next_back() {
            Some((_, s)) => s.clone(),
            None => Subspace::zero(self.dim),
        }
    }

    pub fn levels(&self) -> impl Iterator<Item = i64> + '_ {
        self.steps.keys().copied()
    }
}

pub fn recursive_weight_filtration(n: &RationalMatrix, center: i64) -> OracleFiltration {
    let d = n.rows();
    let mut l = 0u32;
    while !n.pow(l + 1).is_zero() {
        l += 1;
    }
    let mut steps = BTreeMap::new();
    let (mut a, mut b) = (Subspace::full(d), Subspace::zero(d));
    let mut l = l as i64;
    loop {
        steps.insert(center + l, a.clone());
        steps.insert(center - l - 1, b.clone());
        if l <= 0 {
            break;
        }
        let nl = n.pow(l as u32);
        let next_a = b.preimage(&nl).intersection(&a);
        let next_b = a.map(&nl).sum(&b);
        a = next_a;
        b = next_b;
        l -= 1;
    }
    OracleFiltration { dim: d, steps }
}

/// Checks the two defining properties of a weight filtration centered at `center` on
/// `ℚ^d`, given its steps: `N W_ℓ ⊆ W_{ℓ−2}`, and `N^j : Gr_{c+j} → Gr_{c−j}` is onto
/// between spaces of equal dimension for every `j ≥ 1`.
pub fn satisfies_weight_properties(n: &RationalMatrix, center: i64, step: impl Fn(i64) -> Subspace) -> bool {
    let d = n.rows() as i64;
    let (lo, hi) = (center - d - 1, center + d + 1);
    if step(lo).dim() != 0 || !step(hi).is_full() {
        return false;
    }
    for l in lo..=hi {
        if !step(l).contains_subspace(&step(l - 1)) || !step(l - 2).contains_subspace(&step(l).map(n)) {
            return false;
        }
    }
    let gr = |l: i64| step(l).dim() - step(l - 1).dim();
    for j in 1..=d {
        if gr(center + j) != gr(center - j) {
            return false;
        }
        let image = step(center + j).map(&n.pow(j as u32)).sum(&step(center - j - 1));
        if image != step(center - j) {
            return false;
        }
    }
    true
}

/// A subspace of `ℚᵏ` spanned by sparse small-integer vectors, some of them nonnegative,
/// so that both sides of the Farkas split occur.
pub fn random_subspace(rng: &mut impl Rng, k: usize) -> Subspace {
    let m = rng.gen_range(0..=k);
    let vecs: Vec<Vec<Rational>> = (0..m)
        .map(|_| {
            let nonneg = rng.gen_bool(0.4);
            (0..k)
                .map(|_| {
                    if rng.gen_bool(0.45) {
                        rat(0)
                    } else if nonneg {
                        rat(rng.gen_range(1..=3))
                    } else {
                        rat(rng.gen_range(-3..=3))
                    }
                })
                .collect()
        })
        .collect();
    Subspace::from_vectors(k, &vecs)
}

/// A system `(A, b)` with at most six columns.
pub fn random_system(rng: &mut impl Rng) -> (RationalMatrix, Vec<Rational>) {
    let rows = rng.gen_range(1..=4);
    let cols = rng.gen_range(1..=6);
    let mut a = RationalMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            a[(i, j)] = rat(rng.gen_range(-3..=3));
        }
    }
    let b = (0..rows).map(|_| rat(rng.gen_range(-3..=3))).collect();
    (a, b)
}

/// Random Jordan type conjugated by a random invertible integer matrix; `dim ≤ max_dim`.
pub fn random_nilpotent(rng: &mut impl Rng, max_dim: usize) -> RationalMatrix {
    let d = rng.gen_range(1..=max_dim);
    let mut j = RationalMatrix::zeros(d, d);
    let mut start = 0;
    while start < d {
        let size = rng.gen_range(1..=d - start);
        for i in start..start + size - 1 {
            j[(i, i + 1)] = rat(1);
        }
        start += size;
    }
    if rng.gen_bool(0.2) {
        return j;
    }
    loop {
        let mut p = RationalMatrix::zeros(d, d);
        for r in 0..d {
            for c in 0..d {
                p[(r, c)] = rat(rng.gen_range(-2..=2));
            }
        }
        if let Some(inv) = p.inverse() {
            return p.mul(&j).mul(&inv);
        }
    }
}

/// Standard alternating form on `ℚ^{2g}` in the basis `e₁…e_g, f₁…f_g`.
pub fn symplectic_form(g: usize) -> RationalMatrix {
    let mut q = RationalMatrix::zeros(2 * g, 2 * g);
    for i in 0..g {
        q[(i, g + i)] = rat(-1);
        q[(g + i, i)] = rat(1);
    }
    q
}

fn block(s: &[Vec<i64>]) -> RationalMatrix {
    let g = s.len();
    let mut n = RationalMatrix::zeros(2 * g, 2 * g);
    for a in 0..g {
        for b in 0..g {
            n[(a, g + b)] = rat(s[a][b]);
        }
    }
    n
}

/// A weight-1 cone `N_i = (0 S_i; 0 0)` with each `S_i` a sum of one or two rank-one
/// squares `vvᵀ`, as for Picard–Lefschetz monodromies. Generators are nonzero.
pub fn random_period_cone(rng: &mut impl Rng, g: usize, k: usize) -> NilpotentCone {
    let gens = (0..k)
        .map(|_| {
            let mut s = vec![vec![0i64; g]; g];
            for _ in 0..rng.gen_range(1..=2) {
                let mut v: Vec<i64> = (0..g).map(|_| rng.gen_range(-1..=1)).collect();
                if v.iter().all(|&x| x == 0) {
                    v[rng.gen_range(0..g)] = 1;
                }
                for a in 0..g {
                    for b in 0..g {
                        s[a][b] += v[a] * v[b];
                    }
                }
            }
            block(&s)
        })
        .collect();
    NilpotentCone::new(2 * g, 1, symplectic_form(g), Symmetry::Alternating, gens).expect("valid period cone")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_block() {
        let mut n = RationalMatrix::zeros(3, 3);
        n[(0, 1)] = rat(1);
        n[(1, 2)] = rat(1);
        let w = recursive_weight_filtration(&n, 0);
        assert_eq!(w.step(-3).dim(), 0);
        assert_eq!(w.step(-2).dim(), 1);
        assert_eq!(w.step(-1).dim(), 1);
        assert_eq!(w.step(0).dim(), 2);
        assert_eq!(w.step(1).dim(), 2);
        assert_eq!(w.step(2).dim(), 3);
    }

    #[test]
    fn orthant_and_line() {
        let s = Subspace::from_vectors(3, &[vec![rat(1), rat(1), rat(0)], vec![rat(0), rat(1), rat(-1)]]);
        // (1,1,0) − (0,1,−1) = (1,0,1)
        assert_eq!(max_nonnegative_support(&s), IndexSet::new([0, 1, 2]));
        let t = Subspace::from_vectors(3, &[vec![rat(1), rat(-1), rat(0)]]);
        assert!(max_nonnegative_support(&t).is_empty());
        assert!(feasible_by_supports(&RationalMatrix::from_ints(&[[1, 2]]), &[rat(3)]));
        assert!(!feasible_by_supports(&RationalMatrix::from_ints(&[[1, 2]]), &[rat(-1)]));
    }
}

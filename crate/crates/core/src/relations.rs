//! Relation spaces `S_I`, the Farkas split `K` of a subspace, positive integer
//! bases `𝒞_I` and the index map `I ↦ K_I`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cone::{ConeError, IndexSet, NilpotentCone};
use crate::filtration::{adjoint_filtration, FiltrationError};
use crate::linalg::{
    kernel, lattice_basis, orthogonal_complement, primitive_integer, rational_vec_serde,
    solve, IntVec, Rational, RationalMatrix, Subspace,
};

pub const DEFAULT_MAX_GENERATORS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelationError {
    #[error("K = {given} does not match the Farkas split K = {actual} of S")]
    InvalidSplit { given: IndexSet, actual: IndexSet },
    #[error("S^⊥ is not zero on K = {0}; no basis can vanish there")]
    NotZeroOnSplit(IndexSet),
    #[error("cone has {0} generators, above the cap of {1}")]
    ConeTooLarge(usize, usize),
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
    #[error(transparent)]
    Cone(#[from] ConeError),
}

// ---------------------------------------------------------------------------
// Farkas alternative via exact phase-one simplex

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FarkasResult {
    /// `x ≥ 0` with `Ax = b`.
    Feasible(Vec<Rational>),
    /// `y` with `Aᵀy ≥ 0` and `yᵀb < 0`.
    Infeasible(Vec<Rational>),
}

impl FarkasResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FarkasResult::Feasible(_))
    }

    /// Re-verifies the returned witness against `(A, b)`.
    pub fn verify(&self, a: &RationalMatrix, b: &[Rational]) -> bool {
        match self {
            FarkasResult::Feasible(x) => {
                x.len() == a.cols()
                    && x.iter().all(|v| !v.is_negative())
                    && a.apply(x).iter().zip(b).all(|(l, r)| l == r)
            }
            FarkasResult::Infeasible(y) => {
                y.len() == a.rows()
                    && a.transpose().apply(y).iter().all(|v| !v.is_negative())
                    && crate::linalg::dot(y, b).is_negative()
            }
        }
    }
}

/// Exactly one of `{x ≥ 0 : Ax = b}` and `{y : Aᵀy ≥ 0, yᵀb < 0}` is nonempty;
/// returns a witness for the one that is. Phase-one simplex with Bland's rule.
pub fn farkas_alternative(a: &RationalMatrix, b: &[Rational]) -> FarkasResult {
    let (m, n) = (a.rows(), a.cols());
    assert_eq!(b.len(), m, "rhs length must equal the number of rows");
    let width = n + m;
    // tableau rows: [Â | I | b̂] with rows sign-flipped so that b̂ ≥ 0
    let mut sign = vec![Rational::one(); m];
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let s = if b[i].is_negative() { -Rational::one() } else { Rational::one() };
            let mut row: Vec<Rational> = a.row(i).iter().map(|x| x * &s).collect();
            row.extend((0..m).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row.push(&b[i] * &s);
            sign[i] = s;
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..width).collect();
    // reduced costs for min Σ artificials; last entry holds −objective
    let mut cost = vec![Rational::zero(); width + 1];
    for row in &t {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[width] -= &row[width];
    }
    loop {
        let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) else { break };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][width] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // phase one is bounded below by zero, so a leaving row always exists
        let (r, _) = leave.expect("phase-one simplex is bounded");
        let inv = t[r][enter].recip();
        for x in t[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == r || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for (x, p) in cost.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        basis[r] = enter;
    }
    if cost[width].is_zero() {
        let mut x = vec![Rational::zero(); n];
        for (i, &bv) in basis.iter().enumerate() {
            if bv < n {
                x[bv] = t[i][width].clone();
            }
        }
        FarkasResult::Feasible(x)
    } else {
        // multipliers π_j = 1 − (reduced cost of artificial j); y = −S·π
        let y = (0..m).map(|j| -(Rational::one() - &cost[n + j]) * &sign[j]).collect();
        FarkasResult::Infeasible(y)
    }
}

// ---------------------------------------------------------------------------
// Farkas split of a subspace

/// The unique `K` with `v ∈ S ∩ ℝᵏ_{≥0}` supported on `K` and
/// `ṽ ∈ S^⊥ ∩ ℝᵏ_{≥0}` supported on the complement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FarkasSplit {
    #[serde(rename = "K")]
    pub k: IndexSet,
    #[serde(with = "rational_vec_serde")]
    pub v: Vec<Rational>,
    #[serde(with = "rational_vec_serde")]
    pub v_tilde: Vec<Rational>,
}

pub fn farkas_split(s: &Subspace) -> FarkasSplit {
    let k = s.ambient_dim();
    let mu = orthogonal_complement(s).basis().clone();
    let sdim = mu.rows();
    let mut rhs = vec![Rational::zero(); sdim + 1];
    rhs[sdim] = Rational::one();
    let mut v = vec![Rational::zero(); k];
    let mut vt = vec![Rational::zero(); k];
    let mut support = Vec::new();
    for i in 0..k {
        let mut ei = RationalMatrix::zeros(1, k);
        ei[(0, i)] = Rational::one();
        let a = mu.vstack(&ei);
        match farkas_alternative(&a, &rhs) {
            FarkasResult::Feasible(x) => {
                support.push(i);
                for (acc, xi) in v.iter_mut().zip(&x) {
                    *acc += xi;
                }
            }
            FarkasResult::Infeasible(y) => {
                let mut xt = vec![Rational::zero(); k];
                for (ya, row) in y.iter().zip(mu.row_vecs()) {
                    for (acc, r) in xt.iter_mut().zip(&row) {
                        *acc += ya * r;
                    }
                }
                let scale = xt[i].recip();
                for (acc, x) in vt.iter_mut().zip(&xt) {
                    *acc += x * &scale;
                }
            }
        }
    }
    FarkasSplit { k: IndexSet::new(support), v, v_tilde: vt }
}

/// Integer basis of `S^⊥`, zero on `K` and strictly positive off `K`.
///
/// Starts from the HNF basis of `S^⊥ ∩ ℤᵏ`, puts the integral certificate `c` (from `ṽ`)
/// first in place of one lattice row, then adds to each other row the least
/// `n ≥ 0` with `row + n·c > 0` off `K`.
pub fn positive_basis(s: &Subspace, k_set: &IndexSet) -> Result<RationalMatrix, RelationError> {
    let k = s.ambient_dim();
    let split = farkas_split(s);
    if split.k != *k_set {
        return Err(RelationError::InvalidSplit { given: k_set.clone(), actual: split.k });
    }
    let perp = orthogonal_complement(s);
    if perp.is_zero() {
        return Ok(RationalMatrix::zeros(0, k));
    }
    if perp.basis_vecs().iter().any(|r| k_set.indices().iter().any(|&i| !r[i].is_zero())) {
        return Err(RelationError::NotZeroOnSplit(k_set.clone()));
    }
    let lattice = lattice_basis(&perp);
    let c = primitive_integer(&split.v_tilde);
    let c_rat: Vec<Rational> = c.iter().cloned().map(Rational::from_integer).collect();
    let coeffs = solve(&lattice.transpose(), &c_rat).expect("certificate lies in S^⊥");
    let replace = coeffs
        .iter()
        .position(|x| x.abs().is_one())
        .or_else(|| coeffs.iter().position(|x| !x.is_zero()))
        .expect("certificate is nonzero");
    let off: Vec<usize> = k_set.complement(k).indices().to_vec();
    let mut rows: Vec<IntVec> = vec![c.clone()];
    for (j, r) in lattice.row_vecs().iter().enumerate() {
        if j == replace {
            continue;
        }
        let mut r: IntVec = r.iter().map(|x| x.to_integer()).collect();
        let mut shift = BigInt::zero();
        for &i in &off {
            // need r_i + n c_i ≥ 1, c_i ≥ 1
            let need = (BigInt::one() - &r[i]).div_ceil(&c[i]);
            if need > shift {
                shift = need;
            }
        }
        for (x, ci) in r.iter_mut().zip(&c) {
            *x += &shift * ci;
        }
        rows.push(r);
    }
    Ok(RationalMatrix::from_int_rows(&rows, k))
}

// ---------------------------------------------------------------------------
// Relation spaces of a cone

/// Matrix whose columns are the flattened generators.
fn generator_columns(cone: &NilpotentCone) -> RationalMatrix {
    let flat: Vec<Vec<Rational>> = cone.generators().iter().map(RationalMatrix::flatten).collect();
    RationalMatrix::from_rows(flat, cone.dim() * cone.dim()).transpose()
}

/// `S_I = {a : Σ aᵢNᵢ ∈ W₋₁(ad N_I)}`; for `I = ∅`, `{a : Σ aᵢNᵢ = 0}`.
pub fn relation_space(cone: &NilpotentCone, i: &IndexSet) -> Result<Subspace, RelationError> {
    cone.check_index(i)?;
    let cols = generator_columns(cone);
    if i.is_empty() {
        return Ok(kernel(&cols));
    }
    let w = adjoint_filtration(cone, i)?.step(-1);
    let eqs = orthogonal_complement(&w);
    if eqs.is_zero() {
        return Ok(Subspace::full(cone.k()));
    }
    Ok(kernel(&eqs.basis().mul(&cols)))
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificates {
    #[serde(with = "rational_vec_serde")]
    pub v: Vec<Rational>,
    #[serde(with = "rational_vec_serde")]
    pub v_tilde: Vec<Rational>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationData {
    #[serde(rename = "I")]
    pub i: IndexSet,
    #[serde(rename = "S_basis")]
    pub s: Subspace,
    #[serde(rename = "K")]
    pub k: IndexSet,
    /// `𝒞_I`, when `S_I^⊥` vanishes on `K_I` (always the case for period-map cones).
    #[serde(rename = "C")]
    pub c: Option<RationalMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_error: Option<String>,
    pub certificates: Certificates,
}

pub fn relation_data(cone: &NilpotentCone, i: &IndexSet) -> Result<RelationData, RelationError> {
    let s = relation_space(cone, i)?;
    let split = farkas_split(&s);
    let (c, c_error) = match positive_basis(&s, &split.k) {
        Ok(c) => (Some(c), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(RelationData {
        i: i.clone(),
        s,
        k: split.k,
        c,
        c_error,
        certificates: Certificates { v: split.v, v_tilde: split.v_tilde },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Stratum {
    #[serde(rename = "K")]
    pub k: IndexSet,
    pub strata: Vec<IndexSet>,
}

/// Full table `I ↦ K_I`, its image `𝒦` and the partition of strata by `K`.
#[derive(Clone, Debug, Serialize)]
pub struct KIndexMap {
    pub k: usize,
    pub entries: Vec<RelationData>,
    pub image: Vec<IndexSet>,
    pub partition: Vec<Stratum>,
}

impl KIndexMap {
    pub fn get(&self, i: &IndexSet) -> Option<&RelationData> {
        self.entries.get(i.mask() as usize)
    }

    pub fn k_of(&self, i: &IndexSet) -> &IndexSet {
        &self.get(i).expect("index set in range").k
    }
}

pub fn k_index_map(cone: &NilpotentCone) -> Result<KIndexMap, RelationError> {
    k_index_map_capped(cone, DEFAULT_MAX_GENERATORS)
}

pub fn k_index_map_capped(cone: &NilpotentCone, cap: usize) -> Result<KIndexMap, RelationError> {
    let k = cone.k();
    if k > cap {
        return Err(RelationError::ConeTooLarge(k, cap));
    }
    // entries indexed by bitmask
    let entries = (0..1u64 << k)
        .into_par_iter()
        .map(|mask| relation_data(cone, &IndexSet::from_mask(mask, k)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut image: Vec<IndexSet> = entries.iter().map(|e| e.k.clone()).collect();
    image.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    image.dedup();
    let partition = image
        .iter()
        .map(|kk| {
            let mut strata: Vec<IndexSet> =
                entries.iter().filter(|e| e.k == *kk).map(|e| e.i.clone()).collect();
            strata.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
            Stratum { k: kk.clone(), strata }
        })
        .collect();
    Ok(KIndexMap { k, entries, image, partition })
}

/// Outcome of the structural statements about `I ↦ (S_I, K_I)`; reported, not asserted.
#[derive(Clone, Debug, Default, Serialize)]
pub struct InvariantReport {
    /// `I ⊄ K_I`.
    pub not_contained: Vec<IndexSet>,
    /// `K_{K_I} ≠ K_I` or `S_{K_I} ≠ S_I`.
    pub not_idempotent: Vec<IndexSet>,
    /// pairs `I ⊆ I' ⊆ K_I` with `S_I ≠ S_{I'}`.
    pub lemma_violations: Vec<(IndexSet, IndexSet)>,
    /// pairs `I ⊆ I'` with `S_I ⊄ S_{I'}`.
    pub monotonicity_violations: Vec<(IndexSet, IndexSet)>,
    /// `⟨v, ṽ⟩ ≠ 0`, or supports not complementary.
    pub certificate_failures: Vec<IndexSet>,
}

impl InvariantReport {
    pub fn all_hold(&self) -> bool {
        self.not_contained.is_empty()
            && self.not_idempotent.is_empty()
            && self.lemma_violations.is_empty()
            && self.monotonicity_violations.is_empty()
            && self.certificate_failures.is_empty()
    }
}

pub fn check_invariants(map: &KIndexMap) -> InvariantReport {
    let mut rep = InvariantReport::default();
    for e in &map.entries {
        if !e.i.is_subset(&e.k) {
            rep.not_contained.push(e.i.clone());
        }
        let kk = map.get(&e.k).expect("in range");
        if kk.k != e.k || kk.s != e.s {
            rep.not_idempotent.push(e.i.clone());
        }
        let dot = crate::linalg::dot(&e.certificates.v, &e.certificates.v_tilde);
        let supp_ok = (0..map.k).all(|j| {
            let in_k = e.k.contains(j);
            e.certificates.v[j].is_positive() == in_k && e.certificates.v_tilde[j].is_positive() != in_k
        });
        let members = e.s.contains(&e.certificates.v)
            && orthogonal_complement(&e.s).contains(&e.certificates.v_tilde);
        if !dot.is_zero() || !supp_ok || !members {
            rep.certificate_failures.push(e.i.clone());
        }
        for f in &map.entries {
            if !e.i.is_subset(&f.i) {
                continue;
            }
            if !f.s.contains_subspace(&e.s) {
                rep.monotonicity_violations.push((e.i.clone(), f.i.clone()));
            }
            if f.i.is_subset(&e.k) && f.s != e.s {
                rep.lemma_violations.push((e.i.clone(), f.i.clone()));
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::linalg::rat;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn farkas_small() {
        let r = farkas_alternative(&RationalMatrix::identity(2), &v(&[1, 1]));
        assert_eq!(r, FarkasResult::Feasible(v(&[1, 1])));
        let a = RationalMatrix::from_ints(&[[1, -1]]);
        let r = farkas_alternative(&a, &v(&[-1]));
        assert!(r.is_feasible() && r.verify(&a, &v(&[-1])));
        let a = RationalMatrix::identity(1);
        let r = farkas_alternative(&a, &v(&[-1]));
        assert!(!r.is_feasible() && r.verify(&a, &v(&[-1])));
    }

    #[test]
    fn splits() {
        let s = farkas_split(&Subspace::zero(3));
        assert!(s.k.is_empty());
        assert!(s.v_tilde.iter().all(|x| x.is_positive()));
        assert_eq!(farkas_split(&Subspace::full(3)).k, IndexSet::full(3));
        let s = farkas_split(&Subspace::from_vectors(2, &[v(&[1, -1])]));
        assert!(s.k.is_empty());
        assert_eq!(s.v_tilde[0], s.v_tilde[1]);
    }

    #[test]
    fn positive_bases() {
        let s = Subspace::from_vectors(3, &[v(&[1, 0, 0]), v(&[0, 1, -1])]);
        let c = positive_basis(&s, &IndexSet::new([0])).unwrap();
        assert_eq!(c, RationalMatrix::from_ints(&[[0, 1, 1]]));
        assert_eq!(positive_basis(&Subspace::full(3), &IndexSet::full(3)).unwrap().rows(), 0);
        let c = positive_basis(&Subspace::zero(3), &IndexSet::empty()).unwrap();
        assert_eq!(c, RationalMatrix::from_ints(&[[1, 1, 1], [1, 2, 1], [1, 1, 2]]));
        assert!(matches!(
            positive_basis(&Subspace::zero(3), &IndexSet::new([0])),
            Err(RelationError::InvalidSplit { .. })
        ));
    }

    #[test]
    fn genus2_relation_spaces() {
        let c = genus2_cone();
        assert!(relation_space(&c, &IndexSet::empty()).unwrap().is_zero());
        assert_eq!(
            relation_space(&c, &IndexSet::new([0])).unwrap(),
            Subspace::from_vectors(3, &[v(&[1, 0, 0]), v(&[0, 1, -1])])
        );
        assert!(relation_space(&c, &IndexSet::new([0, 1])).unwrap().is_full());
        let map = k_index_map(&c).unwrap();
        for mask in 0..8u64 {
            let i = IndexSet::from_mask(mask, 3);
            let expected = if i.len() <= 1 { i.clone() } else { IndexSet::full(3) };
            assert_eq!(map.k_of(&i), &expected, "I = {i}");
        }
        assert!(check_invariants(&map).all_hold());
    }

    #[test]
    fn small_cones() {
        let map = k_index_map(&genus2_single()).unwrap();
        assert_eq!(map.k_of(&IndexSet::new([0])), &IndexSet::new([0]));
        assert!(map.k_of(&IndexSet::empty()).is_empty());
        let map = k_index_map(&rank_one_family()).unwrap();
        assert_eq!(map.k_of(&IndexSet::new([0])), &IndexSet::full(2));
    }
}

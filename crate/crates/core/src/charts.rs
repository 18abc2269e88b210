//! Monomial maps `μ_K`, the assembled atlas, binomial relations among the
//! monomials, and fiber/separation checks.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::cone::{lie_algebra, IndexSet, NilpotentCone};
use crate::linalg::{hnf, int_row, integer_left_kernel, IntVec, Rational, RationalMatrix};
use crate::relations::{k_index_map_capped, relation_space, RelationError, DEFAULT_MAX_GENERATORS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChartError {
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error("no positive basis for K = {0}: {1}")]
    ChartUnavailable(IndexSet, String),
    #[error("strata of K = {0} and K' = {1} are not separated")]
    SeparationFailure(IndexSet, IndexSet),
    #[error("monomial {0} vanishes at the sample point")]
    VanishingMonomial(usize),
    #[error("sample {0} is inconsistent: {1}")]
    SampleInconsistent(usize, String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// `μ_K(t) = (t^c)_{c ∈ 𝒞_K}` together with the strata it covers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialMap {
    #[serde(rename = "K")]
    pub k: IndexSet,
    pub exponents: RationalMatrix,
    #[serde(skip)]
    pub strata: Vec<IndexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinomialRelationSet {
    /// HNF basis of `{u : Σ u_j c_j = 0}`.
    #[serde(serialize_with = "ser_int_rows")]
    pub relations: Vec<IntVec>,
}

fn ser_int_rows<S: serde::Serializer>(rows: &[IntVec], s: S) -> Result<S::Ok, S::Error> {
    let v: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    v.serialize(s)
}

impl BinomialRelationSet {
    pub fn rendered(&self) -> Vec<String> {
        self.relations.iter().map(|u| render_relation(u)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialAtlas {
    pub k: usize,
    pub charts: Vec<MonomialMap>,
    /// `𝒞 = ∪ 𝒞_K`, duplicates removed, in chart order.
    pub exponents: RationalMatrix,
    pub relations: BinomialRelationSet,
}

impl MonomialAtlas {
    pub fn m(&self) -> usize {
        self.exponents.rows()
    }

    /// Assembles an atlas from explicit charts.
    pub fn from_charts(k: usize, charts: Vec<MonomialMap>) -> Self {
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for c in &charts {
            for r in c.exponents.row_vecs() {
                if !rows.contains(&r) {
                    rows.push(r);
                }
            }
        }
        let exponents = RationalMatrix::from_rows(rows, k);
        let relations = binomial_relations(&exponents);
        Self { k, charts, exponents, relations }
    }
}

pub fn build_atlas(cone: &NilpotentCone) -> Result<MonomialAtlas, ChartError> {
    build_atlas_capped(cone, DEFAULT_MAX_GENERATORS)
}

pub fn build_atlas_capped(cone: &NilpotentCone, cap: usize) -> Result<MonomialAtlas, ChartError> {
    let map = k_index_map_capped(cone, cap)?;
    let mut charts = Vec::new();
    for st in &map.partition {
        let data = map.get(&st.k).expect("K is an index set of the cone");
        let exps = data.c.clone().ok_or_else(|| {
            ChartError::ChartUnavailable(st.k.clone(), data.c_error.clone().unwrap_or_default())
        })?;
        charts.push(MonomialMap { k: st.k.clone(), exponents: exps, strata: st.strata.clone() });
    }
    Ok(MonomialAtlas::from_charts(cone.k(), charts))
}

fn to_int_rows(rows: &RationalMatrix) -> Vec<IntVec> {
    rows.row_vecs().iter().map(|r| int_row(r).expect("integer exponents")).collect()
}

/// Generators of all multiplicative relations `z^{u₊} = z^{u₋}` among the monomials
/// with the given exponent rows.
pub fn binomial_relations(rows: &RationalMatrix) -> BinomialRelationSet {
    let ints = to_int_rows(rows);
    BinomialRelationSet { relations: integer_left_kernel(&ints, rows.cols()) }
}

/// `"z1*z2*z3 = z4^2"` for `u = (1,1,1,−2)`.
pub fn render_relation(u: &[BigInt]) -> String {
    let side = |positive: bool| -> String {
        let terms: Vec<String> = u
            .iter()
            .enumerate()
            .filter(|(_, x)| if positive { x.is_positive() } else { x.is_negative() })
            .map(|(j, x)| {
                let e = x.abs();
                if e == BigInt::from(1) {
                    format!("z{}", j + 1)
                } else {
                    format!("z{}^{}", j + 1, e)
                }
            })
            .collect();
        if terms.is_empty() {
            "1".into()
        } else {
            terms.join("*")
        }
    };
    format!("{} = {}", side(true), side(false))
}

/// HNF of the row lattice, for lattice-level comparison of exponent matrices.
pub fn row_lattice(rows: &RationalMatrix) -> Vec<IntVec> {
    hnf(&to_int_rows(rows), rows.cols())
}

#[derive(Clone, Debug, Serialize)]
pub struct SeparationWitness {
    #[serde(rename = "K")]
    pub k: IndexSet,
    #[serde(rename = "K_prime")]
    pub k_prime: IndexSet,
    /// 1-based coordinate of `μ` whose vanishing distinguishes the two images.
    pub coordinate: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeparationReport {
    pub separated: bool,
    pub witnesses: Vec<SeparationWitness>,
}

/// `t^c` vanishes identically on `Δ*_J` iff `c_j > 0` for some `j ∈ J`.
fn vanishes(c: &[Rational], j: &IndexSet) -> bool {
    j.indices().iter().any(|&i| c[i].is_positive())
}

/// Checks that images of the strata of distinct charts are told apart by the
/// vanishing pattern of some coordinate of `μ`.
pub fn separation_check(atlas: &MonomialAtlas) -> Result<SeparationReport, ChartError> {
    let rows = atlas.exponents.row_vecs();
    let mut witnesses = Vec::new();
    for (x, a) in atlas.charts.iter().enumerate() {
        for b in atlas.charts.iter().skip(x + 1) {
            let mut first = None;
            for j in &a.strata {
                for jp in &b.strata {
                    let w = rows.iter().position(|c| vanishes(c, j) != vanishes(c, jp));
                    match w {
                        Some(w) => {
                            first.get_or_insert(w);
                        }
                        None => return Err(ChartError::SeparationFailure(a.k.clone(), b.k.clone())),
                    }
                }
            }
            if let Some(w) = first {
                witnesses.push(SeparationWitness { k: a.k.clone(), k_prime: b.k.clone(), coordinate: w + 1 });
            }
        }
    }
    Ok(SeparationReport { separated: true, witnesses })
}

/// Whether `v_a = Σ aᵢ tᵢ ∂/∂tᵢ` annihilates every monomial `t^c` at `t`;
/// `v_a(t^c) = (a·c) t^c`.
pub fn fiber_tangency(rows: &RationalMatrix, a: &[Rational], t: &[Rational]) -> Result<bool, ChartError> {
    if a.len() != rows.cols() || t.len() != rows.cols() {
        return Err(ChartError::Dimension("a and t must have one entry per generator".into()));
    }
    let mut tangent = true;
    for (r, c) in rows.row_vecs().iter().enumerate() {
        let mono_zero = c.iter().zip(t).any(|(e, ti)| e.is_positive() && ti.is_zero());
        if mono_zero {
            return Err(ChartError::VanishingMonomial(r + 1));
        }
        if !crate::linalg::dot(a, c).is_zero() {
            tangent = false;
        }
    }
    Ok(tangent)
}

/// One sample of the `𝔤`-valued correction `X⁻¹`: the candidate tangent vector
/// `(a, b)` and the derivative of `X⁻¹` along it.
#[derive(Clone, Debug, serde::Deserialize, Serialize)]
pub struct X1Sample {
    #[serde(with = "crate::linalg::rational_vec_serde")]
    pub a: Vec<Rational>,
    pub b: Vec<f64>,
    pub derivative: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecoupledSampleResult {
    /// `a ∈ S_I`, i.e. `Σ aᵢNᵢ` is killed exactly.
    pub exact: bool,
    /// derivative of `X⁻¹` vanishes to 1e−9.
    pub numeric: bool,
    pub tangent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecoupledReport {
    #[serde(rename = "I")]
    pub i: IndexSet,
    pub samples: Vec<DecoupledSampleResult>,
}

pub const DECOUPLED_TOL: f64 = 1e-9;

/// Tangency of `(a, b)` to the decoupled fibers: `a ∈ S_I` and the sampled derivative
/// of `X⁻¹` vanishes. A derivative outside `𝔤` makes the sample inconsistent.
pub fn decoupled_fiber_check(
    cone: &NilpotentCone,
    i: &IndexSet,
    samples: &[X1Sample],
) -> Result<DecoupledReport, ChartError> {
    let s = relation_space(cone, i)?;
    let d = cone.dim();
    let g = lie_algebra(cone.form());
    let perp = crate::linalg::orthogonal_complement(&g);
    let eqs = perp.basis().to_f64();
    let mut out = Vec::new();
    for (idx, smp) in samples.iter().enumerate() {
        if smp.a.len() != cone.k() || smp.derivative.len() != d || smp.derivative.iter().any(|r| r.len() != d) {
            return Err(ChartError::SampleInconsistent(idx, "dimension mismatch".into()));
        }
        let flat: Vec<f64> = smp.derivative.iter().flatten().copied().collect();
        if flat.iter().any(|x| !x.is_finite()) {
            return Err(ChartError::SampleInconsistent(idx, "non-finite derivative".into()));
        }
        let scale = flat.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        for e in &eqs {
            let r: f64 = e.iter().zip(&flat).map(|(x, y)| x * y).sum();
            if r.abs() > DECOUPLED_TOL * scale {
                return Err(ChartError::SampleInconsistent(idx, "derivative is not in 𝔤".into()));
            }
        }
        let exact = s.contains(&smp.a);
        let numeric = flat.iter().all(|x| x.abs() <= DECOUPLED_TOL);
        out.push(DecoupledSampleResult { exact, numeric, tangent: exact && numeric });
    }
    Ok(DecoupledReport { i: i.clone(), samples: out })
}

pub fn is_zero_int(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

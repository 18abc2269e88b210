//! Multilinear algebra behind curvature of the form `Θ(e, ξ) = ‖A(ξ)e‖²`:
//! the curvature identity, numerical dimension by generic rank, and the `σ(Q)` maps.

use num_traits::{Num, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{rat, ratio, Rational, RationalMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PositivityError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// `A : T ⊗ W → U` stored as `a[u][t][w]`, with a positive-definite metric on `U`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureTriple<S = Rational> {
    dim_t: usize,
    dim_w: usize,
    dim_u: usize,
    a: Vec<Vec<Vec<S>>>,
    metric: Vec<Vec<S>>,
}

#[derive(Serialize, Deserialize)]
struct TripleRepr {
    /// `a[u][t][w]`
    a: Vec<Vec<Vec<RationalStr>>>,
    #[serde(default)]
    metric: Option<RationalMatrix>,
    #[serde(default)]
    dims: Option<[usize; 3]>,
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct RationalStr(#[serde(with = "crate::linalg::rational_serde")] Rational);

impl TryFrom<TripleRepr> for CurvatureTriple<Rational> {
    type Error = PositivityError;
    fn try_from(r: TripleRepr) -> Result<Self, Self::Error> {
        let a: Vec<Vec<Vec<Rational>>> =
            r.a.into_iter().map(|m| m.into_iter().map(|v| v.into_iter().map(|x| x.0).collect()).collect()).collect();
        let (u, t, w) = match r.dims {
            Some([t, w, u]) => (u, t, w),
            None => {
                let u = a.len();
                let t = a.first().map_or(0, |m| m.len());
                let w = a.first().and_then(|m| m.first()).map_or(0, |v| v.len());
                (u, t, w)
            }
        };
        let metric = r.metric.map(|m| m.row_vecs()).unwrap_or_else(|| identity(u));
        CurvatureTriple::new(t, w, u, a, metric)
    }
}

impl From<CurvatureTriple<Rational>> for TripleRepr {
    fn from(c: CurvatureTriple<Rational>) -> Self {
        TripleRepr {
            a: c.a.into_iter().map(|m| m.into_iter().map(|v| v.into_iter().map(RationalStr).collect()).collect()).collect(),
            metric: Some(RationalMatrix::from_rows(c.metric, c.dim_u)),
            dims: Some([c.dim_t, c.dim_w, c.dim_u]),
        }
    }
}

impl Serialize for CurvatureTriple<Rational> {
    fn serialize<Z: serde::Serializer>(&self, s: Z) -> Result<Z::Ok, Z::Error> {
        TripleRepr::from(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CurvatureTriple<Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        CurvatureTriple::try_from(TripleRepr::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

fn identity<S: Num + Clone>(n: usize) -> Vec<Vec<S>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect()).collect()
}

impl<S: Num + Clone> CurvatureTriple<S> {
    pub fn new(
        dim_t: usize,
        dim_w: usize,
        dim_u: usize,
        a: Vec<Vec<Vec<S>>>,
        metric: Vec<Vec<S>>,
    ) -> Result<Self, PositivityError> {
        let bad = |s: &str| PositivityError::Dimension(s.to_string());
        if a.len() != dim_u || a.iter().any(|m| m.len() != dim_t || m.iter().any(|v| v.len() != dim_w)) {
            return Err(bad("A must be a dim U × dim T × dim W array"));
        }
        if metric.len() != dim_u || metric.iter().any(|r| r.len() != dim_u) {
            return Err(bad("metric must be dim U × dim U"));
        }
        if (0..dim_u).any(|i| (0..dim_u).any(|j| metric[i][j] != metric[j][i])) {
            return Err(bad("metric must be symmetric"));
        }
        Ok(CurvatureTriple { dim_t, dim_w, dim_u, a, metric })
    }

    pub fn zero(dim_t: usize, dim_w: usize, dim_u: usize) -> Self {
        let a = vec![vec![vec![S::zero(); dim_w]; dim_t]; dim_u];
        CurvatureTriple { dim_t, dim_w, dim_u, a, metric: identity(dim_u) }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.dim_t, self.dim_w, self.dim_u)
    }

    pub fn a(&self) -> &[Vec<Vec<S>>] {
        &self.a
    }

    pub fn metric(&self) -> &[Vec<S>] {
        &self.metric
    }

    pub fn with_metric(mut self, metric: Vec<Vec<S>>) -> Result<Self, PositivityError> {
        self = CurvatureTriple::new(self.dim_t, self.dim_w, self.dim_u, self.a, metric)?;
        Ok(self)
    }

    /// `A(ξ)e ∈ U`.
    pub fn apply(&self, xi: &[S], e: &[S]) -> Vec<S> {
        self.a
            .iter()
            .map(|m| {
                let mut s = S::zero();
                for (t, row) in m.iter().enumerate() {
                    for (w, x) in row.iter().enumerate() {
                        s = s + x.clone() * xi[t].clone() * e[w].clone();
                    }
                }
                s
            })
            .collect()
    }

    /// `Θ_{t t' w w'} = Σ h_{uu'} a[u][t][w] a[u'][t'][w']`, indexed `[t][t'][w][w']`.
    pub fn curvature_tensor(&self) -> Vec<Vec<Vec<Vec<S>>>> {
        let (nt, nw, nu) = (self.dim_t, self.dim_w, self.dim_u);
        let mut th = vec![vec![vec![vec![S::zero(); nw]; nw]; nt]; nt];
        for u in 0..nu {
            for v in 0..nu {
                let h = &self.metric[u][v];
                if h.is_zero() {
                    continue;
                }
                for t in 0..nt {
                    for s in 0..nt {
                        for w in 0..nw {
                            for x in 0..nw {
                                let add = h.clone() * self.a[u][t][w].clone() * self.a[v][s][x].clone();
                                th[t][s][w][x] = th[t][s][w][x].clone() + add;
                            }
                        }
                    }
                }
            }
        }
        th
    }

    /// Restriction of `A` to the span of the rows of `basis` in `T`.
    pub fn restrict_t(&self, basis: &[Vec<S>]) -> Self {
        let a = self
            .a
            .iter()
            .map(|m| {
                basis
                    .iter()
                    .map(|b| {
                        (0..self.dim_w)
                            .map(|w| {
                                b.iter().zip(m).fold(S::zero(), |acc, (c, row)| acc + c.clone() * row[w].clone())
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        CurvatureTriple { dim_t: basis.len(), dim_w: self.dim_w, dim_u: self.dim_u, a, metric: self.metric.clone() }
    }
}

impl CurvatureTriple<Rational> {
    pub fn to_f64(&self) -> CurvatureTriple<f64> {
        let f = crate::linalg::to_f64;
        CurvatureTriple {
            dim_t: self.dim_t,
            dim_w: self.dim_w,
            dim_u: self.dim_u,
            a: self.a.iter().map(|m| m.iter().map(|v| v.iter().map(f).collect()).collect()).collect(),
            metric: self.metric.iter().map(|r| r.iter().map(f).collect()).collect(),
        }
    }

    /// The matrix of `ξ ↦ A(ξ)e`, `dim U × dim T`.
    pub fn slice(&self, e: &[Rational]) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.dim_u, self.dim_t);
        for u in 0..self.dim_u {
            for t in 0..self.dim_t {
                m[(u, t)] = self.a[u][t].iter().zip(e).map(|(x, y)| x * y).sum();
            }
        }
        m
    }

    /// The matrix of `A : T → Hom(W, U)`, `(dim W · dim U) × dim T`.
    pub fn as_map(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.dim_w * self.dim_u, self.dim_t);
        for u in 0..self.dim_u {
            for t in 0..self.dim_t {
                for w in 0..self.dim_w {
                    m[(w * self.dim_u + u, t)] = self.a[u][t][w].clone();
                }
            }
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvatureCheck<S> {
    pub lhs: S,
    pub rhs: S,
    pub matches: bool,
}

fn lhs_rhs<S: Num + Clone>(c: &CurvatureTriple<S>, e: &[S], xi: &[S]) -> (S, S) {
    let th = c.curvature_tensor();
    let mut lhs = S::zero();
    for (t, a) in th.iter().enumerate() {
        for (s, b) in a.iter().enumerate() {
            for (w, row) in b.iter().enumerate() {
                for (x, v) in row.iter().enumerate() {
                    lhs = lhs + v.clone() * xi[t].clone() * xi[s].clone() * e[w].clone() * e[x].clone();
                }
            }
        }
    }
    let v = c.apply(xi, e);
    let mut rhs = S::zero();
    for (i, hi) in c.metric.iter().enumerate() {
        for (j, h) in hi.iter().enumerate() {
            rhs = rhs + h.clone() * v[i].clone() * v[j].clone();
        }
    }
    (lhs, rhs)
}

fn check_lengths<S>(c: &CurvatureTriple<S>, e: &[S], xi: &[S]) -> Result<(), PositivityError> {
    if e.len() != c.dim_w || xi.len() != c.dim_t {
        return Err(PositivityError::Dimension("e must lie in W and ξ in T".into()));
    }
    Ok(())
}

/// Full curvature contraction against `‖A(ξ)e‖²`, exactly.
pub fn curvature_identity_check(
    c: &CurvatureTriple<Rational>,
    e: &[Rational],
    xi: &[Rational],
) -> Result<CurvatureCheck<Rational>, PositivityError> {
    check_lengths(c, e, xi)?;
    let (lhs, rhs) = lhs_rhs(c, e, xi);
    let matches = lhs == rhs;
    Ok(CurvatureCheck { lhs, rhs, matches })
}

pub const FLOAT_TOL: f64 = 1e-10;

/// Floating-point variant, matched to `1e-10` relative to the scale of the terms.
pub fn curvature_identity_check_f64(
    c: &CurvatureTriple<f64>,
    e: &[f64],
    xi: &[f64],
) -> Result<CurvatureCheck<f64>, PositivityError> {
    check_lengths(c, e, xi)?;
    let (lhs, rhs) = lhs_rhs(c, e, xi);
    let matches = (lhs - rhs).abs() <= FLOAT_TOL * (1.0 + rhs.abs());
    Ok(CurvatureCheck { lhs, rhs, matches })
}

pub const DEFAULT_SAMPLES: usize = 20;

/// Seeded integer vectors with entries in `[-5, 5]`.
pub fn generic_samples(dim: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..dim).map(|_| rat(rng.gen_range(-5..=5))).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NumericalDimension {
    pub rho: usize,
    pub n: i64,
    pub ranks: Vec<usize>,
}

/// `ρ = max rank(ξ ↦ A(ξ)e)` over the samples and `n = r − 1 + ρ`, `r = dim W`.
pub fn numerical_dimension(c: &CurvatureTriple<Rational>, samples: &[Vec<Rational>]) -> NumericalDimension {
    let ranks: Vec<usize> = samples.iter().map(|e| c.slice(e).rank()).collect();
    let rho = ranks.iter().copied().max().unwrap_or(0);
    NumericalDimension { rho, n: c.dim_w as i64 - 1 + rho as i64, ranks }
}

/// Index pairs `a ≤ b` in lexicographic order: the monomial basis of `S²`.
pub fn sym_pairs(d: usize) -> Vec<(usize, usize)> {
    (0..d).flat_map(|a| (a..d).map(move |b| (a, b))).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SigmaResult {
    pub matrix: RationalMatrix,
    pub rank: usize,
    pub injective: bool,
}

/// `σ(Q) : S²W → W* ⊗ W`, `w_a w_b ↦ ½(Q(w_a,·) ⊗ w_b + Q(w_b,·) ⊗ w_a)`.
/// Rows are indexed by `(i, j) ↦ i·d + j` for `e^i ⊗ w_j`, columns by `a ≤ b`.
pub fn sigma_weight1(q: &RationalMatrix) -> Result<SigmaResult, PositivityError> {
    let d = q.rows();
    if !q.is_square() || q.transpose() != *q {
        return Err(PositivityError::Dimension("Q must be a symmetric square matrix".into()));
    }
    let pairs = sym_pairs(d);
    let half = ratio(1, 2);
    let mut m = RationalMatrix::zeros(d * d, pairs.len());
    for (col, &(a, b)) in pairs.iter().enumerate() {
        for i in 0..d {
            m[(i * d + b, col)] += &q[(a, i)] * &half;
            m[(i * d + a, col)] += &q[(b, i)] * &half;
        }
    }
    let rank = m.rank();
    Ok(SigmaResult { injective: rank == pairs.len(), matrix: m, rank })
}

/// The triple `A(ξ)Q = σ(Q)ξ` with `T = S²W`, `E = S²W*` and `U = W* ⊗ W`.
pub fn sigma1_triple(d: usize) -> CurvatureTriple<Rational> {
    let pairs = sym_pairs(d);
    let n = pairs.len();
    let mut a = vec![vec![vec![Rational::zero(); n]; n]; d * d];
    for (w, &(c, e)) in pairs.iter().enumerate() {
        let mut q = RationalMatrix::zeros(d, d);
        q[(c, e)] = rat(1);
        q[(e, c)] = rat(1);
        let s = sigma_weight1(&q).expect("symmetric").matrix;
        for u in 0..d * d {
            for t in 0..n {
                a[u][t][w] = s[(u, t)].clone();
            }
        }
    }
    CurvatureTriple::new(n, n, d * d, a, identity(d * d)).expect("consistent dimensions")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sigma2Result {
    pub matrix: RationalMatrix,
    pub rank: usize,
    pub injective: bool,
    /// `A : T → Hom(W, U)` is injective.
    pub a_injective: bool,
    /// `ᵗA ∧ A = 0`.
    pub integrable: bool,
}

/// `σ(Q) : T → W ⊗ U`, the contraction of `A(ξ) ∈ W* ⊗ U` with `Q ∈ S²W`.
/// Rows are indexed by `(w, u) ↦ w·dim U + u`.
pub fn sigma_weight2(c: &CurvatureTriple<Rational>, q: &RationalMatrix) -> Result<Sigma2Result, PositivityError> {
    let (nt, nw, nu) = c.dims();
    if q.rows() != nw || q.cols() != nw || q.transpose() != *q {
        return Err(PositivityError::Dimension("Q must be symmetric on W".into()));
    }
    let mut m = RationalMatrix::zeros(nw * nu, nt);
    for w2 in 0..nw {
        for u in 0..nu {
            for t in 0..nt {
                m[(w2 * nu + u, t)] = (0..nw).map(|w| &q[(w2, w)] * &c.a[u][t][w]).sum();
            }
        }
    }
    let rank = m.rank();
    Ok(Sigma2Result {
        injective: rank == nt,
        matrix: m,
        rank,
        a_injective: c.as_map().rank() == nt,
        integrable: is_integrable(c),
    })
}

/// `A(ξ)ᵀhA(η) = A(η)ᵀhA(ξ)` for all basis vectors `ξ, η` of `T`.
pub fn is_integrable(c: &CurvatureTriple<Rational>) -> bool {
    let (nt, nw, nu) = c.dims();
    let pair = |t: usize, s: usize, w: usize, x: usize| -> Rational {
        let mut acc = Rational::zero();
        for u in 0..nu {
            for v in 0..nu {
                acc += &c.metric[u][v] * &c.a[u][t][w] * &c.a[v][s][x];
            }
        }
        acc
    };
    (0..nt).all(|t| {
        (0..nt).all(|s| (0..nw).all(|w| (0..nw).all(|x| pair(t, s, w, x) == pair(s, t, w, x))))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank_one(ts: Vec<i64>, ws: Vec<i64>, us: Vec<i64>) -> CurvatureTriple {
        let a = us
            .iter()
            .map(|&u| ts.iter().map(|&t| ws.iter().map(|&w| rat(u * t * w)).collect()).collect())
            .collect();
        CurvatureTriple::new(ts.len(), ws.len(), us.len(), a, identity(us.len())).unwrap()
    }

    #[test]
    fn zero_triple() {
        let c = CurvatureTriple::<Rational>::zero(2, 3, 2);
        let r = curvature_identity_check(&c, &[rat(1), rat(2), rat(3)], &[rat(1), rat(-1)]).unwrap();
        assert!(r.matches && r.lhs.is_zero());
        let nd = numerical_dimension(&c, &generic_samples(3, DEFAULT_SAMPLES, 7));
        assert_eq!((nd.rho, nd.n), (0, 2));
    }

    #[test]
    fn rank_one_hand_expansion() {
        let c = rank_one(vec![1, 2], vec![3, 0, 1], vec![1, 1]);
        let xi = [rat(1), rat(1)];
        let e = [rat(1), rat(5), rat(2)];
        // t*(ξ) = 3, w*(e) = 5, ‖u‖² = 2
        let r = curvature_identity_check(&c, &e, &xi).unwrap();
        assert_eq!(r.rhs, rat(9 * 25 * 2));
        assert!(r.matches);
    }

    #[test]
    fn sigma1() {
        let q = RationalMatrix::from_ints(&[[1, 0], [0, 1]]);
        let s = sigma_weight1(&q).unwrap();
        assert_eq!(s.rank, 3);
        assert!(s.injective);
        assert!(!sigma_weight1(&RationalMatrix::zeros(2, 2)).unwrap().injective);
        let s = sigma_weight1(&RationalMatrix::from_ints(&[[1, 0], [0, 0]])).unwrap();
        assert_eq!(s.rank, 2);
        let nd = numerical_dimension(&sigma1_triple(2), &generic_samples(3, DEFAULT_SAMPLES, 1));
        assert_eq!(nd.rho, 3);
    }

    #[test]
    fn sigma2() {
        // T = W = U = ℚ², A(ξ)w = ξ ⊗ (w-component) diagonal
        let mut a = vec![vec![vec![rat(0); 2]; 2]; 2];
        a[0][0][0] = rat(1);
        a[1][1][1] = rat(1);
        let c = CurvatureTriple::new(2, 2, 2, a, identity(2)).unwrap();
        let r = sigma_weight2(&c, &RationalMatrix::identity(2)).unwrap();
        assert!(r.injective && r.a_injective);
        let r = sigma_weight2(&c, &RationalMatrix::zeros(2, 2)).unwrap();
        assert!(r.matrix.is_zero() && !r.injective);
        let degenerate = c.restrict_t(&[vec![rat(1), rat(0)], vec![rat(2), rat(0)]]);
        assert!(!sigma_weight2(&degenerate, &RationalMatrix::identity(2)).unwrap().injective);
    }

    #[test]
    fn triple_json_round_trip() {
        let c = sigma1_triple(2);
        let s = serde_json::to_string(&c).unwrap();
        let back: CurvatureTriple = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        let bare: CurvatureTriple = serde_json::from_str(r#"{"a": [[["1", "0"]], [["0", "1/2"]]]}"#).unwrap();
        assert_eq!(bare.dims(), (1, 2, 2));
    }
}

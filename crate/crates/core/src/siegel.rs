//! The Sp(4) example: nilpotent orbits through two commuting standard triples, the
//! Siegel coordinates for the minimal and maximal parabolics, and boundedness probes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{rat, RationalMatrix};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SiegelError {
    #[error("p(y) = 0")]
    PZero,
    #[error("point outside the solvable domain: {0}")]
    NotInDomain(String),
    #[error("invalid cone: {0}")]
    InvalidCone(String),
    #[error("invalid family: {0}")]
    Family(String),
}

/// `e^j_i = e_i ⊗ e^j`, the matrix with a single 1 in row `i`, column `j` (1-based).
fn e(i: usize, j: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(4, 4);
    m[(i - 1, j - 1)] = rat(1);
    m
}

#[derive(Clone, Debug, Serialize)]
pub struct StandardTriple {
    pub n_plus: RationalMatrix,
    pub y: RationalMatrix,
    pub n: RationalMatrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct Sp4Setup {
    pub labels: [&'static str; 4],
    pub q: RationalMatrix,
    pub triples: [StandardTriple; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct SetupChecks {
    pub q_skew: bool,
    pub in_lie_algebra: bool,
    /// `[Y, N̂] = −2N̂` and `[Y, N̂⁺] = 2N̂⁺`.
    pub eigen_relations: bool,
    /// `[N̂, N̂⁺] = Y`.
    pub closing_relation: bool,
    pub commuting: bool,
}

impl SetupChecks {
    pub fn all(&self) -> bool {
        self.q_skew && self.in_lie_algebra && self.eigen_relations && self.closing_relation && self.commuting
    }
}

pub fn build_setup() -> Sp4Setup {
    let q = RationalMatrix::from_ints(&[[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]]);
    let t1 = StandardTriple { n_plus: e(4, 1), y: e(4, 4).sub(&e(1, 1)), n: e(1, 4).neg() };
    let t2 = StandardTriple { n_plus: e(3, 2), y: e(3, 3).sub(&e(2, 2)), n: e(2, 3).neg() };
    Sp4Setup { labels: ["e1", "e2", "e3", "e4"], q, triples: [t1, t2] }
}

impl Sp4Setup {
    pub fn checks(&self) -> SetupChecks {
        let q = &self.q;
        let in_g = |x: &RationalMatrix| x.transpose().mul(q).add(&q.mul(x)).is_zero();
        let all: Vec<&RationalMatrix> =
            self.triples.iter().flat_map(|t| [&t.n_plus, &t.y, &t.n]).collect();
        let [a, b] = &self.triples;
        let commuting = [&a.n_plus, &a.y, &a.n]
            .iter()
            .all(|x| [&b.n_plus, &b.y, &b.n].iter().all(|z| x.bracket(z).is_zero()));
        SetupChecks {
            q_skew: q.transpose() == q.neg(),
            in_lie_algebra: all.iter().all(|x| in_g(x)),
            eigen_relations: self.triples.iter().all(|t| {
                t.y.bracket(&t.n) == t.n.scale(&rat(-2)) && t.y.bracket(&t.n_plus) == t.n_plus.scale(&rat(2))
            }),
            closing_relation: self.triples.iter().all(|t| t.n.bracket(&t.n_plus) == t.y),
            commuting,
        }
    }
}

/// Per-generator data `(p_j, q_j, r_j)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeSpec {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub r: Vec<f64>,
}

const NORMAL_FORM_TOL: f64 = 1e-12;

impl ConeSpec {
    /// Boundary normal form: `p_j, q_j ≥ 0` and `r_j² = p_j q_j`.
    pub fn new(p: Vec<f64>, q: Vec<f64>, r: Vec<f64>) -> Result<Self, SiegelError> {
        let c = Self::interior(p, q, r)?;
        for j in 0..c.s() {
            let (p, q, r) = (c.p[j], c.q[j], c.r[j]);
            if (r * r - p * q).abs() > NORMAL_FORM_TOL * (1.0 + p * q) {
                return Err(SiegelError::InvalidCone(format!("generator {} has r² ≠ pq", j + 1)));
            }
        }
        Ok(c)
    }

    /// Any generators with `p_j, q_j ≥ 0` and `r_j² ≤ p_j q_j`.
    pub fn interior(p: Vec<f64>, q: Vec<f64>, r: Vec<f64>) -> Result<Self, SiegelError> {
        if p.len() != q.len() || p.len() != r.len() || p.is_empty() {
            return Err(SiegelError::InvalidCone("p, q, r must have the same positive length".into()));
        }
        for j in 0..p.len() {
            if !(p[j] >= 0.0 && q[j] >= 0.0) || !r[j].is_finite() {
                return Err(SiegelError::InvalidCone(format!("generator {} has negative p or q", j + 1)));
            }
            if r[j] * r[j] > p[j] * q[j] * (1.0 + NORMAL_FORM_TOL) + NORMAL_FORM_TOL {
                return Err(SiegelError::InvalidCone(format!("generator {} has r² > pq", j + 1)));
            }
        }
        Ok(ConeSpec { p, q, r })
    }

    pub fn s(&self) -> usize {
        self.p.len()
    }

    /// `(p(y), q(y), r(y))`.
    pub fn evaluate(&self, y: &[f64]) -> Result<(f64, f64, f64), SiegelError> {
        if y.len() != self.s() {
            return Err(SiegelError::Family(format!("expected {} coordinates", self.s())));
        }
        if y.iter().any(|&v| !(v > 0.0)) {
            return Err(SiegelError::Family("y must be positive".into()));
        }
        let d = |c: &[f64]| c.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
        Ok((d(&self.p), d(&self.q), d(&self.r)))
    }

    /// The cone spanned by `N̂₁, N̂₂`.
    pub fn sigma_hat() -> Self {
        ConeSpec { p: vec![1.0, 0.0], q: vec![0.0, 1.0], r: vec![0.0, 0.0] }
    }

    /// `σ̂` with the labels swapped.
    pub fn sigma_hat_swapped() -> Self {
        ConeSpec { p: vec![0.0, 1.0], q: vec![1.0, 0.0], r: vec![0.0, 0.0] }
    }

    /// `p = q = 1`, `r = 0`: a single interior generator.
    pub fn one_variable() -> Self {
        ConeSpec { p: vec![1.0], q: vec![1.0], r: vec![0.0] }
    }
}

/// Normalized spanning vectors of a 2-plane in `ℂ⁴`: the rows have `e₃`, `e₄` coefficients
/// equal to the identity, so two planes agree iff their representatives do.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlagPoint {
    pub re: [[f64; 4]; 2],
    pub im: [[f64; 4]; 2],
}

impl FlagPoint {
    /// `span{e₃ − i(x₁e₁ + x₂e₂), e₄ − i(z₁e₁ + z₂e₂)}`.
    fn from_imaginary(x: [f64; 2], z: [f64; 2]) -> Self {
        FlagPoint {
            re: [[0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]],
            im: [[-x[0], -x[1], 0.0, 0.0], [-z[0], -z[1], 0.0, 0.0]],
        }
    }

    pub fn distance(&self, other: &FlagPoint) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..2 {
            for j in 0..4 {
                d = d.max((self.re[i][j] - other.re[i][j]).abs()).max((self.im[i][j] - other.im[i][j]).abs());
            }
        }
        d
    }
}

pub fn orbit_point(cone: &ConeSpec, y: &[f64]) -> Result<FlagPoint, SiegelError> {
    let (p, q, r) = cone.evaluate(y)?;
    Ok(FlagPoint::from_imaginary([r, p], [q, r]))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "parabolic", rename_all = "lowercase")]
pub enum SiegelSolution {
    Minimal { a: f64, d: f64, beta: f64 },
    Maximal { a: f64, b: [[f64; 2]; 2] },
}

impl SiegelSolution {
    pub fn flag_point(&self) -> FlagPoint {
        match *self {
            SiegelSolution::Minimal { a, d, beta } => {
                let (e2a, e2d) = ((2.0 * a).exp(), (2.0 * d).exp());
                FlagPoint::from_imaginary([beta * e2d, e2d], [e2a + beta * beta * e2d, beta * e2d])
            }
            SiegelSolution::Maximal { a, b } => {
                let e2a = (2.0 * a).exp();
                let dot = |u: [f64; 2], v: [f64; 2]| u[0] * v[0] + u[1] * v[1];
                let (b1, b2) = (b[0], b[1]);
                FlagPoint::from_imaginary([e2a * dot(b1, b2), e2a * dot(b2, b2)], [e2a * dot(b1, b1), e2a * dot(b1, b2)])
            }
        }
    }
}

pub fn solve_minimal(cone: &ConeSpec, y: &[f64]) -> Result<SiegelSolution, SiegelError> {
    let (p, q, r) = cone.evaluate(y)?;
    if p == 0.0 {
        return Err(SiegelError::PZero);
    }
    let e2a = q - r * r / p;
    if !(e2a > 0.0) {
        return Err(SiegelError::NotInDomain(format!("q p − r² = {} ≤ 0", q * p - r * r)));
    }
    Ok(SiegelSolution::Minimal { a: e2a.ln() / 2.0, d: p.ln() / 2.0, beta: r / p })
}

pub fn solve_maximal(cone: &ConeSpec, y: &[f64]) -> Result<SiegelSolution, SiegelError> {
    let (p, q, r) = cone.evaluate(y)?;
    let disc = p * q - r * r;
    if !(disc > 0.0) {
        return Err(SiegelError::NotInDomain(format!("p q − r² = {disc} ≤ 0")));
    }
    let e2a = disc.sqrt();
    let (g11, g12, g22) = (q / e2a, r / e2a, p / e2a);
    let b11 = g11.sqrt();
    let b21 = g12 / b11;
    let b22 = (g22 - b21 * b21).max(0.0).sqrt();
    Ok(SiegelSolution::Maximal { a: e2a.ln() / 2.0, b: [[b11, 0.0], [b21, b22]] })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parabolic {
    Minimal,
    Maximal,
}

impl std::str::FromStr for Parabolic {
    type Err = SiegelError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "minimal" => Ok(Parabolic::Minimal),
            "maximal" => Ok(Parabolic::Maximal),
            _ => Err(SiegelError::Family(format!("unknown parabolic {s}"))),
        }
    }
}

/// A curve `T ↦ y(T)` with monomial coordinates `y_j = c_j T^{k_j}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Family {
    pub terms: Vec<(f64, f64)>,
}

impl Family {
    /// Parses `y=(T,1)`, `(2T, T^2, 3)` and similar.
    pub fn parse(s: &str) -> Result<Self, SiegelError> {
        let bad = || SiegelError::Family(format!("cannot parse family {s:?}"));
        let s = s.trim();
        let s = s.strip_prefix("y=").or_else(|| s.strip_prefix("y =")).unwrap_or(s).trim();
        let inner = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let mut terms = Vec::new();
        for part in inner.split(',') {
            let part = part.trim().replace('*', "");
            let term = match part.find('T') {
                None => (part.parse::<f64>().map_err(|_| bad())?, 0.0),
                Some(pos) => {
                    let coef = &part[..pos];
                    let c = if coef.is_empty() { 1.0 } else { coef.parse::<f64>().map_err(|_| bad())? };
                    let rest = &part[pos + 1..];
                    let k = if rest.is_empty() {
                        1.0
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse::<f64>().map_err(|_| bad())?
                    };
                    (c, k)
                }
            };
            terms.push(term);
        }
        Ok(Family { terms })
    }

    pub fn at(&self, t: f64) -> Vec<f64> {
        self.terms.iter().map(|&(c, k)| c * t.powf(k)).collect()
    }
}

/// `10^lo … 10^hi` with `per_decade` points per decade.
pub fn log_grid(lo: i32, hi: i32, per_decade: usize) -> Vec<f64> {
    let n = (hi - lo) as usize * per_decade;
    (0..=n).map(|i| 10f64.powf(lo as f64 + i as f64 / per_decade as f64)).collect()
}

/// Least-squares slope of `log v` against `log T`.
pub fn loglog_slope(ts: &[f64], vs: &[f64]) -> f64 {
    let xs: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let ys: Vec<f64> = vs.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

pub const SLOPE_THRESHOLD: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "escapes-every-Siegel-set")]
    Escapes,
    #[serde(rename = "contained")]
    Contained,
}

#[derive(Clone, Debug, Serialize)]
pub struct Monitor {
    pub name: &'static str,
    /// `+1`: must stay bounded below; `−1`: must stay bounded above.
    pub direction: i8,
    pub values: Vec<f64>,
    pub slope: f64,
    pub infimum: f64,
    pub supremum: f64,
    pub unbounded: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub parabolic: Parabolic,
    pub grid: Vec<f64>,
    pub monitors: Vec<Monitor>,
    pub verdict: Verdict,
}

impl ProbeReport {
    pub fn csv(&self) -> String {
        let mut out = String::from("T");
        for m in &self.monitors {
            out.push(',');
            out.push_str(m.name);
        }
        out.push('\n');
        for (i, t) in self.grid.iter().enumerate() {
            out.push_str(&format!("{t:e}"));
            for m in &self.monitors {
                out.push_str(&format!(",{:e}", m.values[i]));
            }
            out.push('\n');
        }
        out
    }

    pub fn monitor(&self, name: &str) -> Option<&Monitor> {
        self.monitors.iter().find(|m| m.name == name)
    }
}

fn monitor(name: &'static str, direction: i8, grid: &[f64], values: Vec<f64>) -> Monitor {
    let slope = loglog_slope(grid, &values.iter().map(|v| v.abs().max(f64::MIN_POSITIVE)).collect::<Vec<_>>());
    let infimum = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let supremum = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let unbounded = if direction > 0 { slope < -SLOPE_THRESHOLD } else { slope > SLOPE_THRESHOLD };
    Monitor { name, direction, values, slope, infimum, supremum, unbounded }
}

pub fn boundedness_probe(
    cone: &ConeSpec,
    family: &Family,
    grid: &[f64],
    parabolic: Parabolic,
) -> Result<ProbeReport, SiegelError> {
    if grid.len() < 2 {
        return Err(SiegelError::Family("grid needs at least two points".into()));
    }
    let sols = grid
        .iter()
        .map(|&t| match parabolic {
            Parabolic::Minimal => solve_minimal(cone, &family.at(t)),
            Parabolic::Maximal => solve_maximal(cone, &family.at(t)),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let monitors = match parabolic {
        Parabolic::Minimal => {
            let pick = |f: &dyn Fn(f64, f64, f64) -> f64| -> Vec<f64> {
                sols.iter()
                    .map(|s| match *s {
                        SiegelSolution::Minimal { a, d, beta } => f(a, d, beta),
                        _ => unreachable!(),
                    })
                    .collect()
            };
            vec![
                monitor("exp(2(a-d))", 1, grid, pick(&|a, d, _| (2.0 * (a - d)).exp())),
                monitor("exp(2d)", 1, grid, pick(&|_, d, _| (2.0 * d).exp())),
                monitor("|beta|", -1, grid, pick(&|_, _, b| b.abs())),
            ]
        }
        Parabolic::Maximal => {
            let pick = |row: usize| -> Vec<f64> {
                sols.iter()
                    .map(|s| match *s {
                        SiegelSolution::Maximal { b, .. } => (b[row][0].powi(2) + b[row][1].powi(2)).powi(2),
                        _ => unreachable!(),
                    })
                    .collect()
            };
            vec![monitor("|B1|^4", -1, grid, pick(0)), monitor("|B2|^4", -1, grid, pick(1))]
        }
    };
    let verdict = if monitors.iter().any(|m| m.unbounded) { Verdict::Escapes } else { Verdict::Contained };
    Ok(ProbeReport { parabolic, grid: grid.to_vec(), monitors, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn setup_relations() {
        let s = build_setup();
        let c = s.checks();
        assert!(c.all(), "{c:?}");
        let [t1, t2] = &s.triples;
        assert_eq!(t1.y.bracket(&t1.n), t1.n.scale(&rat(-2)));
        assert!(t1.n.bracket(&t2.n).is_zero());
    }

    #[test]
    fn base_point() {
        let f = orbit_point(&ConeSpec::sigma_hat(), &[1.0, 1.0]).unwrap();
        assert_eq!(f.im, [[0.0, -1.0, 0.0, 0.0], [-1.0, 0.0, 0.0, 0.0]]);
        match solve_minimal(&ConeSpec::sigma_hat(), &[1.0, 1.0]).unwrap() {
            SiegelSolution::Minimal { a, d, beta } => assert_eq!((a, d, beta), (0.0, 0.0, 0.0)),
            _ => unreachable!(),
        }
    }

    #[test]
    fn normal_form_enforced() {
        assert!(ConeSpec::new(vec![1.0], vec![1.0], vec![0.0]).is_err());
        assert!(ConeSpec::new(vec![1.0, 4.0], vec![1.0, 1.0], vec![-1.0, 2.0]).is_ok());
        assert!(ConeSpec::interior(vec![1.0], vec![1.0], vec![2.0]).is_err());
    }

    #[test]
    fn domain_errors() {
        let c = ConeSpec::sigma_hat_swapped();
        assert_eq!(solve_minimal(&c, &[1.0, 0.0]).unwrap_err(), SiegelError::Family("y must be positive".into()));
        let only_q = ConeSpec { p: vec![0.0], q: vec![1.0], r: vec![0.0] };
        assert_eq!(solve_minimal(&only_q, &[1.0]).unwrap_err(), SiegelError::PZero);
        let line = ConeSpec { p: vec![1.0], q: vec![1.0], r: vec![1.0] };
        assert!(matches!(solve_maximal(&line, &[2.0]), Err(SiegelError::NotInDomain(_))));
        assert!(matches!(solve_minimal(&line, &[2.0]), Err(SiegelError::NotInDomain(_))));
    }

    #[test]
    fn family_parse() {
        assert_eq!(Family::parse("y=(T,1)").unwrap().at(5.0), vec![5.0, 1.0]);
        assert_eq!(Family::parse("(2T, T^2, 3)").unwrap().at(2.0), vec![4.0, 4.0, 3.0]);
        assert!(Family::parse("T,1").is_err());
    }

    #[test]
    fn probes() {
        let grid = log_grid(1, 6, 2);
        let fam = Family::parse("y=(T,1)").unwrap();
        let r = boundedness_probe(&ConeSpec::sigma_hat(), &fam, &grid, Parabolic::Minimal).unwrap();
        assert_eq!(r.verdict, Verdict::Escapes);
        assert!((r.monitor("exp(2(a-d))").unwrap().slope + 1.0).abs() < 1e-9);
        let r = boundedness_probe(&ConeSpec::sigma_hat_swapped(), &fam, &grid, Parabolic::Maximal).unwrap();
        assert_eq!(r.verdict, Verdict::Escapes);
        assert!((r.monitor("|B1|^4").unwrap().slope - 1.0).abs() < 1e-9);
        let one = Family::parse("(T)").unwrap();
        for p in [Parabolic::Minimal, Parabolic::Maximal] {
            assert_eq!(boundedness_probe(&ConeSpec::one_variable(), &one, &grid, p).unwrap().verdict, Verdict::Contained);
        }
    }
}

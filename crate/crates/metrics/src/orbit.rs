//! Nilpotent orbits `F(z, w) = exp(Σ z_j N_j) ζ(w) F₀`, the metric on `det Fⁿ`, and the
//! boundary metric on the graded pieces of `W(N_I)`.

use hsbb_core::filtration::cone_filtration;
use hsbb_core::{IndexSet, NilpotentCone, RationalMatrix};
use serde::{Deserialize, Serialize};

use crate::calculus::mixed_second_derivative;
use crate::flag::{hodge_decomposition, FlagPoint};
use crate::{
    column_span, complement_within, intersect, log_det_pd, pairing, to_complex, CMat, MetricsError, C, SVD_TOL,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Twist {
    None,
    /// `ζ(w) = exp(w ξ)`.
    ExpLinear { generator: RationalMatrix },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "OrbitRepr", into = "OrbitRepr")]
pub struct OrbitSpec {
    cone: NilpotentCone,
    base: FlagPoint,
    twist: Twist,
    n: Vec<CMat>,
    xi: Option<CMat>,
    q: CMat,
}

#[derive(Serialize, Deserialize)]
struct OrbitRepr {
    cone: NilpotentCone,
    hodge: Vec<usize>,
    #[serde(with = "crate::flag::complex_matrix")]
    frame: CMat,
    #[serde(default = "no_twist")]
    twist: Twist,
}

fn no_twist() -> Twist {
    Twist::None
}

impl TryFrom<OrbitRepr> for OrbitSpec {
    type Error = MetricsError;
    fn try_from(r: OrbitRepr) -> Result<Self, MetricsError> {
        let base = FlagPoint::new(r.cone.weight() as usize, r.hodge, r.frame)?;
        OrbitSpec::new(r.cone, base, r.twist)
    }
}

impl From<OrbitSpec> for OrbitRepr {
    fn from(o: OrbitSpec) -> Self {
        OrbitRepr { cone: o.cone, hodge: o.base.hodge, frame: o.base.frame, twist: o.twist }
    }
}

fn expm(m: &CMat) -> CMat {
    m.clone().exp()
}

fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `X F^p ⊆ F^{p−1}` for all `p`.
fn is_horizontal(x: &CMat, f: &FlagPoint) -> Result<bool, MetricsError> {
    for p in 1..=f.weight {
        if f.f(p - 1) > f.frame.ncols() {
            break;
        }
        let lower = f.level(p - 1)?;
        let image = x * f.level(p)?;
        let mut both = CMat::zeros(lower.nrows(), lower.ncols() + image.ncols());
        both.view_mut((0, 0), lower.shape()).copy_from(&lower);
        both.view_mut((0, lower.ncols()), image.shape()).copy_from(&image);
        if column_span(&both, 1e-9).ncols() > column_span(&lower, 1e-9).ncols() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `ℓ(t) = log t / 2πi`.
pub fn ell(t: C) -> C {
    t.ln() / C::new(0.0, 2.0 * std::f64::consts::PI)
}

impl OrbitSpec {
    pub fn new(cone: NilpotentCone, base: FlagPoint, twist: Twist) -> Result<Self, MetricsError> {
        let d = cone.dim();
        if base.dim() != d || base.weight != cone.weight() as usize {
            return Err(MetricsError::Invalid("flag does not match the cone".into()));
        }
        base.check()?;
        let n: Vec<CMat> = cone.generators().iter().map(to_complex).collect();
        let q = to_complex(cone.form());
        let xi = match &twist {
            Twist::None => None,
            Twist::ExpLinear { generator } => {
                if generator.rows() != d || generator.cols() != d {
                    return Err(MetricsError::Invalid("twist generator has the wrong size".into()));
                }
                let x = to_complex(generator);
                let scale = 1.0 + max_abs(&x);
                for (j, nj) in n.iter().enumerate() {
                    if max_abs(&(&x * nj - nj * &x)) > 1e-10 * scale * (1.0 + max_abs(nj)) {
                        return Err(MetricsError::Invalid(format!("twist does not commute with N_{}", j + 1)));
                    }
                }
                if !is_horizontal(&x, &base)? {
                    return Err(MetricsError::Invalid("twist generator is not horizontal at F₀".into()));
                }
                Some(x)
            }
        };
        for (j, nj) in n.iter().enumerate() {
            if !is_horizontal(nj, &base)? {
                return Err(MetricsError::Invalid(format!("N_{} is not horizontal at F₀", j + 1)));
            }
        }
        Ok(OrbitSpec { cone, base, twist, n, xi, q })
    }

    pub fn cone(&self) -> &NilpotentCone {
        &self.cone
    }

    pub fn base(&self) -> &FlagPoint {
        &self.base
    }

    pub fn twist(&self) -> &Twist {
        &self.twist
    }

    pub fn form(&self) -> &CMat {
        &self.q
    }

    pub fn generator(&self, j: usize) -> &CMat {
        &self.n[j]
    }

    pub fn weight(&self) -> usize {
        self.base.weight
    }

    pub fn z_from_t(&self, t: &[C]) -> Result<Vec<C>, MetricsError> {
        if t.len() != self.n.len() {
            return Err(MetricsError::Invalid(format!("expected {} coordinates t", self.n.len())));
        }
        if t.iter().any(|x| !(x.norm() > 0.0 && x.norm() < 1.0)) {
            return Err(MetricsError::Invalid("need 0 < |t_j| < 1".into()));
        }
        Ok(t.iter().map(|&x| ell(x)).collect())
    }

    fn zeta(&self, w: C) -> CMat {
        match &self.xi {
            None => CMat::identity(self.q.nrows(), self.q.nrows()),
            Some(x) => expm(&(x * w)),
        }
    }

    /// `exp(Σ z_j N_j) ζ(w)` applied to the whole frame.
    pub fn frame_z(&self, z: &[C], w: C) -> CMat {
        let d = self.q.nrows();
        let mut x = CMat::zeros(d, d);
        for (zj, nj) in z.iter().zip(&self.n) {
            x += nj * *zj;
        }
        expm(&x) * self.zeta(w) * &self.base.frame
    }

    pub fn flag_at_z(&self, z: &[C], w: C) -> FlagPoint {
        FlagPoint { weight: self.base.weight, hodge: self.base.hodge.clone(), frame: self.frame_z(z, w) }
    }

    /// `log det (iⁿ Q(v_a, v̄_b))` over the moving frame of `Fⁿ`.
    pub fn log_det_lambda_z(&self, z: &[C], w: C) -> Result<f64, MetricsError> {
        let n = self.weight();
        let f = self.frame_z(z, w);
        let top = f.columns(0, self.base.f(n)).into_owned();
        log_det_pd(&pairing(n as i64, &top, &self.q, &top), "Hodge metric on Fⁿ")
    }

    pub fn log_det_lambda(&self, t: &[C], w: C) -> Result<f64, MetricsError> {
        self.log_det_lambda_z(&self.z_from_t(t)?, w)
    }

    /// `log iⁿQ(v, v̄)` for the moving section through frame column `col` of `Fⁿ`.
    pub fn section_log_norm_z(&self, z: &[C], w: C, col: usize) -> Result<f64, MetricsError> {
        let n = self.weight();
        if col >= self.base.f(n) {
            return Err(MetricsError::Invalid(format!("column {col} is not in Fⁿ")));
        }
        let v = self.frame_z(z, w).columns(col, 1).into_owned();
        log_det_pd(&pairing(n as i64, &v, &self.q, &v), "Hodge norm of the section")
    }

    pub fn augmented_log_det_z(&self, z: &[C], w: C) -> Result<f64, MetricsError> {
        augmented_log_det_flag(&self.flag_at_z(z, w), &self.q)
    }

    pub fn augmented_log_det(&self, t: &[C], w: C) -> Result<f64, MetricsError> {
        self.augmented_log_det_z(&self.z_from_t(t)?, w)
    }

    /// Basis of `F₀ⁿ` adapted to `Fⁿ ∩ W_{n+q}(N_I)`, with the level `q` of each vector.
    pub fn adapted_basis(&self, i: &IndexSet) -> Result<Vec<(usize, CMat)>, MetricsError> {
        let n = self.weight();
        let w = cone_filtration(&self.cone, i).map_err(|e| MetricsError::Invalid(e.to_string()))?;
        let top = self.base.level(n)?;
        let mut prev = CMat::zeros(top.nrows(), 0);
        let mut out = Vec::new();
        for q in 0..=n {
            let step = w.step(n as i64 + q as i64);
            let wq = to_complex(step.basis()).transpose();
            let here = if step.dim() == 0 { CMat::zeros(top.nrows(), 0) } else { intersect(&top, &wq, SVD_TOL) };
            let new = complement_within(&here, &prev, SVD_TOL);
            if new.ncols() > 0 {
                out.push((q, new));
            }
            prev = here;
        }
        if prev.ncols() != top.ncols() {
            return Err(MetricsError::Invalid("Fⁿ is not exhausted by the weight filtration".into()));
        }
        Ok(out)
    }

    /// `log h_{Λ_I}(w) = Σ_q log det(i^{n−q} Q(v_a(w), N_I^q v̄_b(w)))`.
    pub fn boundary_log_det(&self, i: &IndexSet, w: C) -> Result<f64, MetricsError> {
        let n = self.weight();
        let d = self.q.nrows();
        let mut ni = CMat::zeros(d, d);
        for &j in i.indices() {
            ni += &self.n[j];
        }
        let zeta = self.zeta(w);
        let mut total = 0.0;
        for (q, basis) in self.adapted_basis(i)? {
            let v = &zeta * basis;
            let nq = ni.pow(q as u32);
            let g = pairing(n as i64 - q as i64, &v, &(&self.q * nq), &v);
            total += log_det_pd(&g, &format!("graded metric block q = {q}"))?;
        }
        Ok(total)
    }
}

/// `Σ_p n_p log det Gr^{n−p}F` with `n_p = ⌊(n−p+1)/2⌋`, using the full Hodge metric.
pub fn augmented_log_det_flag(flag: &FlagPoint, q: &CMat) -> Result<f64, MetricsError> {
    let n = flag.weight;
    let dec = hodge_decomposition(flag, q)?;
    let c = dec.weil_operator(n);
    let gram_log = |p: usize| -> Result<f64, MetricsError> {
        let f = flag.level(p)?;
        log_det_pd(&((&c * &f).transpose() * q * crate::conj(&f)), "Hodge metric on F^p")
    };
    let mut total = 0.0;
    let mut above = 0.0; // log det of F^{n−p+1}
    for p in 0..=(n.saturating_sub(1)) / 2 {
        let here = gram_log(n - p)?;
        let np = ((n - p + 1) / 2) as f64;
        total += np * (here - above);
        above = here;
    }
    Ok(total)
}

#[derive(Clone, Debug, Serialize)]
pub struct CurvatureRow {
    pub t: f64,
    pub value: f64,
    pub boundary_value: f64,
    pub error: f64,
    pub relative_error: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurvatureReport {
    pub index_set: IndexSet,
    pub w0: [f64; 2],
    pub boundary_value: f64,
    pub rows: Vec<CurvatureRow>,
    pub decreasing: bool,
    pub final_error: f64,
    pub final_relative_error: f64,
}

impl CurvatureReport {
    pub fn csv(&self) -> String {
        let mut s = String::from("t,value,boundary_value,error\n");
        for r in &self.rows {
            s.push_str(&format!("{:e},{:.15e},{:.15e},{:.6e}\n", r.t, r.value, r.boundary_value, r.error));
        }
        s
    }
}

pub const DEFAULT_STEP: f64 = 1e-2;

/// `|∂_w∂_w̄ log h_Λ(t, w₀) − ∂_w∂_w̄ log h_{Λ_I}(w₀)|` along `t_j = τ` for `j ∈ I`;
/// the remaining coordinates are held at `t_rest`.
pub fn curvature_limit_check(
    orbit: &OrbitSpec,
    i: &IndexSet,
    w0: C,
    taus: &[f64],
    t_rest: f64,
) -> Result<CurvatureReport, MetricsError> {
    orbit.cone.check_index(i).map_err(|e| MetricsError::Invalid(e.to_string()))?;
    if i.is_empty() {
        return Err(MetricsError::Invalid("index set must be nonempty".into()));
    }
    let boundary = mixed_second_derivative(
        |w| orbit.boundary_log_det(i, w).unwrap_or(f64::NAN),
        w0,
        DEFAULT_STEP,
    );
    orbit.boundary_log_det(i, w0)?;
    if !boundary.is_finite() {
        return Err(MetricsError::NotPolarized("boundary metric degenerates near w₀".into()));
    }
    let mut rows = Vec::new();
    for &tau in taus {
        let t: Vec<C> = (0..orbit.n.len())
            .map(|j| C::new(if i.contains(j) { tau } else { t_rest }, 0.0))
            .collect();
        let z = orbit.z_from_t(&t)?;
        orbit.log_det_lambda_z(&z, w0)?;
        let value = mixed_second_derivative(|w| orbit.log_det_lambda_z(&z, w).unwrap_or(f64::NAN), w0, DEFAULT_STEP);
        if !value.is_finite() {
            return Err(MetricsError::NotPolarized(format!("metric degenerates near t = {tau:e}")));
        }
        let error = (value - boundary).abs();
        let relative_error = if boundary == 0.0 { error } else { error / boundary.abs() };
        rows.push(CurvatureRow { t: tau, value, boundary_value: boundary, error, relative_error });
    }
    let decreasing = rows.windows(2).all(|p| p[1].error <= p[0].error);
    let last = rows.last().cloned();
    Ok(CurvatureReport {
        index_set: i.clone(),
        w0: [w0.re, w0.im],
        boundary_value: boundary,
        decreasing,
        final_error: last.as_ref().map_or(0.0, |r| r.error),
        final_relative_error: last.map_or(0.0, |r| r.relative_error),
        rows,
    })
}

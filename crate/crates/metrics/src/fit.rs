//! Fitting `h ≈ A (log|t|⁻¹)^m` along rays `t_j = τ^{e_j}`.

use serde::{Deserialize, Serialize};

use crate::orbit::OrbitSpec;
use crate::{MetricsError, C, FIT_TOL};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ray {
    /// `t_j = τ^{e_j}`.
    pub exponents: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "column", rename_all = "snake_case")]
pub enum FitTarget {
    /// `h_Λ = det` of the metric on `Fⁿ`.
    Det,
    /// Hodge norm of the section through one frame column of `F₀ⁿ`.
    Section(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpansionFit {
    pub m: usize,
    pub a: f64,
    pub residual: f64,
    /// `(m, rms residual)` for every candidate.
    pub candidates: Vec<(usize, f64)>,
    /// `(log|t|⁻¹, log h)`.
    pub samples: Vec<(f64, f64)>,
}

/// `τ = 10⁻², …, 10⁻¹²`.
pub fn default_taus() -> Vec<f64> {
    (2..=12).map(|k| 10f64.powi(-k)).collect()
}

pub fn expansion_fit(
    orbit: &OrbitSpec,
    ray: &Ray,
    w: C,
    target: FitTarget,
    taus: &[f64],
) -> Result<ExpansionFit, MetricsError> {
    if ray.exponents.len() != orbit.cone().k() || ray.exponents.iter().all(|&e| e <= 0.0) {
        return Err(MetricsError::Invalid("ray must have one positive-or-zero exponent per generator".into()));
    }
    if taus.len() < 3 {
        return Err(MetricsError::Invalid("need at least three samples".into()));
    }
    let mut samples = Vec::new();
    for &tau in taus {
        let t: Vec<C> = ray.exponents.iter().map(|&e| C::new(tau.powf(e), 0.0)).collect();
        let z = orbit.z_from_t(&t)?;
        let log_h = match target {
            FitTarget::Det => orbit.log_det_lambda_z(&z, w)?,
            FitTarget::Section(c) => orbit.section_log_norm_z(&z, w, c)?,
        };
        samples.push(((1.0 / tau).ln(), log_h));
    }
    let n = samples.len() as f64;
    let mut candidates = Vec::new();
    for m in 0..=2 * orbit.weight() {
        let log_a = samples.iter().map(|&(l, y)| y - m as f64 * l.ln()).sum::<f64>() / n;
        let rms = (samples.iter().map(|&(l, y)| (y - m as f64 * l.ln() - log_a).powi(2)).sum::<f64>() / n).sqrt();
        candidates.push((m, rms, log_a));
    }
    let &(m, residual, log_a) =
        candidates.iter().min_by(|a, b| a.1.total_cmp(&b.1)).expect("at least one candidate");
    if residual > FIT_TOL {
        return Err(MetricsError::PoorFit { residual, threshold: FIT_TOL });
    }
    Ok(ExpansionFit {
        m,
        a: log_a.exp(),
        residual,
        candidates: candidates.into_iter().map(|(m, r, _)| (m, r)).collect(),
        samples,
    })
}

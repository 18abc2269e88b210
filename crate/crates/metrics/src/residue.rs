//! `i∫_{C_t} φ_t ∧ φ̄_t` for `φ_t = Res g dx∧dy/(xy − t)` on `C_t = {xy = t, |x|, |y| ≤ 1}`.
//!
//! On `C_t` the residue is `g(x, t/x) dx/x`, so the integral is
//! `2∫_{|t|≤|x|≤1} |g(x, t/x)|² dA/|x|²`, computed in polar coordinates with `s = log r`.
//! For `g ≡ 1` this equals `4π log|t|⁻¹`, which fixes the normalization.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use serde::{Deserialize, Serialize};

use crate::C;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coef: f64,
    #[serde(default)]
    pub coef_im: f64,
    #[serde(default)]
    pub x: u32,
    #[serde(default)]
    pub y: u32,
}

/// `g(x, y) = Σ c x^i y^j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    pub terms: Vec<Term>,
}

impl Polynomial {
    pub fn constant(c: f64) -> Self {
        Polynomial { terms: vec![Term { coef: c, coef_im: 0.0, x: 0, y: 0 }] }
    }

    pub fn monomial(c: f64, x: u32, y: u32) -> Self {
        Polynomial { terms: vec![Term { coef: c, coef_im: 0.0, x, y }] }
    }

    pub fn eval(&self, x: C, y: C) -> C {
        self.terms.iter().map(|t| C::new(t.coef, t.coef_im) * x.powu(t.x) * y.powu(t.y)).sum()
    }

    pub fn at_origin(&self) -> C {
        self.eval(C::new(0.0, 0.0), C::new(0.0, 0.0))
    }

    fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.x + t.y).max().unwrap_or(0)
    }
}

pub const RESIDUE_NORMALIZATION: f64 = 4.0 * PI;

const GL_DEGREE: usize = 12;

pub fn residue_integral(g: &Polynomial, t: C) -> f64 {
    let r = t.norm();
    assert!(r > 0.0 && r < 1.0, "need 0 < |t| < 1");
    let lo = r.ln();
    let gl = GaussLegendre::new(NonZeroUsize::new(GL_DEGREE).expect("nonzero"));
    let n_theta = 16 * (g.degree() as usize + 2);
    let panels = (lo.abs().ceil() as usize).max(1) * 2;
    let width = -lo / panels as f64;
    let inner = |s: f64| -> f64 {
        let mut acc = 0.0;
        for k in 0..n_theta {
            let theta = 2.0 * PI * k as f64 / n_theta as f64;
            let x = C::from_polar(s.exp(), theta);
            acc += g.eval(x, t / x).norm_sqr();
        }
        acc * 2.0 * PI / n_theta as f64
    };
    let mut total = 0.0;
    for p in 0..panels {
        let a = lo + p as f64 * width;
        total += gl.integrate(a, a + width, inner);
    }
    2.0 * total
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidueRow {
    pub t: f64,
    pub log_inv_t: f64,
    pub value: f64,
    pub normalized: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidueSweep {
    pub rows: Vec<ResidueRow>,
    /// Least-squares slope of the normalized integral against `log|t|⁻¹`.
    pub slope: f64,
    pub intercept: f64,
    /// `|g(0,0)|²`.
    pub expected_slope: f64,
}

impl ResidueSweep {
    pub fn csv(&self) -> String {
        let mut s = String::from("t,log_inv_t,value,normalized\n");
        for r in &self.rows {
            s.push_str(&format!("{:e},{:.12e},{:.12e},{:.12e}\n", r.t, r.log_inv_t, r.value, r.normalized));
        }
        s
    }
}

pub fn residue_sweep(g: &Polynomial, ts: &[f64]) -> ResidueSweep {
    let rows: Vec<ResidueRow> = ts
        .iter()
        .map(|&t| {
            let value = residue_integral(g, C::new(t, 0.0));
            ResidueRow { t, log_inv_t: (1.0 / t).ln(), value, normalized: value / RESIDUE_NORMALIZATION }
        })
        .collect();
    let n = rows.len() as f64;
    let mx = rows.iter().map(|r| r.log_inv_t).sum::<f64>() / n;
    let my = rows.iter().map(|r| r.normalized).sum::<f64>() / n;
    let sxy: f64 = rows.iter().map(|r| (r.log_inv_t - mx) * (r.normalized - my)).sum();
    let sxx: f64 = rows.iter().map(|r| (r.log_inv_t - mx).powi(2)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    ResidueSweep { intercept: my - slope * mx, slope, expected_slope: g.at_origin().norm_sqr(), rows }
}

/// `10⁻², …, 10⁻⁵`.
pub fn default_ts() -> Vec<f64> {
    (2..=5).map(|k| 10f64.powi(-k)).collect()
}

//! Floating-point Hodge metrics along nilpotent orbits.

pub mod calculus;
pub mod fit;
pub mod fixtures;
pub mod flag;
pub mod orbit;
pub mod residue;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

pub use flag::{hodge_decomposition, FlagPoint, HodgeDecomposition};
pub use orbit::{OrbitSpec, Twist};

pub type C = Complex64;
pub type CMat = DMatrix<C>;

/// Relative singular-value threshold used for numerical ranks and intersections.
pub const SVD_TOL: f64 = 1e-10;
/// Tolerance for algebraic identities.
pub const ALGEBRAIC_TOL: f64 = 1e-8;
/// Tolerance for asymptotic fits.
pub const FIT_TOL: f64 = 1e-2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricsError {
    #[error("not a polarized Hodge structure: {0}")]
    NotPolarized(String),
    #[error("best fit residual {residual:.3e} exceeds {threshold:.0e}")]
    PoorFit { residual: f64, threshold: f64 },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub(crate) fn i_pow(k: i64) -> C {
    match k.rem_euclid(4) {
        0 => C::new(1.0, 0.0),
        1 => C::new(0.0, 1.0),
        2 => C::new(-1.0, 0.0),
        _ => C::new(0.0, -1.0),
    }
}

pub fn to_complex(m: &hsbb_core::RationalMatrix) -> CMat {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| C::new(hsbb_core::linalg::to_f64(&m[(i, j)]), 0.0))
}

pub(crate) fn conj(m: &CMat) -> CMat {
    m.map(|z| z.conj())
}

/// `i^k · Aᵀ Q conj(B)`.
pub(crate) fn pairing(k: i64, a: &CMat, q: &CMat, b: &CMat) -> CMat {
    (a.transpose() * q * conj(b)) * i_pow(k)
}

/// Hermitian part of `g`.
pub(crate) fn hermitian(g: &CMat) -> CMat {
    (g + g.adjoint()) * C::new(0.5, 0.0)
}

/// `log det` of a Hermitian positive-definite matrix via Cholesky.
pub(crate) fn log_det_pd(g: &CMat, what: &str) -> Result<f64, MetricsError> {
    if g.nrows() == 0 {
        return Ok(0.0);
    }
    let h = hermitian(g);
    let ch = nalgebra::Cholesky::new(h)
        .ok_or_else(|| MetricsError::NotPolarized(format!("{what} is not positive definite")))?;
    let l = ch.l();
    Ok((0..l.nrows()).map(|i| 2.0 * l[(i, i)].re.ln()).sum())
}

/// Smallest eigenvalue of the Hermitian part.
pub(crate) fn min_eigenvalue(g: &CMat) -> f64 {
    if g.nrows() == 0 {
        return f64::INFINITY;
    }
    hermitian(g).symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Singular values and right singular vectors, with the matrix padded to be tall so that
/// the full right basis is available.
fn svd_full(m: &CMat) -> (Vec<f64>, CMat) {
    let (r, c) = m.shape();
    let padded = if r < c {
        let mut p = CMat::zeros(c, c);
        p.view_mut((0, 0), (r, c)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("requested");
    (svd.singular_values.iter().cloned().collect(), vt.adjoint())
}

/// Orthonormal basis (columns) of the null space of `m`.
pub fn null_space(m: &CMat, tol: f64) -> CMat {
    let c = m.ncols();
    if c == 0 {
        return CMat::zeros(0, 0);
    }
    let (s, v) = svd_full(m);
    let smax = s.iter().cloned().fold(0.0, f64::max);
    let cols: Vec<usize> = (0..c).filter(|&j| s[j] <= tol * smax.max(1e-300) || smax == 0.0).collect();
    CMat::from_fn(c, cols.len(), |i, j| v[(i, cols[j])])
}

/// Orthonormal basis of the column span of `m`.
pub fn column_span(m: &CMat, tol: f64) -> CMat {
    if m.ncols() == 0 {
        return CMat::zeros(m.nrows(), 0);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("requested");
    let s = &svd.singular_values;
    let smax = s.iter().cloned().fold(0.0, f64::max);
    let cols: Vec<usize> = (0..s.len()).filter(|&j| smax > 0.0 && s[j] > tol * smax).collect();
    CMat::from_fn(m.nrows(), cols.len(), |i, j| u[(i, cols[j])])
}

/// Orthonormal basis of `span(A) ∩ span(B)`.
pub fn intersect(a: &CMat, b: &CMat, tol: f64) -> CMat {
    let (a, b) = (column_span(a, tol), column_span(b, tol));
    let d = a.nrows();
    if a.ncols() == 0 || b.ncols() == 0 {
        return CMat::zeros(d, 0);
    }
    let mut m = CMat::zeros(d, a.ncols() + b.ncols());
    m.view_mut((0, 0), (d, a.ncols())).copy_from(&a);
    m.view_mut((0, a.ncols()), (d, b.ncols())).copy_from(&(-&b));
    let ns = null_space(&m, tol);
    let x = ns.rows(0, a.ncols()).into_owned();
    column_span(&(a * x), tol)
}

/// Orthonormal basis of the orthogonal complement of `sub` inside `span`.
pub(crate) fn complement_within(span: &CMat, sub: &CMat, tol: f64) -> CMat {
    let proj = if sub.ncols() == 0 { span.clone() } else { span - sub * (sub.adjoint() * span) };
    column_span(&proj, tol)
}

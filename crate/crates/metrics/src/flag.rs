//! Flags `Fⁿ ⊆ … ⊆ F⁰` given by a single frame and their Hodge decompositions.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{
    column_span, conj, intersect, min_eigenvalue, pairing, CMat, MetricsError, ALGEBRAIC_TOL, C, SVD_TOL,
};

/// Complex matrices in JSON: rows of `[re, im]` pairs.
pub mod complex_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &CMat, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> =
            (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<CMat, D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(d)?;
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(serde::de::Error::custom("ragged complex matrix"));
        }
        Ok(CMat::from_fn(r, c, |i, j| C::new(rows[i][j][0], rows[i][j][1])))
    }
}

/// `F^p` is the span of the first `f^p = h^{n,0} + … + h^{p,n−p}` columns of `frame`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlagPoint {
    pub weight: usize,
    /// `h^{n,0}, h^{n−1,1}, …, h^{0,n}`.
    pub hodge: Vec<usize>,
    #[serde(with = "complex_matrix")]
    pub frame: CMat,
}

impl FlagPoint {
    pub fn new(weight: usize, hodge: Vec<usize>, frame: CMat) -> Result<Self, MetricsError> {
        if hodge.len() != weight + 1 {
            return Err(MetricsError::Invalid(format!("need {} Hodge numbers", weight + 1)));
        }
        let d: usize = hodge.iter().sum();
        if frame.nrows() != d || frame.ncols() < hodge[0] || frame.ncols() > d {
            return Err(MetricsError::Invalid(format!(
                "frame must be {d} × f with h^(n,0) ≤ f ≤ {d}, got {} × {}",
                frame.nrows(),
                frame.ncols()
            )));
        }
        Ok(FlagPoint { weight, hodge, frame })
    }

    pub fn dim(&self) -> usize {
        self.hodge.iter().sum()
    }

    /// `dim F^p`.
    pub fn f(&self, p: usize) -> usize {
        if p > self.weight {
            return 0;
        }
        self.hodge[..=self.weight - p].iter().sum()
    }

    /// Frame of `F^p`.
    pub fn level(&self, p: usize) -> Result<CMat, MetricsError> {
        let f = self.f(p);
        if f > self.frame.ncols() {
            return Err(MetricsError::Invalid(format!("frame does not determine F^{p}")));
        }
        Ok(self.frame.columns(0, f).into_owned())
    }

    /// Containments and dimensions hold numerically.
    pub fn check(&self) -> Result<(), MetricsError> {
        for p in 0..=self.weight {
            if self.f(p) > self.frame.ncols() {
                break;
            }
            let r = column_span(&self.level(p)?, SVD_TOL).ncols();
            if r != self.f(p) {
                return Err(MetricsError::Invalid(format!("F^{p} has rank {r}, expected {}", self.f(p))));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct HodgeDecomposition {
    /// `pieces[k]` spans `H^{n−k,k}` (orthonormal columns).
    pub pieces: Vec<CMat>,
    /// Smallest eigenvalue of the Hodge form over all pieces (orthonormal bases).
    pub min_eigenvalue: f64,
    /// Smallest singular value of the stacked orthonormal bases; positive iff the sum is direct.
    pub direct_sum_margin: f64,
}

impl HodgeDecomposition {
    /// The Weil operator `C = i^{p−q}` on `H^{p,q}`.
    pub fn weil_operator(&self, weight: usize) -> CMat {
        let p = self.stacked();
        let d = p.nrows();
        let mut diag = CMat::zeros(d, d);
        let mut col = 0;
        for (k, piece) in self.pieces.iter().enumerate() {
            let ph = crate::i_pow(weight as i64 - 2 * k as i64);
            for _ in 0..piece.ncols() {
                diag[(col, col)] = ph;
                col += 1;
            }
        }
        let inv = p.clone().try_inverse().expect("direct sum");
        p * diag * inv
    }

    pub fn stacked(&self) -> CMat {
        let d = self.pieces.first().map_or(0, |m| m.nrows());
        let total: usize = self.pieces.iter().map(|m| m.ncols()).sum();
        let mut out = CMat::zeros(d, total);
        let mut col = 0;
        for m in &self.pieces {
            out.view_mut((0, col), (d, m.ncols())).copy_from(m);
            col += m.ncols();
        }
        out
    }
}

/// `H^{p,q} = F^p ∩ conj(F^q)`, checked against the Hodge numbers and the second bilinear relation.
pub fn hodge_decomposition(f: &FlagPoint, q: &CMat) -> Result<HodgeDecomposition, MetricsError> {
    let n = f.weight;
    let d = f.dim();
    if f.frame.ncols() != d {
        return Err(MetricsError::Invalid("the Hodge decomposition needs a full frame".into()));
    }
    if q.nrows() != d || q.ncols() != d {
        return Err(MetricsError::Invalid("form has the wrong size".into()));
    }
    f.check()?;
    let mut pieces = Vec::new();
    let mut min_ev = f64::INFINITY;
    for k in 0..=n {
        let (p, qq) = (n - k, k);
        let h = intersect(&f.level(p)?, &conj(&f.level(qq)?), SVD_TOL);
        if h.ncols() != f.hodge[k] {
            return Err(MetricsError::NotPolarized(format!(
                "dim H^({p},{qq}) = {} but h^({p},{qq}) = {}",
                h.ncols(),
                f.hodge[k]
            )));
        }
        let ev = min_eigenvalue(&pairing(p as i64 - qq as i64, &h, q, &h));
        if !(ev > ALGEBRAIC_TOL) {
            return Err(MetricsError::NotPolarized(format!(
                "Hodge form on H^({p},{qq}) has eigenvalue {ev:.3e}"
            )));
        }
        min_ev = min_ev.min(ev);
        pieces.push(h);
    }
    let dec = HodgeDecomposition { pieces, min_eigenvalue: min_ev, direct_sum_margin: 0.0 };
    let s = dec.stacked().svd(false, false).singular_values;
    let margin = s.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(margin > ALGEBRAIC_TOL) {
        return Err(MetricsError::NotPolarized(format!("Hodge pieces are not in direct sum ({margin:.3e})")));
    }
    Ok(HodgeDecomposition { direct_sum_margin: margin, ..dec })
}

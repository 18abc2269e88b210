//! Nilpotent cones: a polarizing form together with commuting nilpotent logarithms.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::linalg::{kernel, RationalMatrix, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConeError {
    #[error("form must be a {0}×{0} matrix")]
    FormShape(usize),
    #[error("form symmetry does not match weight parity or the declared flag")]
    FormSymmetry,
    #[error("form is degenerate")]
    FormDegenerate,
    #[error("generator {0} has wrong shape")]
    GeneratorShape(usize),
    #[error("generator {0} is not nilpotent")]
    NotNilpotent(usize),
    #[error("generators {0} and {1} do not commute")]
    NotCommuting(usize, usize),
    #[error("generator {0} does not preserve the form infinitesimally")]
    NotIsometry(usize),
    #[error("cone needs at least one nonzero generator")]
    Degenerate,
    #[error("index {0} out of range for a cone with {1} generators")]
    IndexOutOfRange(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Symmetric,
    Alternating,
}

/// Sorted, duplicate-free set of generator indices. Stored 0-based,
/// serialized and displayed 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(idx: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = idx.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn full(k: usize) -> Self {
        Self((0..k).collect())
    }

    pub fn from_one_based(idx: &[usize]) -> Self {
        Self::new(idx.iter().map(|&i| i - 1))
    }

    /// Subset encoded by the bits of `mask`.
    pub fn from_mask(mask: u64, k: usize) -> Self {
        Self((0..k).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &i| m | 1 << i)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    pub fn complement(&self, k: usize) -> IndexSet {
        IndexSet((0..k).filter(|&i| !self.contains(i)).collect())
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.one_based().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IndexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<usize> = Vec::deserialize(d)?;
        if v.contains(&0) {
            return Err(serde::de::Error::custom("index sets are 1-based"));
        }
        Ok(Self::from_one_based(&v))
    }
}

#[derive(Deserialize)]
struct ConeJson {
    dim: usize,
    weight: u32,
    form: RationalMatrix,
    symmetry: Symmetry,
    generators: Vec<RationalMatrix>,
}

/// Polarizing form `Q` on ℚ^dim together with commuting nilpotents `N_1 … N_k`
/// satisfying `NᵢᵀQ + QNᵢ = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilpotentCone {
    dim: usize,
    weight: u32,
    form: RationalMatrix,
    symmetry: Symmetry,
    generators: Vec<RationalMatrix>,
}

impl<'de> Deserialize<'de> for NilpotentCone {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let c = ConeJson::deserialize(d)?;
        NilpotentCone::new(c.dim, c.weight, c.form, c.symmetry, c.generators)
            .map_err(serde::de::Error::custom)
    }
}

impl NilpotentCone {
    pub fn new(
        dim: usize,
        weight: u32,
        form: RationalMatrix,
        symmetry: Symmetry,
        generators: Vec<RationalMatrix>,
    ) -> Result<Self, ConeError> {
        if form.rows() != dim || form.cols() != dim {
            return Err(ConeError::FormShape(dim));
        }
        let expected = if weight % 2 == 0 { Symmetry::Symmetric } else { Symmetry::Alternating };
        let qt = form.transpose();
        let sym_ok = match symmetry {
            Symmetry::Symmetric => qt == form,
            Symmetry::Alternating => qt == form.neg(),
        };
        if symmetry != expected || !sym_ok {
            return Err(ConeError::FormSymmetry);
        }
        if form.rank() != dim {
            return Err(ConeError::FormDegenerate);
        }
        for (i, n) in generators.iter().enumerate() {
            if n.rows() != dim || n.cols() != dim {
                return Err(ConeError::GeneratorShape(i));
            }
            if !n.pow(dim as u32).is_zero() {
                return Err(ConeError::NotNilpotent(i));
            }
            if !n.transpose().mul(&form).add(&form.mul(n)).is_zero() {
                return Err(ConeError::NotIsometry(i));
            }
            for (j, m) in generators.iter().enumerate().take(i) {
                if !n.bracket(m).is_zero() {
                    return Err(ConeError::NotCommuting(j, i));
                }
            }
        }
        if generators.iter().all(RationalMatrix::is_zero) {
            return Err(ConeError::Degenerate);
        }
        Ok(Self { dim, weight, form, symmetry, generators })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn form(&self) -> &RationalMatrix {
        &self.form
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn generators(&self) -> &[RationalMatrix] {
        &self.generators
    }

    pub fn k(&self) -> usize {
        self.generators.len()
    }

    pub fn check_index(&self, i: &IndexSet) -> Result<(), ConeError> {
        match i.indices().iter().find(|&&x| x >= self.k()) {
            Some(&x) => Err(ConeError::IndexOutOfRange(x + 1, self.k())),
            None => Ok(()),
        }
    }

    /// `N_I = Σ_{i∈I} N_i`.
    pub fn n_sum(&self, i: &IndexSet) -> RationalMatrix {
        i.indices()
            .iter()
            .fold(RationalMatrix::zeros(self.dim, self.dim), |acc, &j| acc.add(&self.generators[j]))
    }

    /// `Σ aᵢ Nᵢ`.
    pub fn combination(&self, a: &[crate::linalg::Rational]) -> RationalMatrix {
        assert_eq!(a.len(), self.k());
        self.generators
            .iter()
            .zip(a)
            .fold(RationalMatrix::zeros(self.dim, self.dim), |acc, (n, c)| acc.add(&n.scale(c)))
    }

    /// The Lie algebra `𝔤 = {X : XᵀQ + QX = 0}` as a subspace of row-major flattened
    /// endomorphisms.
    pub fn lie_algebra(&self) -> Subspace {
        lie_algebra(&self.form)
    }
}

pub fn lie_algebra(q: &RationalMatrix) -> Subspace {
    let d = q.rows();
    let mut eqs = RationalMatrix::zeros(d * d, d * d);
    // (XᵀQ + QX)_{ij} = Σ_k X_{ki} Q_{kj} + Q_{ik} X_{kj}
    for i in 0..d {
        for j in 0..d {
            let row = i * d + j;
            for k in 0..d {
                eqs[(row, k * d + i)] += &q[(k, j)];
                eqs[(row, k * d + j)] += &q[(i, k)];
            }
        }
    }
    kernel(&eqs)
}

/// Matrix of `ad N : X ↦ NX − XN` on row-major flattened endomorphisms.
pub fn ad_matrix(n: &RationalMatrix) -> RationalMatrix {
    let d = n.rows();
    let mut m = RationalMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            let row = a * d + b;
            for k in 0..d {
                m[(row, k * d + b)] += &n[(a, k)];
                m[(row, a * d + k)] -= &n[(k, b)];
            }
        }
    }
    m
}

/// Inverse of row-major flattening.
pub fn unflatten(v: &[crate::linalg::Rational], d: usize) -> RationalMatrix {
    RationalMatrix::new(d, d, v.to_vec())
}

//! Monodromy weight filtrations, their adjoint versions on 𝔤, graded pieces,
//! primitive subspaces and the polarizations `Q(u, N^a v)`.
//!
//! On `V` filtrations are centered at the weight `n`; on `𝔤 ⊂ End(V)` at `0`.

use serde::Serialize;
use thiserror::Error;

use crate::cone::{ad_matrix, ConeError, IndexSet, NilpotentCone};
use crate::linalg::{kernel, restrict_map, Rational, RationalMatrix, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiltrationError {
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("map does not respect the filtration with shift {0}")]
    NotFiltrationCompatible(i64),
    #[error("index set must be nonempty")]
    EmptyIndexSet,
    #[error("primitive level {0} outside 0..=weight")]
    LevelOutOfRange(i64),
    #[error(transparent)]
    Cone(#[from] ConeError),
}

/// Increasing filtration `W_lo ⊆ … ⊆ W_hi = space` with `W_{lo−1} = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightFiltration {
    center: i64,
    lo: i64,
    space: Subspace,
    steps: Vec<Subspace>,
}

impl WeightFiltration {
    pub fn center(&self) -> i64 {
        self.center
    }

    /// Lowest level with a nonzero step (or the center if the space is zero).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.steps.len() as i64 - 1
    }

    /// The filtered space (the last step).
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn step(&self, l: i64) -> Subspace {
        if l < self.lo {
            Subspace::zero(self.space.ambient_dim())
        } else if l > self.hi() {
            self.space.clone()
        } else {
            self.steps[(l - self.lo) as usize].clone()
        }
    }

    fn step_ref(&self, l: i64) -> Option<&Subspace> {
        (self.lo..=self.hi()).contains(&l).then(|| &self.steps[(l - self.lo) as usize])
    }

    pub fn levels(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn graded_dim(&self, l: i64) -> usize {
        self.step(l).dim() - self.step(l - 1).dim()
    }

    /// Builds a filtration from explicit steps (used to test uniqueness).
    pub fn from_steps(center: i64, lo: i64, steps: Vec<Subspace>) -> Self {
        let space = steps.last().cloned().expect("at least one step");
        Self { center, lo, space, steps }
    }

    pub fn steps(&self) -> &[Subspace] {
        &self.steps
    }
}

/// Representatives of `Gr_a = W_a / W_{a−1}` inside the ambient space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedPiece {
    pub level: i64,
    pub dim: usize,
    pub representatives: RationalMatrix,
}

/// Induced map `Gr_a → Gr_{a+shift}` in representative bases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedMap {
    pub from: i64,
    pub to: i64,
    pub matrix: RationalMatrix,
}

pub fn is_nilpotent(n: &RationalMatrix) -> bool {
    n.is_square() && n.pow(n.rows() as u32).is_zero()
}

/// Weight filtration of a nilpotent `N` on the whole ambient space.
pub fn weight_filtration(n: &RationalMatrix, center: i64) -> Result<WeightFiltration, FiltrationError> {
    weight_filtration_on(n, &Subspace::full(n.rows()), center)
}

/// Weight filtration of `N` restricted to an `N`-stable subspace `space`.
///
/// Uses the closed form `W_ℓ = Σ_{j ≥ max(0,−ℓ)} N^j ker N^{ℓ+2j+1}` (relative to the
/// center), computed inside `space`.
pub fn weight_filtration_on(
    n: &RationalMatrix,
    space: &Subspace,
    center: i64,
) -> Result<WeightFiltration, FiltrationError> {
    let d = space.dim();
    // work in coordinates of `space`
    let a = restrict_map(n, space, space).map_err(|_| FiltrationError::NotNilpotent)?;
    if !a.pow(d as u32).is_zero() {
        return Err(FiltrationError::NotNilpotent);
    }
    let mut powers = vec![RationalMatrix::identity(d)];
    while !powers.last().unwrap().is_zero() {
        let next = powers.last().unwrap().mul(&a);
        powers.push(next);
    }
    // N^m ≠ 0, N^{m+1} = 0
    let m = powers.len() as i64 - 2;
    let m = m.max(0);
    let ker_pow = |e: i64| -> Subspace {
        if e as usize >= powers.len() - 1 || e > m {
            Subspace::full(d)
        } else {
            kernel(&powers[e as usize])
        }
    };
    let power = |j: i64| -> RationalMatrix {
        powers.get(j as usize).cloned().unwrap_or_else(|| RationalMatrix::zeros(d, d))
    };
    let to_ambient = |s: &Subspace| -> Subspace {
        let rows: Vec<Vec<Rational>> = s
            .basis_vecs()
            .iter()
            .map(|c| {
                let mut v = vec![Rational::from_integer(0.into()); space.ambient_dim()];
                for (ci, b) in c.iter().zip(space.basis_vecs()) {
                    for (x, y) in v.iter_mut().zip(&b) {
                        *x += ci * y;
                    }
                }
                v
            })
            .collect();
        Subspace::from_vectors(space.ambient_dim(), &rows)
    };
    let mut steps = Vec::new();
    for l in -m..=m {
        let mut w = Subspace::zero(d);
        for j in (-l).max(0)..=m {
            let e = l + 2 * j + 1;
            w = w.sum(&ker_pow(e).map(&power(j)));
        }
        steps.push(to_ambient(&w));
    }
    Ok(WeightFiltration { center, lo: center - m, space: space.clone(), steps })
}

/// `W(ad N_I)` on `𝔤`, centered at 0, as subspaces of flattened `End(V)`.
pub fn adjoint_filtration(cone: &NilpotentCone, i: &IndexSet) -> Result<WeightFiltration, FiltrationError> {
    if i.is_empty() {
        return Err(FiltrationError::EmptyIndexSet);
    }
    cone.check_index(i)?;
    let ad = ad_matrix(&cone.n_sum(i));
    weight_filtration_on(&ad, &cone.lie_algebra(), 0)
}

/// `W(N_I)` on `V`, centered at the weight. `I = ∅` gives the trivial filtration.
pub fn cone_filtration(cone: &NilpotentCone, i: &IndexSet) -> Result<WeightFiltration, FiltrationError> {
    cone.check_index(i)?;
    weight_filtration(&cone.n_sum(i), cone.weight() as i64)
}

/// Whether `X ∈ W_level(ad N_I)`.
pub fn in_adjoint_step(
    cone: &NilpotentCone,
    i: &IndexSet,
    x: &RationalMatrix,
    level: i64,
) -> Result<bool, FiltrationError> {
    let w = adjoint_filtration(cone, i)?;
    Ok(w.step(level).contains(&x.flatten()))
}

pub fn graded_pieces(w: &WeightFiltration) -> Vec<GradedPiece> {
    w.levels()
        .map(|l| {
            let top = w.step(l);
            let reps = top.complement_of(&w.step(l - 1));
            GradedPiece { level: l, dim: reps.rows(), representatives: reps }
        })
        .collect()
}

/// Coordinates of `x ∈ W_b` in the representative basis of `Gr_b`.
fn graded_coordinates(w: &WeightFiltration, b: i64, x: &[Rational]) -> Option<Vec<Rational>> {
    let reduced = w.step(b - 1).reduce(x);
    let reps = w.step(b).complement_of(&w.step(b - 1));
    Subspace::span(&reps).coordinates(&reduced)
}

/// Maps `Gr_a → Gr_{a+shift}` induced by `M` for every level of `W`.
pub fn induced_map(
    m: &RationalMatrix,
    w: &WeightFiltration,
    shift: i64,
) -> Result<Vec<GradedMap>, FiltrationError> {
    for l in w.levels() {
        let img = w.step_ref(l).expect("in range").map(m);
        if !w.step(l + shift).contains_subspace(&img) {
            return Err(FiltrationError::NotFiltrationCompatible(shift));
        }
    }
    let pieces = graded_pieces(w);
    let mut out = Vec::new();
    for p in &pieces {
        let to = p.level + shift;
        let to_dim = w.graded_dim(to);
        let mut mat = RationalMatrix::zeros(to_dim, p.dim);
        for (j, r) in p.representatives.row_vecs().iter().enumerate() {
            let img = m.apply(r);
            let c = graded_coordinates(w, to, &img)
                .ok_or(FiltrationError::NotFiltrationCompatible(shift))?;
            for (i, x) in c.into_iter().enumerate() {
                mat[(i, j)] = x;
            }
        }
        out.push(GradedMap { from: p.level, to, matrix: mat });
    }
    Ok(out)
}

/// Primitive space `ker{N_I^{a+1} : Gr_{n+a} → Gr_{n−a−2}}`, returned as
/// representatives in `V`.
pub fn primitive_subspace(
    cone: &NilpotentCone,
    i: &IndexSet,
    a: i64,
) -> Result<GradedPiece, FiltrationError> {
    let n = cone.weight() as i64;
    if !(0..=n).contains(&a) {
        return Err(FiltrationError::LevelOutOfRange(a));
    }
    let w = cone_filtration(cone, i)?;
    let na1 = cone.n_sum(i).pow((a + 1) as u32);
    let p = w.step(n + a).intersection(&w.step(n - a - 3).preimage(&na1));
    let reps = p.complement_of(&w.step(n + a - 1));
    Ok(GradedPiece { level: n + a, dim: reps.rows(), representatives: reps })
}

/// `Q^I_a(u, v) = Q(u, N_I^a v)` on primitive representatives.
pub fn polarization_form(
    cone: &NilpotentCone,
    i: &IndexSet,
    a: i64,
) -> Result<RationalMatrix, FiltrationError> {
    let prim = primitive_subspace(cone, i, a)?;
    Ok(pairing_on(cone, i, a, &prim.representatives))
}

/// `Q(u_r, N_I^a u_s)` for the rows `u` of `reps`.
pub fn pairing_on(cone: &NilpotentCone, i: &IndexSet, a: i64, reps: &RationalMatrix) -> RationalMatrix {
    let na = cone.n_sum(i).pow(a as u32);
    reps.mul(cone.form()).mul(&na).mul(&reps.transpose())
}

#[derive(Clone, Debug, Serialize)]
pub struct RwfpReport {
    pub i: IndexSet,
    pub i_prime: IndexSet,
    /// `N_{I'} ∈ W₋₁(ad N_I)`.
    pub member: bool,
    pub adjoint_equal: bool,
    pub weight_equal: bool,
    /// `member ⇒ adjoint_equal`.
    pub consistent: bool,
    pub w_i: WeightFiltration,
    pub w_i_prime: WeightFiltration,
}

pub fn rwfp_consequence_check(
    cone: &NilpotentCone,
    i: &IndexSet,
    i_prime: &IndexSet,
) -> Result<RwfpReport, FiltrationError> {
    let wi = adjoint_filtration(cone, i)?;
    let wip = adjoint_filtration(cone, i_prime)?;
    let member = wi.step(-1).contains(&cone.n_sum(i_prime).flatten());
    let adjoint_equal = wi == wip;
    let weight_equal = cone_filtration(cone, i)? == cone_filtration(cone, i_prime)?;
    Ok(RwfpReport {
        i: i.clone(),
        i_prime: i_prime.clone(),
        member,
        adjoint_equal,
        weight_equal,
        consistent: !member || adjoint_equal,
        w_i: wi,
        w_i_prime: wip,
    })
}

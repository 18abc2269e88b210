//! Exact rational linear algebra and integer lattice utilities.
//!
//! Vectors are row vectors. A matrix `M` acts on a vector `v` by `M·vᵀ`,
//! so `kernel(M)` is the set of rows `v` with `M·vᵀ = 0`.
//! Subspaces are stored in reduced row echelon form, which makes equality
//! of subspaces a syntactic comparison.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("map does not send the domain subspace into the codomain subspace")]
    NotInvariant,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("cannot parse rational `{0}`")]
    Parse(String),
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"` or a decimal-free integer string.
pub fn parse_rational(s: &str) -> Result<Rational, LinalgError> {
    let s = s.trim();
    let err = || LinalgError::Parse(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Serde helpers for a rational written as a JSON string (or integer).
pub mod rational_serde {
    use super::*;

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Str(String),
        Int(i64),
    }

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Str(s) => parse_rational(&s).map_err(D::Error::custom),
            Raw::Int(i) => Ok(rat(i)),
        }
    }
}

/// Serde helpers for a vector of rationals.
pub mod rational_vec_serde {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "rational_serde")] Rational);

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let w: Vec<Wrap> = v.iter().cloned().map(Wrap).collect();
        w.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let w: Vec<Wrap> = Vec::deserialize(d)?;
        Ok(w.into_iter().map(|x| x.0).collect())
    }
}

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols, "entries length must be rows × cols");
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![Rational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Self::new(r, cols, data)
    }

    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        Self::from_rows(
            rows.iter().map(|r| r.as_ref().iter().map(|&x| rat(x)).collect()).collect(),
            cols,
        )
    }

    pub fn from_int_rows(rows: &[Vec<BigInt>], cols: usize) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
                .collect(),
            cols,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Row-major flattening.
    pub fn flatten(&self) -> Vec<Rational> {
        self.data.clone()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Self::new(self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Self::new(self.rows, self.cols, data)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.rows, self.cols, self.data.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.rows, self.cols, self.data.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn pow(&self, e: u32) -> Self {
        assert!(self.is_square());
        let mut out = Self::identity(self.rows);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Commutator `[A, B] = AB − BA`.
    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// `M·vᵀ` as a vector.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Stacks rows of `other` beneath `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self::new(self.rows + other.rows, self.cols, data)
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).iter().map(to_f64).collect()).collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(i, j)] - &f * &m[(r, j)];
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &piv;
                for j in c..n {
                    let v = &m[(i, j)] - &f * &m[(c, j)];
                    m[(i, j)] = v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Cell(#[serde(with = "rational_serde")] Rational);
        let rows: Vec<Vec<Cell>> = Vec::deserialize(d)?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(D::Error::custom("ragged matrix rows"));
        }
        Ok(Self::from_rows(
            rows.into_iter().map(|r| r.into_iter().map(|c| c.0).collect()).collect(),
            cols,
        ))
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// A subspace of ℚⁿ held in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: RationalMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Row span of `rows`.
    pub fn span(rows: &RationalMatrix) -> Self {
        let (r, pivots) = rows.rref();
        let k = pivots.len();
        let data = r.data[..k * r.cols].to_vec();
        Self { ambient: rows.cols(), basis: RationalMatrix::new(k, rows.cols(), data), pivots }
    }

    pub fn from_vectors(ambient: usize, vecs: &[Vec<Rational>]) -> Self {
        Self::span(&RationalMatrix::from_rows(vecs.to_vec(), ambient))
    }

    pub fn zero(ambient: usize) -> Self {
        Self::span(&RationalMatrix::zeros(0, ambient))
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(&RationalMatrix::identity(ambient))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn basis_vecs(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Subtracts the basis rows to clear all pivot columns of `v`.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, b) in v.iter_mut().zip(self.basis.row(r)) {
                if !b.is_zero() {
                    *x -= &f * b;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient);
        is_zero_vec(&self.reduce(v))
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.row_vecs().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(&self.basis.vstack(&other.basis))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        orthogonal_complement(&orthogonal_complement(self).sum(&orthogonal_complement(other)))
    }

    /// Image of the subspace under `M` (acting on column vectors).
    pub fn map(&self, m: &RationalMatrix) -> Subspace {
        let imgs: Vec<Vec<Rational>> = self.basis_vecs().iter().map(|v| m.apply(v)).collect();
        Subspace::from_vectors(m.rows(), &imgs)
    }

    /// Preimage `{v : M v ∈ self}`.
    pub fn preimage(&self, m: &RationalMatrix) -> Subspace {
        let perp = orthogonal_complement(self);
        kernel(&perp.basis.mul(m))
    }

    /// Canonical complement of `sub` inside `self`: vectors of `self` that vanish on the
    /// pivot columns of `sub`. Rows are in reduced echelon form.
    pub fn complement_of(&self, sub: &Subspace) -> RationalMatrix {
        let reduced: Vec<Vec<Rational>> =
            self.basis_vecs().iter().map(|v| sub.reduce(v)).collect();
        Subspace::from_vectors(self.ambient, &reduced).basis.clone()
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.basis.serialize(s)
    }
}

/// Null space `{v : M·vᵀ = 0}`.
pub fn kernel(m: &RationalMatrix) -> Subspace {
    let n = m.cols();
    let (r, pivots) = m.rref();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut vecs = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Rational::zero(); n];
        v[f] = Rational::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r[(i, f)].clone();
        }
        vecs.push(v);
    }
    Subspace::from_vectors(n, &vecs)
}

/// Column space of `M`, as a subspace of ℚ^rows.
pub fn image(m: &RationalMatrix) -> Subspace {
    Subspace::span(&m.transpose())
}

pub fn rank(m: &RationalMatrix) -> usize {
    m.rank()
}

pub fn orthogonal_complement(s: &Subspace) -> Subspace {
    if s.dim() == 0 {
        return Subspace::full(s.ambient_dim());
    }
    kernel(s.basis())
}

/// A particular solution of `M x = b`, or `None` if inconsistent.
pub fn solve(m: &RationalMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(b.len(), m.rows());
    let n = m.cols();
    let mut aug = RationalMatrix::zeros(m.rows(), n + 1);
    for i in 0..m.rows() {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r[(i, n)].clone();
    }
    Some(x)
}

/// Matrix of `M` restricted to `dom → cod` in their canonical bases
/// (columns are coordinates of images of domain basis vectors).
pub fn restrict_map(
    m: &RationalMatrix,
    dom: &Subspace,
    cod: &Subspace,
) -> Result<RationalMatrix, LinalgError> {
    if m.cols() != dom.ambient_dim() || m.rows() != cod.ambient_dim() {
        return Err(LinalgError::Dimension("restrict_map".into()));
    }
    let mut out = RationalMatrix::zeros(cod.dim(), dom.dim());
    for (j, v) in dom.basis_vecs().iter().enumerate() {
        let c = cod.coordinates(&m.apply(v)).ok_or(LinalgError::NotInvariant)?;
        for (i, x) in c.into_iter().enumerate() {
            out[(i, j)] = x;
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Integer lattices

pub type IntVec = Vec<BigInt>;

/// Scales a rational vector to a primitive integer vector with the same direction.
pub fn primitive_integer(v: &[Rational]) -> IntVec {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: IntVec = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Row-style Hermite normal form with transform: returns `(H, U)` with `U·A = H`,
/// `U` unimodular. `H` is upper echelon, pivots positive, entries above each pivot
/// reduced into `[0, pivot)`. Zero rows sit at the bottom.
pub fn hnf_with_transform(a: &[IntVec], cols: usize) -> (Vec<IntVec>, Vec<IntVec>) {
    let m = a.len();
    let mut rows: Vec<(IntVec, IntVec)> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut u = vec![BigInt::zero(); m];
            u[i] = BigInt::one();
            (r.clone(), u)
        })
        .collect();
    let mut pr = 0;
    for c in 0..cols {
        if pr == m {
            break;
        }
        loop {
            // smallest nonzero |entry| at or below the pivot row
            let best = (pr..m)
                .filter(|&i| !rows[i].0[c].is_zero())
                .min_by(|&i, &j| rows[i].0[c].abs().cmp(&rows[j].0[c].abs()));
            let Some(b) = best else { break };
            rows.swap(pr, b);
            let mut done = true;
            for i in pr + 1..m {
                if rows[i].0[c].is_zero() {
                    continue;
                }
                let q = rows[i].0[c].div_floor(&rows[pr].0[c]);
                let (piv_r, piv_u) = rows[pr].clone();
                axpy(&mut rows[i], &(-q), &piv_r, &piv_u);
                if !rows[i].0[c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[pr].0[c].is_zero() {
            continue;
        }
        if rows[pr].0[c].is_negative() {
            let (r, u) = &mut rows[pr];
            for x in r.iter_mut().chain(u.iter_mut()) {
                *x = -x.clone();
            }
        }
        let (piv_r, piv_u) = rows[pr].clone();
        for i in 0..pr {
            let q = rows[i].0[c].div_floor(&piv_r[c]);
            if !q.is_zero() {
                axpy(&mut rows[i], &(-q), &piv_r, &piv_u);
            }
        }
        pr += 1;
    }
    rows.into_iter().unzip()
}

fn axpy(target: &mut (IntVec, IntVec), f: &BigInt, r: &[BigInt], u: &[BigInt]) {
    for (x, y) in target.0.iter_mut().zip(r) {
        *x += f * y;
    }
    for (x, y) in target.1.iter_mut().zip(u) {
        *x += f * y;
    }
}

/// Nonzero rows of the Hermite normal form of the row lattice.
pub fn hnf(a: &[IntVec], cols: usize) -> Vec<IntVec> {
    hnf_with_transform(a, cols)
        .0
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect()
}

/// HNF basis of `{u ∈ ℤ^m : u·A = 0}` for an `m × cols` integer matrix `A`.
pub fn integer_left_kernel(a: &[IntVec], cols: usize) -> Vec<IntVec> {
    let m = a.len();
    let (h, u) = hnf_with_transform(a, cols);
    let ker: Vec<IntVec> = h
        .iter()
        .zip(u)
        .filter(|(r, _)| r.iter().all(Zero::is_zero))
        .map(|(_, u)| u)
        .collect();
    hnf(&ker, m)
}

/// HNF basis of the lattice `S ∩ ℤᵏ`.
pub fn lattice_basis(s: &Subspace) -> RationalMatrix {
    let k = s.ambient_dim();
    let perp = orthogonal_complement(s);
    let c: Vec<IntVec> = perp.basis_vecs().iter().map(|v| primitive_integer(v)).collect();
    // x ∈ ℤᵏ with C·xᵀ = 0  ⇔  x·Cᵀ = 0
    let rows: Vec<IntVec> = if c.is_empty() {
        (0..k)
            .map(|i| (0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect()
    } else {
        let ct: Vec<IntVec> = (0..k).map(|i| c.iter().map(|r| r[i].clone()).collect()).collect();
        integer_left_kernel(&ct, c.len())
    };
    RationalMatrix::from_int_rows(&rows, k)
}

pub fn int_row(v: &[Rational]) -> Option<IntVec> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

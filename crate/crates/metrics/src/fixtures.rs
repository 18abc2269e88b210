//! Orbits and flags shipped with the library.

use hsbb_core::fixtures::{genus2_cone, genus2_form, genus2_single, upper_block, GENUS2_S};
use hsbb_core::{NilpotentCone, RationalMatrix, Symmetry};

use crate::flag::FlagPoint;
use crate::orbit::{OrbitSpec, Twist};
use crate::{CMat, C};

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Columns of `[τ; I]` spanning `F¹`, completed by `e₁, e₂`, in the basis `e₁, e₂, f₁, f₂`.
pub fn genus2_flag(tau: [[C; 2]; 2]) -> FlagPoint {
    let mut m = CMat::zeros(4, 4);
    for j in 0..2 {
        m[(0, j)] = tau[0][j];
        m[(1, j)] = tau[1][j];
        m[(2 + j, j)] = c(1.0, 0.0);
        m[(j, 2 + j)] = c(1.0, 0.0);
    }
    FlagPoint::new(1, vec![2, 2], m).expect("valid shape")
}

/// Nilpotent orbit of the genus-2 cone with `τ(z) = τ₀ + Σ z_i S_i`.
pub fn genus2_orbit(tau0: [[C; 2]; 2]) -> OrbitSpec {
    OrbitSpec::new(genus2_cone(), genus2_flag(tau0), Twist::None).expect("valid orbit")
}

/// The period matrix `Σ ℓ(t_i) S_i` evaluated directly.
pub fn genus2_period_matrix(z: &[C]) -> [[C; 2]; 2] {
    let mut tau = [[c(0.0, 0.0); 2]; 2];
    for (zi, s) in z.iter().zip(GENUS2_S) {
        for a in 0..2 {
            for b in 0..2 {
                tau[a][b] += zi * s[a][b] as f64;
            }
        }
    }
    tau
}

pub const CURVATURE_TAU0: [[(f64, f64); 2]; 2] = [[(0.1, 1.0), (0.0, 0.05)], [(0.0, 0.05), (0.2, 1.0)]];

/// Single generator `N₁` twisted by `ζ(w) = exp(w N₂)`; the boundary variation along
/// `t₁ = 0` is the family of elliptic curves with period `τ₀,₂₂ + w`.
pub fn curvature_fixture() -> OrbitSpec {
    let tau0 = CURVATURE_TAU0.map(|r| r.map(|(a, b)| c(a, b)));
    OrbitSpec::new(
        genus2_single(),
        genus2_flag(tau0),
        Twist::ExpLinear { generator: upper_block(GENUS2_S[1]) },
    )
    .expect("valid orbit")
}

/// Same orbit without the twist.
pub fn curvature_fixture_untwisted() -> OrbitSpec {
    let tau0 = CURVATURE_TAU0.map(|r| r.map(|(a, b)| c(a, b)));
    OrbitSpec::new(genus2_single(), genus2_flag(tau0), Twist::None).expect("valid orbit")
}

fn unit(d: usize, i: usize) -> Vec<C> {
    let mut v = vec![c(0.0, 0.0); d];
    v[i] = c(1.0, 0.0);
    v
}

fn frame(cols: Vec<Vec<C>>) -> CMat {
    let d = cols[0].len();
    CMat::from_fn(d, cols.len(), |i, j| cols[j][i])
}

fn combo(d: usize, parts: &[(usize, C)]) -> Vec<C> {
    let mut v = vec![c(0.0, 0.0); d];
    for &(i, x) in parts {
        v[i] += x;
    }
    v
}

/// Weight 2, `h = (1,1,1)`, one Jordan block `v₂ ↦ v₁ ↦ v₀`: `h = 2y²`.
pub fn case_c() -> OrbitSpec {
    let q = RationalMatrix::from_ints(&[[0, 0, 1], [0, -1, 0], [1, 0, 0]]);
    let n = RationalMatrix::from_ints(&[[0, 1, 0], [0, 0, 1], [0, 0, 0]]);
    let cone = NilpotentCone::new(3, 2, q, Symmetry::Symmetric, vec![n]).expect("valid");
    let f = FlagPoint::new(2, vec![1, 1, 1], frame(vec![unit(3, 2), unit(3, 1), unit(3, 0)])).expect("valid");
    OrbitSpec::new(cone, f, Twist::None).expect("valid orbit")
}

fn case_b_form() -> [[i64; 4]; 4] {
    [[0, 0, 0, 1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]]
}

/// Weight 2, `h = (1,2,1)`, basis `a₁, a₂, b₁ = Na₁, b₂ = Na₂`, `Fⁿ ∋ a₁ + i a₂`: `h = 4y`.
pub fn case_b() -> OrbitSpec {
    let q = RationalMatrix::from_ints(&case_b_form());
    let n = RationalMatrix::from_ints(&[[0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0]]);
    let cone = NilpotentCone::new(4, 2, q, Symmetry::Symmetric, vec![n]).expect("valid");
    let i = c(0.0, 1.0);
    let one = c(1.0, 0.0);
    let f = FlagPoint::new(
        2,
        vec![1, 2, 1],
        frame(vec![combo(4, &[(0, one), (1, i)]), unit(4, 0), combo(4, &[(2, one), (3, i)]), unit(4, 2)]),
    )
    .expect("valid");
    OrbitSpec::new(cone, f, Twist::None).expect("valid orbit")
}

/// `case_b` plus a block `c₁, c₂` with `Q = −I` on which `N` acts trivially. The section
/// `c₁ + i c₂` of `Fⁿ` has constant norm.
pub fn case_a() -> OrbitSpec {
    let mut q = vec![vec![0i64; 6]; 6];
    for (i, row) in case_b_form().iter().enumerate() {
        q[i][..4].copy_from_slice(row);
    }
    q[4][4] = -1;
    q[5][5] = -1;
    let mut n = vec![vec![0i64; 6]; 6];
    n[2][0] = 1;
    n[3][1] = 1;
    let cone = NilpotentCone::new(6, 2, RationalMatrix::from_ints(&q), Symmetry::Symmetric, vec![RationalMatrix::from_ints(&n)])
        .expect("valid");
    let i = c(0.0, 1.0);
    let one = c(1.0, 0.0);
    let f = FlagPoint::new(
        2,
        vec![2, 2, 2],
        frame(vec![
            combo(6, &[(0, one), (1, i)]),
            combo(6, &[(4, one), (5, i)]),
            unit(6, 0),
            combo(6, &[(2, one), (3, i)]),
            unit(6, 2),
            unit(6, 4),
        ]),
    )
    .expect("valid");
    OrbitSpec::new(cone, f, Twist::None).expect("valid orbit")
}

/// Column of `F²` in `case_a` on which the monodromy acts trivially.
pub const CASE_A_SECTION: usize = 1;

/// The base point `H^{1,0} = span{e₁ + i e₄, e₂ + i e₃}` of the `Sp(4)` example.
pub fn sp4_point() -> (FlagPoint, CMat) {
    let i = c(0.0, 1.0);
    let one = c(1.0, 0.0);
    let f = FlagPoint::new(
        1,
        vec![2, 2],
        frame(vec![combo(4, &[(0, one), (3, i)]), combo(4, &[(1, one), (2, i)]), unit(4, 0), unit(4, 1)]),
    )
    .expect("valid");
    let q = crate::to_complex(&hsbb_core::siegel::build_setup().q);
    (f, q)
}

/// Weight 3, `h = (1,1,1,1)` on `x₁, x₂, y₁, y₂` with `Q(x_i, y_j) = δ_ij`:
/// `H^{3,0} = x₁ − i y₁`, `H^{2,1} = x₂ + i y₂`.
pub fn weight3_point() -> (FlagPoint, CMat) {
    let i = c(0.0, 1.0);
    let one = c(1.0, 0.0);
    let f = FlagPoint::new(
        3,
        vec![1, 1, 1, 1],
        frame(vec![
            combo(4, &[(0, one), (2, -i)]),
            combo(4, &[(1, one), (3, i)]),
            combo(4, &[(1, one), (3, -i)]),
            combo(4, &[(0, one), (2, i)]),
        ]),
    )
    .expect("valid");
    let q = RationalMatrix::from_ints(&[[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]);
    (f, crate::to_complex(&q))
}

/// Symplectic form of the genus-2 fixtures as a complex matrix.
pub fn genus2_q() -> CMat {
    crate::to_complex(&genus2_form())
}

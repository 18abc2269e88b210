//! Reference cones used by tests, the CLI and the documentation.

use crate::cone::{NilpotentCone, Symmetry};
use crate::linalg::RationalMatrix;

/// `[[0, S], [0, 0]]` in the basis `e₁, e₂, f₁, f₂`.
pub fn upper_block(s: [[i64; 2]; 2]) -> RationalMatrix {
    RationalMatrix::from_ints(&[
        [0, 0, s[0][0], s[0][1]],
        [0, 0, s[1][0], s[1][1]],
        [0, 0, 0, 0],
        [0, 0, 0, 0],
    ])
}

pub const GENUS2_S: [[[i64; 2]; 2]; 3] = [[[1, 0], [0, 0]], [[0, 0], [0, 1]], [[1, 1], [1, 1]]];

/// Symplectic form with `Q(f_i, e_j) = δ_ij`; with this sign the Hodge metric
/// `i·Q(u, ū)` is positive along the genus-2 nilpotent orbit.
pub fn genus2_form() -> RationalMatrix {
    RationalMatrix::from_ints(&[[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]])
}

/// Maximal degeneration of genus-2 curves: three vanishing cycles with
/// `S₁ = E₁₁`, `S₂ = E₂₂`, `S₃ = [[1,1],[1,1]]`.
pub fn genus2_cone() -> NilpotentCone {
    NilpotentCone::new(
        4,
        1,
        genus2_form(),
        Symmetry::Alternating,
        GENUS2_S.iter().map(|&s| upper_block(s)).collect(),
    )
    .expect("genus-2 cone is valid")
}

/// Single generator `N₁` of the genus-2 cone.
pub fn genus2_single() -> NilpotentCone {
    NilpotentCone::new(4, 1, genus2_form(), Symmetry::Alternating, vec![upper_block(GENUS2_S[0])])
        .expect("valid")
}

/// Rank-one family `N₂ = 2N₁`.
pub fn rank_one_family() -> NilpotentCone {
    let n = upper_block(GENUS2_S[0]);
    NilpotentCone::new(4, 1, genus2_form(), Symmetry::Alternating, vec![n.clone(), n.add(&n)])
        .expect("valid")
}

/// Cone with two equal generators.
pub fn doubled_generator() -> NilpotentCone {
    let n = upper_block(GENUS2_S[0]);
    NilpotentCone::new(4, 1, genus2_form(), Symmetry::Alternating, vec![n.clone(), n]).expect("valid")
}

//! Exact core of the Hodge-theoretic completion toolkit: rational linear algebra,
//! monodromy weight filtrations, relation spaces and Farkas splits, monomial charts,
//! weight complexes of normal-crossing surface degenerations, the Sp(4) Siegel
//! verifier and the positivity rank checks.

pub mod charts;
pub mod cone;
pub mod filtration;
pub mod fixtures;
pub mod linalg;
pub mod lmhs;
pub mod positivity;
pub mod relations;
pub mod siegel;

pub use cone::{IndexSet, NilpotentCone, Symmetry};
pub use linalg::{Rational, RationalMatrix, Subspace};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

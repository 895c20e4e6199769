//! Partial-transpose negativity analysis and Schmidt-rank-2 distillability
//! certificates built from permutation superpositions.
//!
//! The dense linear algebra in [`linalg`] is generic over [`Real`] (`f32`/`f64`)
//! and the combinatorial routines over exact coefficient rings. The analysis
//! pipeline ([`states`], [`witness`], [`construct`], [`certify`]) runs in `f64`
//! through the aliases below.

pub mod certify;
pub mod construct;
pub mod error;
pub mod identities;
pub mod json;
pub mod linalg;
pub mod perm;
pub mod rng;
pub mod scalar;
pub mod states;
pub mod tol;
pub mod witness;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use perm::Permutation;
pub use scalar::{ComplexMatrix, ComplexVector, Real};

/// Double-precision complex scalar.
pub type C64 = num_complex::Complex<f64>;
pub type Matrix = ComplexMatrix<f64>;
pub type Vector = ComplexVector<f64>;
pub type Operator = linalg::BipartiteOperator<f64>;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

//! Dense complex linear algebra: Kronecker powers, partial transposition,
//! Hermitian eigendecomposition, singular values, two determinant routes, and matrix-free
//! bilinear forms over permutation superpositions.

mod bipartite;
mod det;
mod eig;
mod kron;
mod superpos;
mod svd;

pub use bipartite::{partial_transpose, submatrix, BipartiteOperator};
pub use det::{det_lu, det_perm_sum};
pub(crate) use eig::fix_phase;
pub use eig::{hermitian_defect, hermitian_eig, HermitianEigen};
pub use svd::{complete_basis, svd, Svd};
pub use kron::{kron, kron_power, KRON_ELEMENT_CAP};
pub use superpos::{
    bilinear_pair_form, bilinear_perm_form, dense_pair_vector, dense_perm_vector,
    Coefficient, PairTerm, SignedPairSuperposition, SignedSuperposition, DENSE_VECTOR_CAP,
};

use crate::rng;
use crate::scalar::ComplexMatrix;

pub fn random_complex(rows: usize, cols: usize, seed: u64) -> ComplexMatrix<f64> {
    rng::gaussian_matrix(rows, cols, &mut rng::seeded(seed))
}

pub fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix<f64> {
    rng::random_hermitian(n, &mut rng::seeded(seed))
}

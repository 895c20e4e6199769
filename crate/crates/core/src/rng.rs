//! Seeded random generation.
//!
//! Every random object in the crate is drawn from `ChaCha8Rng::seed_from_u64(seed)`
//! (the `rand_chacha` 0.9 stream), optionally switched to an independent stream
//! with `set_stream`. Complex Gaussian entries are drawn as `re` then `im`, each
//! from `rand_distr::StandardNormal`, filling matrices in row-major order.
//! Changing any of this changes every seeded state and certificate.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::scalar::ComplexMatrix;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for one member of a family of independent runs (e.g. a restart).
pub fn seeded_stream(seed: u64, stream: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex<f64> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(re, im)
}

/// Matrix of independent standard complex Gaussians, filled row by row.
pub fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix<f64> {
    let mut m = ComplexMatrix::<f64>::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = complex_gaussian(rng);
        }
    }
    m
}

/// `(G + G†)/2` for a Gaussian `G`.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix<f64> {
    let g = gaussian_matrix(n, n, rng);
    (&g + g.adjoint()).scale(0.5)
}

/// Haar-distributed `rows × cols` isometry (orthonormal columns), from the QR
/// factorization of a Gaussian matrix with the phases of `R`'s diagonal removed.
pub fn haar_isometry<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix<f64> {
    assert!(cols <= rows, "isometry needs cols <= rows");
    let g = gaussian_matrix(rows, cols, rng);
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..cols {
        let rjj = r[(j, j)];
        let n = rjj.norm();
        if n > 0.0 {
            let phase = rjj / n;
            for i in 0..rows {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix<f64> {
    haar_isometry(n, n, rng)
}

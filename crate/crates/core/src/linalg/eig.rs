use nalgebra::ComplexField;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{scale_of, ComplexMatrix, Real};
use crate::tol;

/// Spectral decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T: Real> {
    /// Ascending.
    pub values: Vec<T>,
    /// Column `k` belongs to `values[k]`; its largest-magnitude entry is real and nonnegative.
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    pub fn min_value(&self) -> T {
        self.values[0]
    }

    pub fn min_vector(&self) -> crate::scalar::ComplexVector<T> {
        self.vectors.column(0).into_owned()
    }
}

/// `max |H - H†|` over entries.
pub fn hermitian_defect<T: Real>(h: &ComplexMatrix<T>) -> T {
    if !h.is_square() {
        return T::max_value().unwrap_or_else(T::one);
    }
    let mut worst = T::zero();
    for i in 0..h.nrows() {
        for j in i..h.ncols() {
            let d = (h[(i, j)] - h[(j, i)].conj()).modulus();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// Eigendecomposition of a Hermitian matrix (within `1e-10·scale`).
///
/// Backed by nalgebra's Hermitian QR iteration on the symmetrized input; the
/// output is re-sorted ascending and each eigenvector's phase is fixed.
pub fn hermitian_eig<T: Real>(h: &ComplexMatrix<T>) -> Result<HermitianEigen<T>> {
    if !h.is_square() || h.nrows() == 0 {
        return Err(Error::arg(format!(
            "eigendecomposition needs a nonempty square matrix, got {}×{}",
            h.nrows(),
            h.ncols()
        )));
    }
    let defect = hermitian_defect(h);
    if defect > T::lit(tol::HERMITIAN) * scale_of(h) {
        return Err(Error::Validation {
            what: "matrix is not Hermitian".into(),
            magnitude: defect.as_f64(),
        });
    }
    let sym = (h + h.adjoint()).scale(T::lit(0.5));
    let eig = sym.symmetric_eigen();
    let n = h.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = ComplexMatrix::<T>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = eig.eigenvectors.column(src).into_owned();
        let norm = col.norm();
        col.unscale_mut(norm);
        fix_phase(col.as_mut_slice());
        vectors.set_column(dst, &col);
    }
    Ok(HermitianEigen { values, vectors })
}

/// Rotate so the first largest-magnitude entry is real and nonnegative.
pub(crate) fn fix_phase<T: Real>(v: &mut [Complex<T>]) -> Complex<T> {
    let mut best = 0;
    let mut best_norm = T::zero();
    for (i, z) in v.iter().enumerate() {
        let n = z.modulus();
        if n > best_norm {
            best = i;
            best_norm = n;
        }
    }
    if best_norm == T::zero() {
        return Complex::new(T::one(), T::zero());
    }
    let phase = v[best].conj().unscale(best_norm);
    for z in v.iter_mut() {
        *z *= phase;
    }
    v[best] = Complex::new(v[best].re, T::zero());
    phase
}

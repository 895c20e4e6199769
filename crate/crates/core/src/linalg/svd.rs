use nalgebra::ComplexField;
use num_complex::Complex;

use crate::scalar::{ComplexMatrix, ComplexVector, Real};

/// Thin singular value decomposition `M = U·diag(values)·V†`.
#[derive(Debug, Clone)]
pub struct Svd<T: Real> {
    /// Descending, length `min(rows, cols)`.
    pub values: Vec<T>,
    /// `rows × min(rows, cols)`, orthonormal columns.
    pub u: ComplexMatrix<T>,
    /// `cols × min(rows, cols)`, orthonormal columns.
    pub v: ComplexMatrix<T>,
}

const MAX_SWEEPS: usize = 80;

/// One-sided Jacobi SVD. Column pairs are rotated until every pair is
/// orthogonal to working precision; singular values are the final column
/// norms. Left vectors of numerically zero singular values are filled in by
/// [`complete_basis`].
pub fn svd<T: Real>(m: &ComplexMatrix<T>) -> Svd<T> {
    if m.nrows() < m.ncols() {
        let t = svd(&m.adjoint());
        return Svd {
            values: t.values,
            u: t.v,
            v: t.u,
        };
    }
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut v = ComplexMatrix::<T>::identity(cols, cols);
    let eps = T::default_epsilon();
    let zero = T::zero();
    let one = T::one();
    let two = T::lit(2.0);

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let alpha = a.column(p).norm_squared();
                let beta = a.column(q).norm_squared();
                let gamma = a.column(p).dotc(&a.column(q));
                let g = gamma.modulus();
                if g <= eps * (alpha * beta).sqrt() || g == zero {
                    continue;
                }
                rotated = true;
                // rotate a_p against e^{-iφ} a_q, where γ = |γ| e^{iφ}
                let phase = gamma.unscale(g).conj();
                let zeta = (beta - alpha) / (two * g);
                let t = zeta.signum() / (zeta.abs() + (one + zeta * zeta).sqrt());
                let t = if zeta == zero { one } else { t };
                let c = one / (one + t * t).sqrt();
                let s = c * t;
                rotate(&mut a, p, q, phase, c, s);
                rotate(&mut v, p, q, phase, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut norms: Vec<(usize, T)> = (0..cols).map(|j| (j, a.column(j).norm())).collect();
    norms.sort_by(|x, y| y.1.partial_cmp(&x.1).unwrap_or(std::cmp::Ordering::Equal).then(x.0.cmp(&y.0)));
    let k = rows.min(cols);
    let top = norms.first().map_or(zero, |x| x.1);
    let floor = top * eps * T::lit(rows.max(cols) as f64);

    let mut values = Vec::with_capacity(k);
    let mut left: Vec<ComplexVector<T>> = Vec::with_capacity(k);
    for &(j, sigma) in norms.iter().take(k) {
        values.push(sigma);
        if sigma > floor {
            let mut col = a.column(j).unscale(sigma);
            // re-orthogonalize against larger singular vectors
            for _ in 0..2 {
                for prev in &left {
                    let overlap = prev.dotc(&col);
                    col -= prev * overlap;
                }
            }
            let nrm = col.norm();
            left.push(col.unscale(nrm));
        }
    }
    let partial = if left.is_empty() {
        ComplexMatrix::<T>::zeros(rows, 0)
    } else {
        ComplexMatrix::<T>::from_columns(&left)
    };
    let u = complete_basis(&partial).columns(0, k).into_owned();
    let v = ComplexMatrix::<T>::from_columns(
        &norms.iter().take(k).map(|&(j, _)| v.column(j).into_owned()).collect::<Vec<_>>(),
    );
    Svd { values, u, v }
}

fn rotate<T: Real>(x: &mut ComplexMatrix<T>, p: usize, q: usize, phase: Complex<T>, c: T, s: T) {
    for r in 0..x.nrows() {
        let xp = x[(r, p)];
        let xq = x[(r, q)] * phase;
        x[(r, p)] = xp.scale(c) - xq.scale(s);
        x[(r, q)] = xp.scale(s) + xq.scale(c);
    }
}

/// Extends orthonormal columns to a unitary by Gram–Schmidt against the
/// canonical basis vectors `e_1, e_2, ...` in order.
pub fn complete_basis<T: Real>(columns: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let n = columns.nrows();
    let mut basis: Vec<ComplexVector<T>> = columns.column_iter().map(|c| c.into_owned()).collect();
    let mut candidate = 0;
    while basis.len() < n && candidate < n {
        let mut v = ComplexVector::<T>::zeros(n);
        v[candidate] = Complex::new(T::one(), T::zero());
        candidate += 1;
        for _ in 0..2 {
            for b in &basis {
                let overlap = b.dotc(&v);
                v -= b * overlap;
            }
        }
        let norm = v.norm();
        // some remaining e_i always keeps a residual of at least 1/√n
        if norm > T::lit(1e-3) {
            basis.push(v.unscale(norm));
        }
    }
    if basis.is_empty() {
        return ComplexMatrix::<T>::zeros(n, 0);
    }
    ComplexMatrix::<T>::from_columns(&basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;
    use crate::testutil::random_complex;

    fn check(m: &ComplexMatrix<f64>, tol: f64) {
        let s = svd(m);
        let k = m.nrows().min(m.ncols());
        assert_eq!(s.values.len(), k);
        assert!(s.values.windows(2).all(|w| w[0] >= w[1]));
        let id = ComplexMatrix::<f64>::identity(k, k);
        assert!((s.u.adjoint() * &s.u - &id).camax() < tol);
        assert!((s.v.adjoint() * &s.v - &id).camax() < tol);
        let sigma = ComplexMatrix::<f64>::from_fn(k, k, |i, j| if i == j { c(s.values[i], 0.0) } else { c(0.0, 0.0) });
        assert!((&s.u * sigma * s.v.adjoint() - m).camax() < tol);
    }

    #[test]
    fn random_shapes() {
        for (r, cl, seed) in [(3, 3, 1), (4, 2, 2), (2, 5, 3), (9, 9, 4), (16, 7, 5), (1, 4, 6)] {
            check(&random_complex(r, cl, seed), 1e-12);
        }
    }

    #[test]
    fn rank_deficient() {
        for seed in 0..50 {
            let a = random_complex(3, 2, seed);
            let b = random_complex(2, 3, seed + 100);
            let m = a * b;
            check(&m, 1e-12);
            assert!(svd(&m).values[2] < 1e-12);
        }
        check(&ComplexMatrix::<f64>::zeros(3, 2), 1e-15);
    }

    #[test]
    fn known_values() {
        let m = ComplexMatrix::<f64>::from_row_slice(2, 2, &[c(3.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -4.0)]);
        let s = svd(&m);
        assert!((s.values[0] - 4.0).abs() < 1e-15 && (s.values[1] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn completion() {
        let mut col = ComplexMatrix::<f64>::zeros(3, 1);
        col[(1, 0)] = c(0.6, 0.0);
        col[(2, 0)] = c(0.0, 0.8);
        let u = complete_basis(&col);
        assert!((u.adjoint() * &u - ComplexMatrix::<f64>::identity(3, 3)).camax() < 1e-14);
        assert_eq!(u.column(0), col.column(0));
        assert_eq!(u[(0, 1)], c(1.0, 0.0));
    }

    #[test]
    fn single_precision() {
        let m = random_complex(4, 3, 9).map(|z| Complex::new(z.re as f32, z.im as f32));
        let s = svd(&m);
        let sigma = ComplexMatrix::<f32>::from_fn(3, 3, |i, j| if i == j { Complex::new(s.values[i], 0.0) } else { Complex::new(0.0, 0.0) });
        assert!((&s.u * sigma * s.v.adjoint() - m).camax() < 1e-5);
    }
}

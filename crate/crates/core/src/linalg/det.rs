use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, Scalar};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::perm::{check_degree, enumerate_perms, MAX_DEGREE};
use crate::scalar::{ComplexMatrix, Real};

/// Determinant by LU with partial pivoting (nalgebra). Serves as the oracle
/// for [`det_perm_sum`].
pub fn det_lu<T: Real>(m: &ComplexMatrix<T>) -> Result<num_complex::Complex<T>> {
    if !m.is_square() {
        return Err(Error::arg("determinant of a non-square matrix"));
    }
    Ok(m.clone().lu().determinant())
}

/// Leibniz expansion `Σ_f sign f · Π_t M[t, f(t)]` over any commutative ring,
/// including exact integer and rational entries.
pub fn det_perm_sum<E>(m: &DMatrix<E>) -> Result<E>
where
    E: Scalar + Zero + Add<Output = E> + Sub<Output = E> + Mul<Output = E>,
{
    if !m.is_square() {
        return Err(Error::arg("determinant of a non-square matrix"));
    }
    let d = m.nrows();
    if d == 0 {
        return Err(Error::arg("determinant of an empty matrix"));
    }
    check_degree(d, MAX_DEGREE, "Leibniz determinant")?;
    let mut total = E::zero();
    for f in enumerate_perms(d)? {
        let mut term = m[(0, f.image(1) - 1)].clone();
        for t in 1..d {
            term = term * m[(t, f.image(t + 1) - 1)].clone();
        }
        total = if f.is_even() { total + term } else { total - term };
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kron::diag;
    use crate::perm::Permutation;
    use crate::scalar::scale_of;
    use crate::testutil::random_complex;
    use num_complex::Complex;
    use num_rational::Ratio;

    #[test]
    fn identity_and_diagonal() {
        for d in 1..=6 {
            let i = ComplexMatrix::<f64>::identity(d, d);
            assert_eq!(det_perm_sum(&i).unwrap(), Complex::new(1.0, 0.0));
        }
        let id3 = ComplexMatrix::<f64>::identity(3, 3);
        assert!((det_lu(&id3).unwrap() - Complex::new(1.0, 0.0)).norm() < 1e-15);
        assert!((det_lu(&diag::<f64>(&[2.0, 3.0])).unwrap() - Complex::new(6.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn two_by_two_exact() {
        let m = DMatrix::from_row_slice(2, 2, &[3i64, 7, -2, 5]);
        assert_eq!(det_perm_sum(&m).unwrap(), 3 * 5 - 7 * -2);
        let r = DMatrix::from_row_slice(
            2,
            2,
            &[Ratio::new(1i64, 2), Ratio::new(1, 3), Ratio::new(2, 5), Ratio::new(-1, 7)],
        );
        assert_eq!(
            det_perm_sum(&r).unwrap(),
            Ratio::new(1, 2) * Ratio::new(-1, 7) - Ratio::new(1, 3) * Ratio::new(2, 5)
        );
    }

    #[test]
    fn permutation_matrices_have_sign_determinant() {
        for p in enumerate_perms(5).unwrap() {
            let m: ComplexMatrix<f64> = p.matrix();
            let lu = det_lu(&m).unwrap();
            assert!((lu - Complex::new(p.sign() as f64, 0.0)).norm() < 1e-12);
            let exact: DMatrix<i64> = p.matrix();
            assert_eq!(det_perm_sum(&exact).unwrap(), p.sign() as i64);
        }
        let tau = Permutation::transposition(4, 1, 2).unwrap();
        assert_eq!(det_perm_sum(&tau.matrix::<i64>()).unwrap(), -1);
    }

    #[test]
    fn both_routes_agree() {
        for seed in 0..100 {
            let m = random_complex(4, 4, seed);
            let tol = 1e-10 * scale_of(&m);
            assert!((det_perm_sum(&m).unwrap() - det_lu(&m).unwrap()).norm() <= tol);
        }
    }

    #[test]
    fn guards() {
        let big = ComplexMatrix::<f64>::identity(9, 9);
        assert!(matches!(det_perm_sum(&big), Err(Error::SizeLimit { .. })));
        let rect = ComplexMatrix::<f64>::zeros(2, 3);
        assert!(det_perm_sum(&rect).is_err());
        assert!(det_lu(&rect).is_err());
    }
}

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{ComplexMatrix, Real};

/// Default cap on the number of entries of a Kronecker product (about 64 MiB in `f64`).
pub const KRON_ELEMENT_CAP: usize = 1 << 22;

/// Standard Kronecker product,
/// `kron(A, B)[(i·rB + k, j·cB + l)] = A[(i, j)]·B[(k, l)]` (0-based).
pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    kron_capped(a, b, KRON_ELEMENT_CAP)
}

pub(crate) fn kron_capped<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    cap: usize,
) -> Result<ComplexMatrix<T>> {
    let rows = a.nrows() as u128 * b.nrows() as u128;
    let cols = a.ncols() as u128 * b.ncols() as u128;
    if rows * cols > cap as u128 {
        return Err(Error::size("Kronecker product entries", rows * cols, cap as u128));
    }
    Ok(a.kronecker(b))
}

/// `A ⊗ A ⊗ ... ⊗ A` (`n` factors, left-associated).
pub fn kron_power<T: Real>(a: &ComplexMatrix<T>, n: usize) -> Result<ComplexMatrix<T>> {
    if n == 0 {
        return Err(Error::arg("Kronecker power needs at least one copy"));
    }
    let rows = (a.nrows() as u128).checked_pow(n as u32);
    let cols = (a.ncols() as u128).checked_pow(n as u32);
    match rows.zip(cols).and_then(|(r, c)| r.checked_mul(c)) {
        Some(total) if total <= KRON_ELEMENT_CAP as u128 => {}
        other => {
            return Err(Error::size(
                format!("Kronecker power {n} entries"),
                other.unwrap_or(u128::MAX),
                KRON_ELEMENT_CAP as u128,
            ))
        }
    }
    let mut out = a.clone();
    for _ in 1..n {
        out = kron_capped(&out, a, KRON_ELEMENT_CAP)?;
    }
    Ok(out)
}

#[allow(dead_code)]
pub(crate) fn identity<T: Real>(n: usize) -> ComplexMatrix<T> {
    ComplexMatrix::<T>::identity(n, n)
}

#[allow(dead_code)]
pub(crate) fn diag<T: Real>(xs: &[f64]) -> ComplexMatrix<T> {
    let n = xs.len();
    let mut m = ComplexMatrix::<T>::zeros(n, n);
    for (i, &x) in xs.iter().enumerate() {
        m[(i, i)] = Complex::new(T::lit(x), T::zero());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::random_complex;

    #[test]
    fn identities() {
        let i2 = identity::<f64>(2);
        assert_eq!(kron(&i2, &i2).unwrap(), identity(4));
        let a = random_complex(3, 3, 5);
        assert_eq!(kron(&a, &identity(1)).unwrap(), a);
        assert_eq!(kron_power(&a, 1).unwrap(), a);
        assert_eq!(kron_power(&i2, 3).unwrap(), identity(8));
    }

    #[test]
    fn power_of_diagonal() {
        let d = diag::<f64>(&[1.0, 2.0]);
        assert_eq!(kron_power(&d, 2).unwrap(), diag(&[1.0, 2.0, 2.0, 4.0]));
    }

    #[test]
    fn index_rule() {
        let a = random_complex(2, 3, 1);
        let b = random_complex(3, 2, 2);
        let k = kron(&a, &b).unwrap();
        for i in 0..2 {
            for j in 0..3 {
                for p in 0..3 {
                    for q in 0..2 {
                        assert_eq!(k[(i * 3 + p, j * 2 + q)], a[(i, j)] * b[(p, q)]);
                    }
                }
            }
        }
    }

    #[test]
    fn mixed_product() {
        for seed in 0..10 {
            let [a, b, cc, d] = [0, 1, 2, 3].map(|k| random_complex(2, 2, 100 * seed + k));
            let lhs = kron(&a, &b).unwrap() * kron(&cc, &d).unwrap();
            let rhs = kron(&(&a * &cc), &(&b * &d)).unwrap();
            assert!((lhs - rhs).camax() < 1e-12);
        }
    }

    #[test]
    fn caps() {
        let a = identity::<f64>(9);
        assert!(kron_power(&a, 3).is_ok());
        assert!(matches!(kron_power(&a, 4), Err(Error::SizeLimit { .. })));
        assert!(kron_power(&a, 0).is_err());
        assert!(kron_capped(&a, &a, 80).is_err());
    }

    #[test]
    fn works_in_single_precision() {
        let d = diag::<f32>(&[1.0, 2.0]);
        assert_eq!(kron_power(&d, 2).unwrap(), diag::<f32>(&[1.0, 2.0, 2.0, 4.0]));
    }
}

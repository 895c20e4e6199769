//! Scalar abstraction for the dense linear algebra.
//!
//! The matrix routines are written against [`Real`] so they run in `f32` or
//! `f64`; exact combinatorial routines (determinants by permutation sums,
//! signed term lists) are generic over any commutative ring via `num-traits`.

use nalgebra::{ComplexField, DMatrix, DVector, RealField};
use num_complex::Complex;
use num_traits::{FromPrimitive, ToPrimitive};

/// Real field usable as the component type of complex matrices: `f32` or `f64`.
pub trait Real: RealField + Copy + FromPrimitive + ToPrimitive + Send + Sync {
    /// Lossy conversion from an `f64` constant (tolerances, fixtures).
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite value")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Dense complex matrix over a real field.
pub type ComplexMatrix<T> = DMatrix<Complex<T>>;

/// Dense complex column vector over a real field.
pub type ComplexVector<T> = DVector<Complex<T>>;

/// Largest entry magnitude, floored at one. Tolerances are scaled by this.
pub fn scale_of<T: Real>(m: &ComplexMatrix<T>) -> T {
    m.iter().fold(T::one(), |acc, z| {
        let n = z.modulus();
        if n > acc {
            n
        } else {
            acc
        }
    })
}

#[cfg(test)]
pub(crate) fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

//! JSON encodings: complex numbers as `[re, im]`, matrices as row-major nested
//! arrays of complex numbers, vectors as arrays of complex numbers.

use num_complex::Complex;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::{ComplexMatrix, ComplexVector, Real};

fn pair<T: Real>(z: &Complex<T>) -> [f64; 2] {
    [z.re.as_f64(), z.im.as_f64()]
}

fn unpair<T: Real>(p: [f64; 2]) -> Complex<T> {
    Complex::new(T::lit(p[0]), T::lit(p[1]))
}

pub mod complex {
    use super::*;

    pub fn serialize<T: Real, S: Serializer>(z: &Complex<T>, s: S) -> Result<S::Ok, S::Error> {
        pair(z).serialize(s)
    }

    pub fn deserialize<'de, T: Real, D: Deserializer<'de>>(d: D) -> Result<Complex<T>, D::Error> {
        Ok(unpair(<[f64; 2]>::deserialize(d)?))
    }
}

pub mod vector {
    use super::*;

    pub fn serialize<T: Real, S: Serializer>(v: &ComplexVector<T>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(pair))
    }

    pub fn deserialize<'de, T: Real, D: Deserializer<'de>>(d: D) -> Result<ComplexVector<T>, D::Error> {
        let raw = Vec::<[f64; 2]>::deserialize(d)?;
        Ok(ComplexVector::from_iterator(raw.len(), raw.into_iter().map(unpair)))
    }
}

pub mod vector_list {
    use super::*;

    pub fn serialize<T: Real, S: Serializer>(vs: &[ComplexVector<T>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(vs.iter().map(|v| v.iter().map(pair).collect::<Vec<_>>()))
    }

    pub fn deserialize<'de, T: Real, D: Deserializer<'de>>(d: D) -> Result<Vec<ComplexVector<T>>, D::Error> {
        let raw = Vec::<Vec<[f64; 2]>>::deserialize(d)?;
        Ok(raw
            .into_iter()
            .map(|v| ComplexVector::from_iterator(v.len(), v.into_iter().map(unpair)))
            .collect())
    }
}

pub mod matrix {
    use super::*;

    pub fn serialize<T: Real, S: Serializer>(m: &ComplexMatrix<T>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(
            m.row_iter()
                .map(|row| row.iter().map(pair).collect::<Vec<_>>()),
        )
    }

    pub fn deserialize<'de, T: Real, D: Deserializer<'de>>(d: D) -> Result<ComplexMatrix<T>, D::Error> {
        let rows = Vec::<Vec<[f64; 2]>>::deserialize(d)?;
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(D::Error::custom("matrix rows have unequal lengths"));
        }
        Ok(ComplexMatrix::from_row_iterator(
            nrows,
            ncols,
            rows.into_iter().flatten().map(unpair),
        ))
    }
}

/// Optional matrix, `null` when absent.
pub mod option_matrix {
    use super::*;

    pub fn serialize<T: Real, S: Serializer>(m: &Option<ComplexMatrix<T>>, s: S) -> Result<S::Ok, S::Error> {
        match m {
            Some(m) => super::matrix::serialize(m, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, T: Real, D: Deserializer<'de>>(d: D) -> Result<Option<ComplexMatrix<T>>, D::Error> {
        let raw = Option::<Vec<Vec<[f64; 2]>>>::deserialize(d)?;
        match raw {
            None => Ok(None),
            Some(rows) => {
                let nrows = rows.len();
                let ncols = rows.first().map_or(0, Vec::len);
                if rows.iter().any(|r| r.len() != ncols) {
                    return Err(D::Error::custom("matrix rows have unequal lengths"));
                }
                Ok(Some(ComplexMatrix::from_row_iterator(
                    nrows,
                    ncols,
                    rows.into_iter().flatten().map(unpair),
                )))
            }
        }
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{ComplexMatrix, Real};

/// Operator on `H_A ⊗ H_B`. Basis state `|i, j⟩` (0-based) sits at composite
/// index `i·dim_b + j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct BipartiteOperator<T: Real> {
    #[serde(rename = "dimA")]
    dim_a: usize,
    #[serde(rename = "dimB")]
    dim_b: usize,
    #[serde(with = "crate::json::matrix")]
    matrix: ComplexMatrix<T>,
}

impl<T: Real> BipartiteOperator<T> {
    pub fn new(dim_a: usize, dim_b: usize, matrix: ComplexMatrix<T>) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::arg("local dimensions must be positive"));
        }
        let n = dim_a * dim_b;
        if matrix.shape() != (n, n) {
            return Err(Error::arg(format!(
                "operator on {dim_a}⊗{dim_b} must be {n}×{n}, got {}×{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(BipartiteOperator {
            dim_a,
            dim_b,
            matrix,
        })
    }

    pub fn identity(dim_a: usize, dim_b: usize) -> Self {
        let n = dim_a * dim_b;
        BipartiteOperator {
            dim_a,
            dim_b,
            matrix: ComplexMatrix::identity(n, n),
        }
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.matrix
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.dim_b + j
    }

    /// `⟨i, j| X |k, l⟩`, 0-based local indices.
    pub fn element(&self, i: usize, j: usize, k: usize, l: usize) -> num_complex::Complex<T> {
        self.matrix[(self.index(i, j), self.index(k, l))]
    }

    pub(crate) fn check_same_dims(&self, dim_a: usize, dim_b: usize) -> Result<()> {
        if self.dim_a != dim_a || self.dim_b != dim_b {
            return Err(Error::arg(format!(
                "dimension mismatch: operator is {}⊗{}, expected {dim_a}⊗{dim_b}",
                self.dim_a, self.dim_b
            )));
        }
        Ok(())
    }
}

/// Transpose on subsystem B: `⟨i,j|out|k,l⟩ = ⟨i,l|in|k,j⟩`.
pub fn partial_transpose<T: Real>(op: &BipartiteOperator<T>) -> BipartiteOperator<T> {
    let (da, db) = (op.dim_a, op.dim_b);
    let n = da * db;
    let src = &op.matrix;
    let out = ComplexMatrix::<T>::from_fn(n, n, |row, col| {
        let (i, j) = (row / db, row % db);
        let (k, l) = (col / db, col % db);
        src[(i * db + l, k * db + j)]
    });
    BipartiteOperator {
        dim_a: da,
        dim_b: db,
        matrix: out,
    }
}

/// The minor selected by 0-based `rows` and `cols`.
pub fn submatrix<T: Real>(
    m: &ComplexMatrix<T>,
    rows: &[usize],
    cols: &[usize],
) -> Result<ComplexMatrix<T>> {
    check_indices(rows, m.nrows(), "row")?;
    check_indices(cols, m.ncols(), "column")?;
    Ok(ComplexMatrix::<T>::from_fn(rows.len(), cols.len(), |i, j| {
        m[(rows[i], cols[j])]
    }))
}

fn check_indices(idx: &[usize], bound: usize, what: &str) -> Result<()> {
    let mut seen = vec![false; bound];
    for &i in idx {
        if i >= bound {
            return Err(Error::arg(format!("{what} index {i} out of range 0..{bound}")));
        }
        if seen[i] {
            return Err(Error::arg(format!("duplicate {what} index {i}")));
        }
        seen[i] = true;
    }
    Ok(())
}

//! Superpositions of permutation basis vectors with exact coefficients, and
//! their bilinear forms against `C^{⊗n}` evaluated without forming `C^{⊗n}`.
//!
//! A single-system term `(f, c)` stands for `c·|f(1), ..., f(n)⟩`. A pair term
//! `(f, g, c)` stands for `c·|f(1),g(1)⟩ ⊗ ... ⊗ |f(n),g(n)⟩`, copy-major: copy
//! `t` carries the A-label `f(t)` and the B-label `g(t)`. Labels index the first
//! `n` local basis vectors.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Debug;

use num_complex::Complex;
use num_traits::{Num, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use super::bipartite::BipartiteOperator;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::scalar::{ComplexMatrix, ComplexVector, Real};

/// Cap on explicit state-vector length.
pub const DENSE_VECTOR_CAP: usize = 1_000_000;

/// Exact coefficient type for superposition terms (usually `i64`).
pub trait Coefficient: Copy + Num + ToPrimitive + PartialEq + Debug + Send + Sync {}
impl<K: Copy + Num + ToPrimitive + PartialEq + Debug + Send + Sync> Coefficient for K {}

#[derive(Debug, Clone, Serialize)]
pub struct SignedSuperposition<K = i64> {
    degree: usize,
    terms: Vec<(Permutation, K)>,
}

impl<K: Coefficient> SignedSuperposition<K> {
    /// Terms must share `degree` and be pairwise distinct.
    pub fn new(degree: usize, terms: Vec<(Permutation, K)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (f, _) in &terms {
            check_term_degree(f, degree)?;
            if !seen.insert(f.basis_index()) {
                return Err(Error::arg(format!("duplicate term {f}")));
            }
        }
        Ok(SignedSuperposition { degree, terms })
    }

    /// Sum possibly repeated terms; zero coefficients are dropped and the result
    /// is sorted by basis index.
    pub fn collect<I>(degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Permutation, K)>,
    {
        let mut acc: BTreeMap<u64, (Permutation, K)> = BTreeMap::new();
        for (f, c) in terms {
            check_term_degree(&f, degree)?;
            let entry = acc.entry(f.basis_index()).or_insert((f, K::zero()));
            entry.1 = entry.1 + c;
        }
        let terms = acc.into_values().filter(|(_, c)| *c != K::zero()).collect();
        Ok(SignedSuperposition { degree, terms })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[(Permutation, K)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ c²`; the basis vectors are orthonormal.
    pub fn norm_sqr(&self) -> K {
        self.terms.iter().fold(K::zero(), |acc, (_, c)| acc + *c * *c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairTerm<K> {
    pub a: Permutation,
    pub b: Permutation,
    pub coeff: K,
}

#[derive(Debug, Clone, Serialize)]
pub struct SignedPairSuperposition<K = i64> {
    degree: usize,
    terms: Vec<PairTerm<K>>,
}

impl<K: Coefficient> SignedPairSuperposition<K> {
    pub fn new(degree: usize, terms: Vec<PairTerm<K>>) -> Result<Self> {
        let mut seen = HashSet::new();
        for t in &terms {
            check_term_degree(&t.a, degree)?;
            check_term_degree(&t.b, degree)?;
            if !seen.insert((t.a.basis_index(), t.b.basis_index())) {
                return Err(Error::arg(format!("duplicate term ({}, {})", t.a, t.b)));
            }
        }
        Ok(SignedPairSuperposition { degree, terms })
    }

    /// Sum repeated `(f, g)` terms, drop zeros, sort by `(index f, index g)`.
    pub fn collect<I>(degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = PairTerm<K>>,
    {
        let mut acc: BTreeMap<(u64, u64), PairTerm<K>> = BTreeMap::new();
        for t in terms {
            check_term_degree(&t.a, degree)?;
            check_term_degree(&t.b, degree)?;
            let key = (t.a.basis_index(), t.b.basis_index());
            match acc.get_mut(&key) {
                Some(e) => e.coeff = e.coeff + t.coeff,
                None => {
                    acc.insert(key, t);
                }
            }
        }
        let terms = acc.into_values().filter(|t| t.coeff != K::zero()).collect();
        Ok(SignedPairSuperposition { degree, terms })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[PairTerm<K>] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn norm_sqr(&self) -> K {
        self.terms.iter().fold(K::zero(), |acc, t| acc + t.coeff * t.coeff)
    }

    /// Sorted `(index f, index g, c)` triples; equal vectors give equal lists.
    pub fn canonical(&self) -> Vec<(u64, u64, K)> {
        let mut out: Vec<_> = self
            .terms
            .iter()
            .filter(|t| t.coeff != K::zero())
            .map(|t| (t.a.basis_index(), t.b.basis_index(), t.coeff))
            .collect();
        out.sort_by_key(|&(a, b, _)| (a, b));
        out
    }

    /// Exact vector equality.
    pub fn same_vector(&self, other: &Self) -> bool {
        self.degree == other.degree && self.canonical() == other.canonical()
    }
}

fn check_term_degree(p: &Permutation, degree: usize) -> Result<()> {
    if p.degree() != degree {
        return Err(Error::arg(format!(
            "term {p} has degree {}, superposition has degree {degree}",
            p.degree()
        )));
    }
    Ok(())
}

fn coeff_to<T: Real, K: Coefficient>(c: K) -> T {
    T::lit(c.to_f64().expect("coefficient representable as f64"))
}

/// `Σ_{bra, ket} c'·c · Π_t m[rows'_t, cols_t]` with the outer sum split across
/// threads and reduced in bra order.
fn product_form<T: Real>(
    m: &ComplexMatrix<T>,
    bra: &[(Vec<usize>, T)],
    ket: &[(Vec<usize>, T)],
) -> Complex<T> {
    let nrows = m.nrows();
    let data = m.as_slice();
    let partials: Vec<Complex<T>> = bra
        .par_iter()
        .map(|(rows, cb)| {
            let mut inner = Complex::new(T::zero(), T::zero());
            for (cols, ck) in ket {
                let mut prod = Complex::new(*ck, T::zero());
                for (r, s) in rows.iter().zip(cols) {
                    prod *= data[r + s * nrows];
                }
                inner += prod;
            }
            inner.scale(*cb)
        })
        .collect();
    partials
        .into_iter()
        .fold(Complex::new(T::zero(), T::zero()), |acc, z| acc + z)
}

fn pair_indices<T: Real, K: Coefficient>(
    s: &SignedPairSuperposition<K>,
    dim_b: usize,
) -> Vec<(Vec<usize>, T)> {
    s.terms
        .iter()
        .map(|t| {
            let idx = (0..s.degree)
                .map(|i| (t.a.images()[i] - 1) * dim_b + (t.b.images()[i] - 1))
                .collect();
            (idx, coeff_to(t.coeff))
        })
        .collect()
}

/// `⟨bra| C^{⊗n} |ket⟩` for pair superpositions of degree `n`, computed as
/// `Σ c'·c · Π_t ⟨f'(t), g'(t)| C |f(t), g(t)⟩`.
pub fn bilinear_pair_form<T: Real, K: Coefficient>(
    op: &BipartiteOperator<T>,
    bra: &SignedPairSuperposition<K>,
    ket: &SignedPairSuperposition<K>,
) -> Result<Complex<T>> {
    let n = bra.degree;
    if ket.degree != n {
        return Err(Error::arg(format!(
            "bra has degree {n}, ket has degree {}",
            ket.degree
        )));
    }
    if op.dim_a() < n || op.dim_b() < n {
        return Err(Error::arg(format!(
            "degree {n} labels do not fit in local dimensions {}⊗{}",
            op.dim_a(),
            op.dim_b()
        )));
    }
    let rows = pair_indices(bra, op.dim_b());
    let cols = pair_indices(ket, op.dim_b());
    Ok(product_form(op.matrix(), &rows, &cols))
}

/// Single-system analogue: `⟨bra| M^{⊗n} |ket⟩ = Σ c'·c · Π_t M[f'(t), f(t)]`.
pub fn bilinear_perm_form<T: Real, K: Coefficient>(
    m: &ComplexMatrix<T>,
    bra: &SignedSuperposition<K>,
    ket: &SignedSuperposition<K>,
) -> Result<Complex<T>> {
    let n = bra.degree;
    if ket.degree != n {
        return Err(Error::arg(format!(
            "bra has degree {n}, ket has degree {}",
            ket.degree
        )));
    }
    if !m.is_square() || m.nrows() < n {
        return Err(Error::arg(format!(
            "degree {n} labels need a square matrix of size at least {n}"
        )));
    }
    let idx = |s: &SignedSuperposition<K>| -> Vec<(Vec<usize>, T)> {
        s.terms
            .iter()
            .map(|(f, c)| (f.images().iter().map(|x| x - 1).collect(), coeff_to(*c)))
            .collect()
    };
    Ok(product_form(m, &idx(bra), &idx(ket)))
}

fn dense_len(local: usize, n: usize) -> Result<usize> {
    match (local as u128).checked_pow(n as u32) {
        Some(len) if len <= DENSE_VECTOR_CAP as u128 => Ok(len as usize),
        other => Err(Error::size(
            "dense superposition vector length",
            other.unwrap_or(u128::MAX),
            DENSE_VECTOR_CAP as u128,
        )),
    }
}

/// Explicit vector in `(A⊗B)^{⊗n}`, copy 1 in the most significant digit.
pub fn dense_pair_vector<T: Real, K: Coefficient>(
    s: &SignedPairSuperposition<K>,
    dim_a: usize,
    dim_b: usize,
) -> Result<ComplexVector<T>> {
    let n = s.degree;
    if dim_a < n || dim_b < n {
        return Err(Error::arg(format!(
            "degree {n} labels do not fit in local dimensions {dim_a}⊗{dim_b}"
        )));
    }
    let local = dim_a * dim_b;
    let mut v = ComplexVector::<T>::zeros(dense_len(local, n)?);
    for t in &s.terms {
        let idx = (0..n).fold(0usize, |acc, i| {
            acc * local + (t.a.images()[i] - 1) * dim_b + (t.b.images()[i] - 1)
        });
        v[idx] += Complex::new(coeff_to(t.coeff), T::zero());
    }
    Ok(v)
}

/// Explicit vector in `C^{dim ⊗ n}`.
pub fn dense_perm_vector<T: Real, K: Coefficient>(
    s: &SignedSuperposition<K>,
    dim: usize,
) -> Result<ComplexVector<T>> {
    let n = s.degree;
    if dim < n {
        return Err(Error::arg(format!("degree {n} labels do not fit in dimension {dim}")));
    }
    let mut v = ComplexVector::<T>::zeros(dense_len(dim, n)?);
    for (f, c) in &s.terms {
        let idx = f.images().iter().fold(0usize, |acc, x| acc * dim + (x - 1));
        v[idx] += Complex::new(coeff_to(*c), T::zero());
    }
    Ok(v)
}

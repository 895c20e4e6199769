//! Permutations of `{1, ..., d}` and the symmetric / alternating groups.
//!
//! Permutations use 1-based images, `p.image(t) = p(t)`. Composition is
//! `(p ∘ q)(t) = p(q(t))`. The tensor basis vector `|p(1), ..., p(d)⟩` attached to
//! a permutation is indexed big-endian with 0-based digits, so copy 1 is the
//! most significant digit.

use std::fmt;

use nalgebra::{DMatrix, Scalar};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest degree for which `S_d` may be enumerated.
pub const MAX_DEGREE: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
    sign: i8,
}

impl Permutation {
    /// Build from 1-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        if d == 0 {
            return Err(Error::arg("permutation of degree 0"));
        }
        let mut seen = vec![false; d];
        for &x in &images {
            if x == 0 || x > d || seen[x - 1] {
                return Err(Error::arg(format!("{images:?} is not a bijection on 1..={d}")));
            }
            seen[x - 1] = true;
        }
        let sign = inversion_parity(&images);
        Ok(Permutation { images, sign })
    }

    pub fn identity(d: usize) -> Self {
        Permutation {
            images: (1..=d).collect(),
            sign: 1,
        }
    }

    /// The transposition exchanging `i` and `j` (1-based, `i != j`).
    pub fn transposition(d: usize, i: usize, j: usize) -> Result<Self> {
        if i == j || i == 0 || j == 0 || i > d || j > d {
            return Err(Error::arg(format!("({i} {j}) is not a transposition in S_{d}")));
        }
        let mut images: Vec<usize> = (1..=d).collect();
        images.swap(i - 1, j - 1);
        Ok(Permutation { images, sign: -1 })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `p(t)` for 1-based `t`.
    pub fn image(&self, t: usize) -> usize {
        self.images[t - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_even(&self) -> bool {
        self.sign == 1
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// `self ∘ other`, i.e. `t ↦ self(other(t))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::arg(format!(
                "cannot compose permutations of degree {} and {}",
                self.degree(),
                other.degree()
            )));
        }
        let images = other.images.iter().map(|&t| self.images[t - 1]).collect();
        Ok(Permutation {
            images,
            sign: self.sign * other.sign,
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (t, &x) in self.images.iter().enumerate() {
            images[x - 1] = t + 1;
        }
        Permutation {
            images,
            sign: self.sign,
        }
    }

    /// Index of `|p(1), ..., p(d)⟩` in the `d^d`-dimensional product basis.
    pub fn basis_index(&self) -> u64 {
        let d = self.degree() as u64;
        self.images
            .iter()
            .fold(0u64, |acc, &x| acc * d + (x as u64 - 1))
    }

    /// The `d × d` matrix with `P|k⟩ = |p(k)⟩`: column `k` holds a one in row `p(k)`.
    pub fn matrix<E: Scalar + Zero + One>(&self) -> DMatrix<E> {
        let d = self.degree();
        let mut m = DMatrix::from_element(d, d, E::zero());
        for (k, &x) in self.images.iter().enumerate() {
            m[(x - 1, k)] = E::one();
        }
        m
    }
}

fn inversion_parity(images: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for s in 0..images.len() {
        for t in s + 1..images.len() {
            if images[s] > images[t] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.images
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

pub(crate) fn check_degree(d: usize, max: usize, what: &str) -> Result<()> {
    if d == 0 {
        return Err(Error::arg(format!("{what}: degree must be at least 1")));
    }
    if d > max {
        return Err(Error::size(
            format!("{what} (d! = {} elements)", factorial(d)),
            d as u128,
            max as u128,
        ));
    }
    Ok(())
}

pub fn factorial(d: usize) -> u128 {
    (1..=d as u128).product()
}

/// All of `S_d` in lexicographic order of the image tuple; the identity comes first.
pub fn enumerate_perms(d: usize) -> Result<Vec<Permutation>> {
    check_degree(d, MAX_DEGREE, "enumerate S_d")?;
    let mut current: Vec<usize> = (1..=d).collect();
    let mut out = Vec::with_capacity(factorial(d) as usize);
    loop {
        out.push(Permutation {
            sign: inversion_parity(&current),
            images: current.clone(),
        });
        if !next_lexicographic(&mut current) {
            break;
        }
    }
    Ok(out)
}

fn next_lexicographic(xs: &mut [usize]) -> bool {
    let n = xs.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// The even permutations `A_d`, in the same order as [`enumerate_perms`].
pub fn alternating(d: usize) -> Result<Vec<Permutation>> {
    Ok(enumerate_perms(d)?
        .into_iter()
        .filter(Permutation::is_even)
        .collect())
}

pub fn sign(p: &Permutation) -> i8 {
    p.sign()
}

pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    p.compose(q)
}

pub fn inverse(p: &Permutation) -> Permutation {
    p.inverse()
}

pub fn perm_basis_index(p: &Permutation) -> u64 {
    p.basis_index()
}

pub fn permutation_matrix<E: Scalar + Zero + One>(p: &Permutation) -> DMatrix<E> {
    p.matrix()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(xs: &[usize]) -> Permutation {
        Permutation::from_images(xs.to_vec()).unwrap()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_perms(1).unwrap(), vec![p(&[1])]);
        assert_eq!(enumerate_perms(2).unwrap(), vec![p(&[1, 2]), p(&[2, 1])]);
        let s4 = enumerate_perms(4).unwrap();
        assert_eq!(s4.len(), 24);
        let mut sorted = s4.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, s4, "lexicographic and duplicate-free");
        assert!(s4[0].is_identity());
    }

    #[test]
    fn degree_guard() {
        assert!(matches!(enumerate_perms(9), Err(Error::SizeLimit { .. })));
        assert!(matches!(enumerate_perms(0), Err(Error::Argument(_))));
        let msg = enumerate_perms(9).unwrap_err().to_string();
        assert!(msg.contains("362880"), "{msg}");
    }

    #[test]
    fn signs() {
        assert_eq!(Permutation::identity(5).sign(), 1);
        assert_eq!(Permutation::transposition(5, 2, 4).unwrap().sign(), -1);
        assert_eq!(p(&[2, 3, 1]).sign(), 1);
        assert_eq!(p(&[2, 1]).sign(), -1);
    }

    #[test]
    fn composition_and_inverse() {
        let q = p(&[2, 1, 3]);
        assert_eq!(Permutation::identity(3).compose(&q).unwrap(), q);
        assert_eq!(p(&[2, 3, 1]).compose(&q).unwrap(), p(&[3, 2, 1]));
        let tau = Permutation::transposition(4, 1, 3).unwrap();
        assert!(tau.compose(&tau).unwrap().is_identity());
        assert_eq!(p(&[2, 3, 1]).inverse(), p(&[3, 1, 2]));
        assert_eq!(tau.inverse(), tau);
        assert!(Permutation::identity(3).inverse().is_identity());
        assert!(p(&[2, 1]).compose(&q).is_err());
    }

    #[test]
    fn alternating_groups() {
        assert_eq!(alternating(2).unwrap(), vec![p(&[1, 2])]);
        let a3 = alternating(3).unwrap();
        assert_eq!(a3, vec![p(&[1, 2, 3]), p(&[2, 3, 1]), p(&[3, 1, 2])]);
        assert_eq!(alternating(4).unwrap().len(), 12);
        assert_eq!(alternating(1).unwrap().len(), 1);
    }

    #[test]
    fn basis_indices() {
        assert_eq!(p(&[1, 2]).basis_index(), 1);
        assert_eq!(p(&[2, 1]).basis_index(), 2);
        assert_eq!(p(&[3, 1, 2]).basis_index(), 19);
    }

    #[test]
    fn matrices() {
        let id: DMatrix<i64> = Permutation::identity(3).matrix();
        assert_eq!(id, DMatrix::identity(3, 3));
        let anti: DMatrix<i64> = p(&[2, 1]).matrix();
        assert_eq!(anti, DMatrix::from_row_slice(2, 2, &[0, 1, 1, 0]));
        // P|1⟩ = |p(1)⟩
        let m: DMatrix<i64> = p(&[3, 1, 2]).matrix();
        assert_eq!(m[(2, 0)], 1);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![1, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 1]).is_err());
        assert!(Permutation::from_images(vec![]).is_err());
        assert!(Permutation::transposition(3, 2, 2).is_err());
    }

    #[test]
    fn json_is_one_based_array() {
        let q = p(&[2, 3, 1]);
        assert_eq!(serde_json::to_string(&q).unwrap(), "[2,3,1]");
        let back: Permutation = serde_json::from_str("[2,3,1]").unwrap();
        assert_eq!(back, q);
        assert_eq!(back.sign(), 1);
        assert!(serde_json::from_str::<Permutation>("[2,2]").is_err());
    }
}

//! NPT detection, Schmidt analysis of witnesses and Schmidt-rank-constrained
//! minimization of `⟨φ|ρ^{T_B}|φ⟩`.
//!
//! The constrained minimum is searched by a see-saw: with a `k`-column frame `V`
//! on B fixed, every state `(I ⊗ V)x` has Schmidt rank at most `k`, and the best
//! such state is the lowest eigenvector of `(I ⊗ V)† C (I ⊗ V)`. The A side is
//! handled the same way with the frame of the current state's leading left
//! Schmidt vectors. Each half-step optimizes over a subspace containing the
//! current iterate, so iterate values never increase. The result is an upper
//! bound on the true constrained minimum: a negative value certifies negativity
//! at rank `k`, a nonnegative one proves nothing.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{fix_phase, hermitian_eig, kron, svd};
use crate::states::{DensityMatrix, PureState};
use crate::tol::{self, SignFlag, Tolerances};
use crate::{rng, Matrix, Operator, Vector, C64};

/// `φ = Σ_k λ_k |a_k⟩ ⊗ |b_k⟩` with `λ` descending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchmidtData {
    /// All `min(dimA, dimB)` coefficients, descending.
    pub coefficients: Vec<f64>,
    /// Column `k` is `a_k`.
    #[serde(rename = "baseA", with = "crate::json::matrix")]
    pub base_a: Matrix,
    /// Column `k` is `b_k`.
    #[serde(rename = "baseB", with = "crate::json::matrix")]
    pub base_b: Matrix,
    /// Number of coefficients above `rank_tolerance`.
    pub rank: usize,
    pub rank_tolerance: f64,
    /// Two of the leading `rank` coefficients agree within `rank_tolerance`, so
    /// the bases were fixed by the SVD's own ordering and then phase-normalized.
    pub degenerate: bool,
}

impl SchmidtData {
    /// `Σ λ_k a_k ⊗ b_k` over all coefficients.
    pub fn reconstruct(&self) -> Vector {
        let (da, db) = (self.base_a.nrows(), self.base_b.nrows());
        let mut v = Vector::zeros(da * db);
        for (k, &l) in self.coefficients.iter().enumerate() {
            for i in 0..da {
                let a = self.base_a[(i, k)] * l;
                for j in 0..db {
                    v[i * db + j] += a * self.base_b[(j, k)];
                }
            }
        }
        v
    }
}

/// Schmidt decomposition of a unit vector via the SVD of its `dimA × dimB` reshaping.
pub fn schmidt_decompose(phi: &PureState) -> Result<SchmidtData> {
    schmidt_decompose_with(phi, tol::SCHMIDT_RANK)
}

pub fn schmidt_decompose_with(phi: &PureState, rank_tolerance: f64) -> Result<SchmidtData> {
    let norm = phi.amplitudes.norm();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::arg(format!("Schmidt decomposition needs a unit vector, norm is {norm}")));
    }
    Ok(schmidt_of(&phi.amplitudes, phi.dim_a, phi.dim_b, rank_tolerance))
}

/// Singular values of the `dim_a × dim_b` reshaping of any vector, descending.
pub fn schmidt_coefficients(v: &Vector, dim_a: usize, dim_b: usize) -> Vec<f64> {
    svd(&reshape(v, dim_a, dim_b)).values
}

fn reshape(v: &Vector, dim_a: usize, dim_b: usize) -> Matrix {
    Matrix::from_row_slice(dim_a, dim_b, v.as_slice())
}

pub(crate) fn schmidt_of(v: &Vector, dim_a: usize, dim_b: usize, rank_tolerance: f64) -> SchmidtData {
    let s = svd(&reshape(v, dim_a, dim_b));
    let m = dim_a.min(dim_b);
    let mut base_a = Matrix::zeros(dim_a, m);
    let mut base_b = Matrix::zeros(dim_b, m);
    for k in 0..m {
        // Ψ = Σ σ u v†  ⇒  φ = Σ σ u ⊗ conj(v)
        let mut a: Vec<C64> = s.u.column(k).iter().copied().collect();
        let phase = fix_phase(&mut a);
        for i in 0..dim_a {
            base_a[(i, k)] = a[i];
        }
        for j in 0..dim_b {
            base_b[(j, k)] = s.v[(j, k)].conj() * phase.conj();
        }
    }
    let coefficients = s.values;
    let rank = coefficients.iter().filter(|&&c| c > rank_tolerance).count();
    let degenerate = coefficients[..rank]
        .windows(2)
        .any(|w| (w[0] - w[1]).abs() <= rank_tolerance);
    SchmidtData {
        coefficients,
        base_a,
        base_b,
        rank,
        rank_tolerance,
        degenerate,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NptCheck {
    pub min_pt_eigenvalue: f64,
    /// Lowest eigenvector of `ρ^{T_B}`.
    pub witness: PureState,
    pub flag: SignFlag,
}

impl NptCheck {
    pub fn is_npt(&self) -> bool {
        self.flag.is_negative()
    }
}

pub fn npt_check(rho: &DensityMatrix) -> Result<NptCheck> {
    npt_check_with(rho, tol::NEGATIVITY)
}

pub fn npt_check_with(rho: &DensityMatrix, tol_neg: f64) -> Result<NptCheck> {
    let pt = rho.partial_transpose();
    let eig = hermitian_eig(pt.matrix())?;
    let min = eig.min_value();
    Ok(NptCheck {
        min_pt_eigenvalue: min,
        witness: PureState::normalized(rho.dim_a(), rho.dim_b(), eig.min_vector())?,
        flag: SignFlag::classify(min, tol_neg),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeesawOptions {
    pub restarts: usize,
    pub max_iters: usize,
    pub seed: u64,
    /// Stop once a full iteration improves the value by less than this.
    pub improvement: f64,
}

impl Default for SeesawOptions {
    fn default() -> Self {
        SeesawOptions {
            restarts: 32,
            max_iters: 200,
            seed: 0,
            improvement: tol::SEESAW_IMPROVEMENT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeesawRun {
    pub value: f64,
    pub phi: PureState,
    /// Restart that produced the best value (lowest index among ties).
    pub restart: usize,
    /// Full A/B iterations of the winning restart.
    pub iterations: usize,
    pub converged: bool,
    /// Half-step values of the winning restart, in order.
    pub trace: Vec<f64>,
}

/// See-saw minimization of `⟨φ|C|φ⟩` over unit `φ` of Schmidt rank `≤ k`, for
/// any Hermitian bipartite operator `C`.
pub fn seesaw_min(op: &Operator, k: usize, opts: &SeesawOptions) -> Result<SeesawRun> {
    let (da, db) = (op.dim_a(), op.dim_b());
    if k == 0 || k > da.min(db) {
        return Err(Error::arg(format!(
            "rank bound {k} outside 1..={}",
            da.min(db)
        )));
    }
    if opts.restarts == 0 || opts.max_iters == 0 {
        return Err(Error::arg("see-saw needs at least one restart and one iteration"));
    }
    let runs: Vec<Result<SeesawRun>> = (0..opts.restarts)
        .into_par_iter()
        .map(|r| single_run(op, k, opts, r))
        .collect();
    let mut best: Option<SeesawRun> = None;
    for run in runs {
        let run = run?;
        if best.as_ref().is_none_or(|b| run.value < b.value) {
            best = Some(run);
        }
    }
    Ok(best.expect("at least one restart"))
}

fn lowest(compressed: &Matrix) -> Result<(f64, Vector)> {
    let e = hermitian_eig(compressed)?;
    Ok((e.min_value(), e.min_vector()))
}

/// `(I ⊗ F)† C (I ⊗ F)` without forming the product densely.
fn compress_b(c: &Matrix, da: usize, db: usize, f: &Matrix) -> Matrix {
    let k = f.ncols();
    let fh = f.adjoint();
    let mut out = Matrix::zeros(da * k, da * k);
    for a in 0..da {
        for a2 in 0..da {
            let block = &fh * c.view((a * db, a2 * db), (db, db)) * f;
            out.view_mut((a * k, a2 * k), (k, k)).copy_from(&block);
        }
    }
    out
}

/// `(E ⊗ I)† C (E ⊗ I)` without forming the product densely.
fn compress_a(c: &Matrix, da: usize, db: usize, e: &Matrix) -> Matrix {
    let k = e.ncols();
    let mut out = Matrix::zeros(k * db, k * db);
    for s in 0..k {
        for s2 in 0..k {
            let mut block = out.view_mut((s * db, s2 * db), (db, db));
            for a in 0..da {
                for a2 in 0..da {
                    let w = e[(a, s)].conj() * e[(a2, s2)];
                    block += c.view((a * db, a2 * db), (db, db)) * w;
                }
            }
        }
    }
    out
}

fn single_run(op: &Operator, k: usize, opts: &SeesawOptions, restart: usize) -> Result<SeesawRun> {
    let (da, db) = (op.dim_a(), op.dim_b());
    let c = op.matrix();
    let mut g = rng::seeded_stream(opts.seed, restart as u64);
    let mut frame_b = rng::haar_isometry(db, k, &mut g);
    let id_a = Matrix::identity(da, da);
    let id_b = Matrix::identity(db, db);

    let mut trace = Vec::new();
    let mut previous = f64::INFINITY;
    let mut phi = Vector::zeros(da * db);
    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iters {
        iterations += 1;

        let p = kron(&id_a, &frame_b)?;
        let (value, x) = lowest(&compress_b(c, da, db, &frame_b))?;
        phi = &p * x;
        trace.push(value);

        let schmidt = schmidt_of(&phi, da, db, tol::SCHMIDT_RANK);
        let frame_a = schmidt.base_a.columns(0, k).into_owned();
        let q = kron(&frame_a, &id_b)?;
        let (value, y) = lowest(&compress_a(c, da, db, &frame_a))?;
        phi = &q * y;
        trace.push(value);

        let schmidt = schmidt_of(&phi, da, db, tol::SCHMIDT_RANK);
        frame_b = schmidt.base_b.columns(0, k).into_owned();

        if previous - value < opts.improvement {
            converged = true;
            break;
        }
        previous = value;
    }
    let phi = PureState::normalized(da, db, phi)?;
    let value = phi.expectation(op)?.re;
    Ok(SeesawRun {
        value,
        phi,
        restart,
        iterations,
        converged,
        trace,
    })
}

/// [`seesaw_min`] on `ρ^{T_B}`.
pub fn rank_constrained_min(rho: &DensityMatrix, k: usize, opts: &SeesawOptions) -> Result<SeesawRun> {
    seesaw_min(&rho.partial_transpose(), k, opts)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankValue {
    pub k: usize,
    /// Best value found with Schmidt rank `≤ k`.
    pub value: f64,
    pub vector: PureState,
    /// Rank bound whose search produced `vector` (smaller than `k` when a
    /// lower-rank optimum was better).
    pub found_at: usize,
    pub restart: usize,
    pub iterations: usize,
    pub converged: bool,
    pub flag: SignFlag,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub min_pt_eigenvalue: f64,
    pub npt: SignFlag,
    pub witness: PureState,
    pub schmidt: SchmidtData,
    pub per_rank: Vec<RankValue>,
    /// Smallest `k` with a negative value; an upper bound on the minimal witnessing rank.
    pub minimal_rank_estimate: Option<usize>,
    pub estimate_semantics: String,
    pub conclusion: String,
    pub options: SeesawOptions,
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct WitnessOptions {
    pub seesaw: SeesawOptions,
    pub tolerances: Tolerances,
}

pub fn witness_report(rho: &DensityMatrix, opts: &WitnessOptions) -> Result<WitnessReport> {
    let tol_neg = opts.tolerances.negativity;
    let check = npt_check_with(rho, tol_neg)?;
    let schmidt = schmidt_decompose_with(&check.witness, opts.tolerances.schmidt_rank)?;
    let pt = rho.partial_transpose();
    let kmax = rho.dim_a().min(rho.dim_b());
    let seesaw = SeesawOptions {
        improvement: opts.tolerances.seesaw_improvement,
        ..opts.seesaw
    };

    let mut per_rank: Vec<RankValue> = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        let run = seesaw_min(&pt, k, &seesaw)?;
        let entry = match per_rank.last() {
            Some(prev) if prev.value <= run.value => RankValue { k, ..prev.clone() },
            _ => RankValue {
                k,
                value: run.value,
                vector: run.phi,
                found_at: k,
                restart: run.restart,
                iterations: run.iterations,
                converged: run.converged,
                flag: SignFlag::Nonnegative,
            },
        };
        per_rank.push(RankValue {
            flag: SignFlag::classify(entry.value, tol_neg),
            ..entry
        });
    }
    let minimal_rank_estimate = per_rank.iter().find(|r| r.flag.is_negative()).map(|r| r.k);
    let conclusion = match (check.flag, minimal_rank_estimate) {
        (SignFlag::Negative, Some(d)) => format!("NPT; negativity witnessed at Schmidt rank {d}"),
        (SignFlag::Negative, None) => "NPT; see-saw found no negative value at any rank".into(),
        (SignFlag::Inconclusive, _) => format!(
            "no negativity at any rank; minimum PT eigenvalue {:e} is inside the noise floor (inconclusive)",
            check.min_pt_eigenvalue
        ),
        (SignFlag::Nonnegative, _) => "no negativity at any rank (PT is positive semidefinite)".into(),
    };
    Ok(WitnessReport {
        min_pt_eigenvalue: check.min_pt_eigenvalue,
        npt: check.flag,
        witness: check.witness,
        schmidt,
        per_rank,
        minimal_rank_estimate,
        estimate_semantics: "upper bound: negativity certified at this rank by an explicit state; \
                             no proof of positivity below it"
            .into(),
        conclusion,
        options: seesaw,
        tolerances: opts.tolerances,
    })
}

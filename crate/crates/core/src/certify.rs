//! Schmidt-rank-2 negativity certificates on `n` copies.
//!
//! A certificate is a unit state `|ψ⟩ = c₀|a₀⟩|b₀⟩ + c₁|a₁⟩|b₁⟩` on
//! `A^{⊗n} ⊗ B^{⊗n}` (all A-copies first) with `⟨ψ|(ρ^{T_B})^{⊗n}|ψ⟩ < 0`.
//! The operator `(ρ^{T_B})^{⊗n}` naturally lives on the copy-major space
//! `(A ⊗ B)^{⊗n}`; [`reorder_copies`] and [`copy_major_index`] convert between
//! the two layouts.

use serde::{Deserialize, Serialize};

use crate::construct::{
    claim_check, eval_psi_form, minus_state, plus_state, witness_frame, ClaimCheckReport, ClaimOptions,
    StateDescription, WitnessFrame, PSI_EVAL_MAX_DEGREE, REPORT_SCHEMA_VERSION,
};
use crate::error::{Error, Result};
use crate::linalg::{dense_perm_vector, kron, BipartiteOperator, DENSE_VECTOR_CAP};
use crate::perm::factorial;
use crate::states::DensityMatrix;
use crate::tol::{self, SignFlag};
use crate::witness::{schmidt_coefficients, schmidt_of, seesaw_min, SeesawOptions};
use crate::{Matrix, Operator, Vector, C64};

/// Largest `(dimA·dimB)^n` for dense reordering and search.
pub const DENSE_COPY_CAP: usize = 4096;
/// Largest copy count for see-saw search.
pub const MAX_SEARCH_COPIES: usize = 2;

fn copies_dim(dim: usize, n: usize, cap: usize, what: &str) -> Result<usize> {
    match dim.checked_pow(n as u32) {
        Some(total) if total <= cap => Ok(total),
        _ => Err(Error::size(
            what,
            (dim as u128).saturating_pow(n as u32),
            cap as u128,
        )),
    }
}

/// Position in the copy-major layout of the collective basis state
/// `|a⟩|b⟩`, where `a` indexes `A^{⊗n}` and `b` indexes `B^{⊗n}` (both big-endian).
pub fn copy_major_index(dim_a: usize, dim_b: usize, n: usize, a: usize, b: usize) -> usize {
    let (mut a, mut b) = (a, b);
    let mut idx = 0;
    let mut weight = 1;
    for _ in 0..n {
        let (at, bt) = (a % dim_a, b % dim_b);
        a /= dim_a;
        b /= dim_b;
        idx += (at * dim_b + bt) * weight;
        weight *= dim_a * dim_b;
    }
    idx
}

/// `op^{⊗n}` with rows and columns permuted from `(A⊗B)^{⊗n}` to
/// `A^{⊗n} ⊗ B^{⊗n}`.
pub fn reorder_copies(op: &Operator, n: usize) -> Result<Operator> {
    if n == 0 {
        return Err(Error::arg("copy count must be positive"));
    }
    let (da, db) = (op.dim_a(), op.dim_b());
    let total = copies_dim(op.dim(), n, DENSE_COPY_CAP, "reordered copy operator dimension")?;
    let (na, nb) = (da.pow(n as u32), db.pow(n as u32));
    // local (a_t, b_t) digits for every collective index
    let digits: Vec<Vec<usize>> = (0..total)
        .map(|r| {
            let cm = copy_major_index(da, db, n, r / nb, r % nb);
            let mut out = vec![0; n];
            let mut rest = cm;
            for t in (0..n).rev() {
                out[t] = rest % op.dim();
                rest /= op.dim();
            }
            out
        })
        .collect();
    let c = op.matrix();
    let m = Matrix::from_fn(total, total, |r, s| {
        digits[r]
            .iter()
            .zip(&digits[s])
            .fold(C64::new(1.0, 0.0), |acc, (&x, &y)| acc * c[(x, y)])
    });
    BipartiteOperator::new(na, nb, m)
}

/// `(X^{⊗n}) v` for `v` on `n` copies of the space `X` acts on, without forming
/// the tensor power.
pub fn apply_copywise(x: &Matrix, v: &Vector, n: usize) -> Result<Vector> {
    let dd = x.nrows();
    if x.ncols() != dd {
        return Err(Error::arg("copywise action needs a square matrix"));
    }
    if dd.checked_pow(n as u32) != Some(v.len()) {
        return Err(Error::arg(format!(
            "vector of length {} is not {n} copies of dimension {dd}",
            v.len()
        )));
    }
    let mut cur = v.clone();
    let mut next = Vector::zeros(v.len());
    for t in 0..n {
        let inner = dd.pow((n - 1 - t) as u32);
        let outer = v.len() / (dd * inner);
        for o in 0..outer {
            for i in 0..inner {
                for r in 0..dd {
                    let mut acc = C64::new(0.0, 0.0);
                    for s in 0..dd {
                        acc += x[(r, s)] * cur[(o * dd + s) * inner + i];
                    }
                    next[(o * dd + r) * inner + i] = acc;
                }
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(cur)
}

/// Local frames that turn the permutation superposition on `degree` copies
/// into this certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionOrigin {
    pub degree: usize,
    #[serde(rename = "frameA", with = "crate::json::matrix")]
    pub frame_a: Matrix,
    #[serde(rename = "frameB", with = "crate::json::matrix")]
    pub frame_b: Matrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchTrace {
    pub restart: usize,
    pub iterations: usize,
    pub converged: bool,
    pub trace: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rank2Certificate {
    pub n: usize,
    /// Single-copy local dimensions.
    #[serde(rename = "dimA")]
    pub dim_a: usize,
    #[serde(rename = "dimB")]
    pub dim_b: usize,
    #[serde(rename = "aVecs", with = "crate::json::vector_list")]
    pub a_vecs: Vec<Vector>,
    #[serde(rename = "bVecs", with = "crate::json::vector_list")]
    pub b_vecs: Vec<Vector>,
    pub coeffs: [f64; 2],
    pub value: f64,
    pub conclusive: bool,
    #[serde(default)]
    pub origin: Option<ConstructionOrigin>,
    #[serde(default)]
    pub search: Option<SearchTrace>,
}

impl Rank2Certificate {
    /// Checks vector counts and lengths, unit local vectors, and unit total norm.
    pub fn validate(&self) -> Result<()> {
        let na = self.dim_a.checked_pow(self.n as u32);
        let nb = self.dim_b.checked_pow(self.n as u32);
        if self.n == 0 || na.is_none() || nb.is_none() {
            return Err(Error::arg("certificate copy count or dimensions out of range"));
        }
        if self.a_vecs.len() != 2 || self.b_vecs.len() != 2 {
            return Err(Error::arg("certificate needs exactly two A and two B vectors"));
        }
        for (vs, len, side) in [(&self.a_vecs, na.unwrap(), "A"), (&self.b_vecs, nb.unwrap(), "B")] {
            for v in vs {
                if v.len() != len {
                    return Err(Error::arg(format!(
                        "{side} vector has length {}, expected {len}",
                        v.len()
                    )));
                }
                if (v.norm() - 1.0).abs() > tol::TRACE {
                    return Err(Error::Validation {
                        what: format!("{side} vector norm"),
                        magnitude: (v.norm() - 1.0).abs(),
                    });
                }
            }
        }
        let norm = self.state_vector().norm();
        if (norm - 1.0).abs() > tol::TRACE {
            return Err(Error::Validation {
                what: "certificate state norm".into(),
                magnitude: (norm - 1.0).abs(),
            });
        }
        Ok(())
    }

    /// The certificate state on `A^{⊗n} ⊗ B^{⊗n}`.
    pub fn state_vector(&self) -> Vector {
        self.a_vecs[0].kronecker(&self.b_vecs[0]) * C64::new(self.coeffs[0], 0.0)
            + self.a_vecs[1].kronecker(&self.b_vecs[1]) * C64::new(self.coeffs[1], 0.0)
    }

    /// The same state in the copy-major layout `(A ⊗ B)^{⊗n}`.
    pub fn copy_major_vector(&self) -> Vector {
        let v = self.state_vector();
        let nb = self.b_vecs[0].len();
        let mut out = Vector::zeros(v.len());
        for (r, z) in v.iter().enumerate() {
            out[copy_major_index(self.dim_a, self.dim_b, self.n, r / nb, r % nb)] = *z;
        }
        out
    }

    /// Schmidt rank across `A^{⊗n} : B^{⊗n}`.
    pub fn schmidt_rank(&self, tol: f64) -> usize {
        let v = self.state_vector();
        schmidt_coefficients(&v, self.a_vecs[0].len(), self.b_vecs[0].len())
            .iter()
            .filter(|&&s| s > tol)
            .count()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateEvaluation {
    pub value: f64,
    pub imaginary: f64,
    pub flag: SignFlag,
    /// Value through the permutation-superposition route, for constructed certificates.
    pub matrix_free_value: Option<f64>,
    pub consistency_defect: Option<f64>,
}

/// `⟨ψ|(ρ^{T_B})^{⊗n}|ψ⟩`, contracted copy by copy.
pub fn eval_certificate(rho: &DensityMatrix, cert: &Rank2Certificate) -> Result<CertificateEvaluation> {
    eval_certificate_with(rho, cert, tol::NEGATIVITY)
}

pub fn eval_certificate_with(
    rho: &DensityMatrix,
    cert: &Rank2Certificate,
    tol_neg: f64,
) -> Result<CertificateEvaluation> {
    if cert.dim_a != rho.dim_a() || cert.dim_b != rho.dim_b() {
        return Err(Error::arg(format!(
            "certificate is for {}⊗{}, state is {}⊗{}",
            cert.dim_a,
            cert.dim_b,
            rho.dim_a(),
            rho.dim_b()
        )));
    }
    cert.validate()?;
    copies_dim(rho.op().dim(), cert.n, DENSE_VECTOR_CAP, "certificate state dimension")?;
    let pt = rho.partial_transpose();
    let v = cert.copy_major_vector();
    let z = v.dotc(&apply_copywise(pt.matrix(), &v, cert.n)?);

    let (mut matrix_free_value, mut consistency_defect) = (None, None);
    if let Some(origin) = &cert.origin {
        if origin.degree == cert.n && origin.degree <= PSI_EVAL_MAX_DEGREE {
            let w = kron(&origin.frame_a, &origin.frame_b)?;
            let ctilde = BipartiteOperator::new(rho.dim_a(), rho.dim_b(), w.adjoint() * pt.matrix() * &w)?;
            let norm_sqr = psi_norm_sqr(origin.degree);
            let mf = eval_psi_form(&ctilde, origin.degree)?.re / norm_sqr;
            matrix_free_value = Some(mf);
            consistency_defect = Some((mf - z.re).abs());
        }
    }
    Ok(CertificateEvaluation {
        value: z.re,
        imaginary: z.im,
        flag: SignFlag::classify(z.re, tol_neg),
        matrix_free_value,
        consistency_defect,
    })
}

/// `‖ψ‖² = 2·(d!/2)²` for `|ψ⟩ = |+,+⟩ - |−,−⟩`.
fn psi_norm_sqr(d: usize) -> f64 {
    let half = (factorial(d) / 2) as f64;
    2.0 * half * half
}

/// The normalized permutation superposition `|ψ⟩` on `d = frame.degree` copies,
/// rotated into the witness frame, as a certificate.
pub fn certificate_from_construction(
    rho: &DensityMatrix,
    frame: &WitnessFrame,
    tol_neg: f64,
) -> Result<Rank2Certificate> {
    let d = frame.degree;
    if d < 2 {
        return Err(Error::arg("construction needs degree at least 2"));
    }
    copies_dim(rho.op().dim(), d, DENSE_VECTOR_CAP, "certificate state dimension")?;
    let (da, db) = (rho.dim_a(), rho.dim_b());
    let side = |frame: &Matrix, dim: usize| -> Result<Vec<Vector>> {
        let mut out = Vec::with_capacity(2);
        for s in [plus_state(d)?, minus_state(d)?] {
            let v: Vector = dense_perm_vector(&s, dim)?;
            let v = apply_copywise(frame, &v, d)?;
            out.push(v.unscale(v.norm()));
        }
        Ok(out)
    };
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut cert = Rank2Certificate {
        n: d,
        dim_a: da,
        dim_b: db,
        a_vecs: side(&frame.frame_a, da)?,
        b_vecs: side(&frame.frame_b, db)?,
        coeffs: [h, -h],
        value: f64::NAN,
        conclusive: false,
        origin: Some(ConstructionOrigin {
            degree: d,
            frame_a: frame.frame_a.clone(),
            frame_b: frame.frame_b.clone(),
        }),
        search: None,
    };
    let eval = eval_certificate_with(rho, &cert, tol_neg)?;
    cert.value = eval.value;
    cert.conclusive = eval.flag.is_negative();
    Ok(cert)
}

/// See-saw over Schmidt-rank-2 states on `n ≤ 2` copies.
pub fn seesaw_rank2(
    rho: &DensityMatrix,
    n: usize,
    opts: &SeesawOptions,
    tol_neg: f64,
) -> Result<Rank2Certificate> {
    if n == 0 {
        return Err(Error::arg("copy count must be positive"));
    }
    if n > MAX_SEARCH_COPIES {
        return Err(Error::size("certificate search copies", n as u128, MAX_SEARCH_COPIES as u128));
    }
    let op = reorder_copies(&rho.partial_transpose(), n)?;
    let (na, nb) = (op.dim_a(), op.dim_b());
    let k = 2.min(na).min(nb);
    let run = seesaw_min(&op, k, opts)?;
    let s = schmidt_of(&run.phi.amplitudes, na, nb, tol::SCHMIDT_RANK);
    let mut coeffs = [0.0; 2];
    coeffs[..k].copy_from_slice(&s.coefficients[..k]);
    let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
    coeffs.iter_mut().for_each(|c| *c /= norm);
    let pick = |m: &Matrix| -> Vec<Vector> {
        // a 1-dimensional side has a single column; reuse it with zero weight
        (0..2).map(|i| m.column(i.min(m.ncols() - 1)).into_owned()).collect()
    };
    let mut cert = Rank2Certificate {
        n,
        dim_a: rho.dim_a(),
        dim_b: rho.dim_b(),
        a_vecs: pick(&s.base_a),
        b_vecs: pick(&s.base_b),
        coeffs,
        value: f64::NAN,
        conclusive: false,
        origin: None,
        search: Some(SearchTrace {
            restart: run.restart,
            iterations: run.iterations,
            converged: run.converged,
            trace: run.trace,
        }),
    };
    let eval = eval_certificate_with(rho, &cert, tol_neg)?;
    cert.value = eval.value;
    cert.conclusive = eval.flag.is_negative();
    Ok(cert)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifyOptions {
    pub claim: ClaimOptions,
    pub max_copies: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            claim: ClaimOptions::default(),
            max_copies: MAX_SEARCH_COPIES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CopyOutcome {
    pub n: usize,
    pub certificate: Option<Rank2Certificate>,
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistillabilityReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub state: StateDescription,
    pub min_pt_eigenvalue: f64,
    pub npt: SignFlag,
    /// Copies predicted by the smallest witnessing Schmidt rank (see-saw upper bound).
    pub predicted_copies: Option<usize>,
    pub searches: Vec<CopyOutcome>,
    pub construction_certificate: Option<Rank2Certificate>,
    pub claim_check: Option<ClaimCheckReport>,
    /// Copy counts with a conclusive certificate.
    pub conclusive_at: Vec<usize>,
    pub conclusion: String,
    pub options: CertifyOptions,
}

/// Negativity analysis, claim check, constructed certificate, and see-saw
/// searches on up to `max_copies` copies.
pub fn distillability_report(
    rho: &DensityMatrix,
    state: StateDescription,
    opts: &CertifyOptions,
) -> Result<DistillabilityReport> {
    let tol_neg = opts.claim.witness.tolerances.negativity;
    let check = claim_check(rho, state.clone(), &opts.claim)?;
    let mut report = DistillabilityReport {
        schema_version: REPORT_SCHEMA_VERSION,
        tool_version: crate::VERSION.to_string(),
        state,
        min_pt_eigenvalue: check.min_pt_eigenvalue,
        npt: check.npt,
        predicted_copies: check.minimal_rank_estimate,
        searches: Vec::new(),
        construction_certificate: None,
        claim_check: None,
        conclusive_at: Vec::new(),
        conclusion: String::new(),
        options: *opts,
    };
    if !check.npt.is_negative() {
        report.conclusion =
            "inconclusive at all tested n; PPT ⇒ no PT-negativity certificate exists".into();
        report.claim_check = Some(check);
        return Ok(report);
    }

    for n in 1..=opts.max_copies.min(MAX_SEARCH_COPIES) {
        let outcome = match seesaw_rank2(rho, n, &opts.claim.witness.seesaw, tol_neg) {
            Ok(cert) => CopyOutcome {
                n,
                certificate: Some(cert),
                skipped: None,
            },
            Err(Error::SizeLimit { what, requested, limit }) => CopyOutcome {
                n,
                certificate: None,
                skipped: Some(format!("{what}: {requested} exceeds {limit}")),
            },
            Err(e) => return Err(e),
        };
        if outcome.certificate.as_ref().is_some_and(|c| c.conclusive) {
            report.conclusive_at.push(n);
        }
        report.searches.push(outcome);
    }

    if check.construction.is_some() {
        let frame = witness_frame(rho, &check.witness.schmidt)?;
        match certificate_from_construction(rho, &frame, tol_neg) {
            Ok(cert) => {
                if cert.conclusive && !report.conclusive_at.contains(&cert.n) {
                    report.conclusive_at.push(cert.n);
                }
                report.construction_certificate = Some(cert);
            }
            Err(Error::SizeLimit { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    report.conclusive_at.sort_unstable();

    report.conclusion = if report.conclusive_at.is_empty() {
        "inconclusive".into()
    } else {
        let list: Vec<String> = report.conclusive_at.iter().map(usize::to_string).collect();
        format!("conclusive negativity found at n = {}", list.join(", "))
    };
    report.claim_check = Some(check);
    Ok(report)
}

//! Permutation-superposition construction on `d` copies and numerical checks
//! of the determinant identities it rests on.
//!
//! Given an NPT state `ρ` and a witness `|φ⟩ = Σ_k λ_k |a_k⟩|b_k⟩` of Schmidt
//! rank `d`, the operator `C = ρ^{T_B}` is rotated into the witness frame,
//! `C̃ = (V_A ⊗ V_B)† C (V_A ⊗ V_B)`, so that `φ̃ = Σ λ_k |k,k⟩`. The rotation is
//! applied after the partial transpose. Applying it to `ρ` instead would turn
//! `V_B` into its complex conjugate under `T_B`; conjugating `C` directly keeps
//! `⟨φ̃|C̃|φ̃⟩ = ⟨φ|C|φ⟩` exact.
//!
//! From `C̃` the module forms the minor `M[k,l] = ⟨k,k|C̃|l,l⟩`, its determinant,
//! and the bilinear forms of `C̃^{⊗d}` in the states
//!
//! * `|ψ̃⟩ = Σ_f sign f |f,f⟩`, whose form equals `d!·det M` identically, and
//! * `|ψ⟩ = |+,+⟩ - |−,−⟩` with `|±⟩` the sums over even/odd permutations,
//!   which has Schmidt rank two across the A-copies : B-copies cut.
//!
//! The relation `⟨ψ|C̃^{⊗d}|ψ⟩ = |A_d|·⟨ψ̃|C̃^{⊗d}|ψ̃⟩` is measured, not assumed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    bilinear_pair_form, complete_basis, dense_pair_vector, det_lu, det_perm_sum, hermitian_defect, kron,
    kron_power, BipartiteOperator, PairTerm, SignedPairSuperposition, SignedSuperposition,
};
use crate::perm::{alternating, check_degree, enumerate_perms, factorial, Permutation};
use crate::scalar::scale_of;
use crate::states::DensityMatrix;
use crate::tol::{SignFlag, Tolerances};
use crate::witness::{witness_report, SchmidtData, WitnessOptions, WitnessReport};
use crate::{Matrix, Operator, Vector, C64};

/// Largest degree for `|ψ̃⟩` (`(7!)²` term pairs).
pub const PSI_TILDE_MAX_DEGREE: usize = 7;
/// Largest degree for building `|ψ⟩`.
pub const PSI_BUILD_MAX_DEGREE: usize = 6;
/// Largest degree for evaluating `⟨ψ|C^{⊗d}|ψ⟩` (`(2·60²)²` term pairs at 5).
pub const PSI_EVAL_MAX_DEGREE: usize = 5;
/// Largest degree for the exact identity checks.
pub const IDENTITY_MAX_DEGREE: usize = 6;
/// Dense cross-checks run when `(dimA·dimB)^d` is at most this.
pub const DENSE_CHECK_MAX_DIM: usize = 2048;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

fn check_range(d: usize, max: usize, what: &str) -> Result<()> {
    if d < 2 {
        return Err(Error::arg(format!("{what}: degree {d} below 2")));
    }
    check_degree(d, max, what)
}

/// The witness-frame operator and the frame that produced it.
#[derive(Debug, Clone)]
pub struct WitnessFrame {
    pub ctilde: Operator,
    /// Unitary whose first `degree` columns are the A-side Schmidt vectors.
    pub frame_a: Matrix,
    pub frame_b: Matrix,
    pub degree: usize,
    /// Leading `degree` Schmidt coefficients.
    pub lambda: Vec<f64>,
}

impl WitnessFrame {
    /// `Σ_k λ_k |k,k⟩` in the rotated frame.
    pub fn phi_tilde(&self) -> Vector {
        let db = self.ctilde.dim_b();
        let mut v = Vector::zeros(self.ctilde.dim());
        for (k, &l) in self.lambda.iter().enumerate() {
            v[k * db + k] = C64::new(l, 0.0);
        }
        v
    }
}

/// `C̃ = (V_A ⊗ V_B)† ρ^{T_B} (V_A ⊗ V_B)` with the witness's Schmidt vectors as
/// the leading frame columns; the degree is the Schmidt rank.
pub fn witness_frame(rho: &DensityMatrix, schmidt: &SchmidtData) -> Result<WitnessFrame> {
    let (da, db) = (rho.dim_a(), rho.dim_b());
    if schmidt.base_a.nrows() != da || schmidt.base_b.nrows() != db {
        return Err(Error::arg(format!(
            "Schmidt data for {}⊗{} does not match state on {da}⊗{db}",
            schmidt.base_a.nrows(),
            schmidt.base_b.nrows()
        )));
    }
    let d = schmidt.rank;
    if d == 0 || d > schmidt.coefficients.len() || d > schmidt.base_a.ncols() {
        return Err(Error::arg(format!(
            "Schmidt data has rank {d} but only {} coefficients",
            schmidt.coefficients.len()
        )));
    }
    let frame_a = complete_basis(&schmidt.base_a.columns(0, d).into_owned());
    let frame_b = complete_basis(&schmidt.base_b.columns(0, d).into_owned());
    let w = kron(&frame_a, &frame_b)?;
    let c = rho.partial_transpose();
    let rotated = w.adjoint() * c.matrix() * &w;
    // re-symmetrize: the similarity is exact only up to rounding
    let rotated = (&rotated + rotated.adjoint()).scale(0.5);
    Ok(WitnessFrame {
        ctilde: BipartiteOperator::new(da, db, rotated)?,
        frame_a,
        frame_b,
        degree: d,
        lambda: schmidt.coefficients[..d].to_vec(),
    })
}

/// `M[k,l] = ⟨k,k|C̃|l,l⟩` for `k, l < d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinorMatrix {
    pub d: usize,
    #[serde(with = "crate::json::matrix")]
    pub entries: Matrix,
}

impl MinorMatrix {
    /// `λ† M λ` for a real coefficient vector.
    pub fn quadratic_form(&self, lambda: &[f64]) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..self.d {
            for l in 0..self.d {
                acc += self.entries[(k, l)] * (lambda[k] * lambda[l]);
            }
        }
        acc
    }
}

pub fn minor_matrix(ctilde: &Operator, d: usize) -> Result<MinorMatrix> {
    if d == 0 || d > ctilde.dim_a().min(ctilde.dim_b()) {
        return Err(Error::arg(format!(
            "minor of degree {d} needs local dimensions at least {d}, operator is {}⊗{}",
            ctilde.dim_a(),
            ctilde.dim_b()
        )));
    }
    let entries = Matrix::from_fn(d, d, |k, l| ctilde.element(k, k, l, l));
    Ok(MinorMatrix { d, entries })
}

/// Leibniz determinant of the minor.
pub fn det_phi(m: &MinorMatrix) -> Result<C64> {
    det_perm_sum(&m.entries)
}

/// `Σ_f sign f |f, f⟩`.
pub fn build_psi_tilde(d: usize) -> Result<SignedPairSuperposition> {
    check_range(d, PSI_TILDE_MAX_DEGREE, "psi-tilde construction")?;
    let terms = enumerate_perms(d)?
        .into_iter()
        .map(|f| PairTerm {
            b: f.clone(),
            coeff: f.sign() as i64,
            a: f,
        })
        .collect();
    SignedPairSuperposition::new(d, terms)
}

/// `Σ_{f,g even} |f, g⟩ - Σ_{f,g odd} |f, g⟩`.
pub fn build_psi(d: usize) -> Result<SignedPairSuperposition> {
    check_range(d, PSI_BUILD_MAX_DEGREE, "psi construction")?;
    let all = enumerate_perms(d)?;
    let (even, odd): (Vec<_>, Vec<_>) = all.into_iter().partition(Permutation::is_even);
    let mut terms = Vec::with_capacity(even.len() * even.len() + odd.len() * odd.len());
    for (group, coeff) in [(&even, 1i64), (&odd, -1i64)] {
        for f in group {
            for g in group {
                terms.push(PairTerm {
                    a: f.clone(),
                    b: g.clone(),
                    coeff,
                });
            }
        }
    }
    SignedPairSuperposition::new(d, terms)
}

/// `|+⟩ = Σ_{f even} |f⟩`.
pub fn plus_state(d: usize) -> Result<SignedSuperposition> {
    SignedSuperposition::new(
        d,
        enumerate_perms(d)?.into_iter().filter(Permutation::is_even).map(|f| (f, 1)).collect(),
    )
}

/// `|−⟩ = Σ_{f odd} |f⟩`.
pub fn minus_state(d: usize) -> Result<SignedSuperposition> {
    SignedSuperposition::new(
        d,
        enumerate_perms(d)?.into_iter().filter(|f| !f.is_even()).map(|f| (f, 1)).collect(),
    )
}

/// `Σ_f sign f |f⟩ = |+⟩ - |−⟩`.
pub fn signed_sum(d: usize) -> Result<SignedSuperposition> {
    SignedSuperposition::new(
        d,
        enumerate_perms(d)?
            .into_iter()
            .map(|f| {
                let s = f.sign() as i64;
                (f, s)
            })
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermMismatch {
    pub a: Permutation,
    pub b: Permutation,
    pub generated: i64,
    pub expected: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalRelationCheck {
    pub d: usize,
    /// Terms produced by applying `Σ_{h even} I ⊗ h` before collection.
    pub generated_terms: usize,
    pub collected_terms: usize,
    pub expected_terms: usize,
    pub equal: bool,
    /// Up to 16 differing terms when `equal` is false.
    pub counterexample: Vec<TermMismatch>,
}

/// Applies `Σ_{h ∈ A_d} (I ⊗ P_h)^{⊗d}` to `|ψ̃⟩` term by term (`|f, g⟩ ↦ |f, h∘g⟩`),
/// collects the integer coefficients, and compares with `|ψ⟩` exactly.
pub fn check_local_relation(d: usize) -> Result<LocalRelationCheck> {
    check_range(d, IDENTITY_MAX_DEGREE, "local-relation check")?;
    let psi_tilde = build_psi_tilde(d)?;
    let evens = alternating(d)?;
    let mut generated = Vec::with_capacity(evens.len() * psi_tilde.len());
    for h in &evens {
        for t in psi_tilde.terms() {
            generated.push(PairTerm {
                a: t.a.clone(),
                b: h.compose(&t.b)?,
                coeff: t.coeff,
            });
        }
    }
    let generated_terms = generated.len();
    let image = SignedPairSuperposition::collect(d, generated)?;
    let psi = build_psi(d)?;
    let equal = image.same_vector(&psi);
    let mut counterexample = Vec::new();
    if !equal {
        let got = image.canonical();
        let want = psi.canonical();
        let lookup = |list: &[(u64, u64, i64)], key: (u64, u64)| {
            list.binary_search_by_key(&key, |&(a, b, _)| (a, b))
                .map(|i| list[i].2)
                .unwrap_or(0)
        };
        let perms = enumerate_perms(d)?;
        let by_index = |idx: u64| perms.iter().find(|p| p.basis_index() == idx).cloned();
        let mut keys: Vec<(u64, u64)> = got.iter().chain(&want).map(|&(a, b, _)| (a, b)).collect();
        keys.sort_unstable();
        keys.dedup();
        for key in keys {
            let (g, e) = (lookup(&got, key), lookup(&want, key));
            if g != e && counterexample.len() < 16 {
                if let (Some(a), Some(b)) = (by_index(key.0), by_index(key.1)) {
                    counterexample.push(TermMismatch {
                        a,
                        b,
                        generated: g,
                        expected: e,
                    });
                }
            }
        }
    }
    Ok(LocalRelationCheck {
        d,
        generated_terms,
        collected_terms: image.len(),
        expected_terms: psi.len(),
        equal,
        counterexample,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaRow {
    pub h: Permutation,
    /// `Σ_f sign f ⟨e,e|(I ⊗ P_h)^{⊗d}|f,f⟩`, summed term by term.
    pub direct_sum: i64,
    /// Integer Leibniz determinant of the minor of `I ⊗ P_h`.
    pub minor_determinant: i64,
    pub expected: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaCheck {
    pub d: usize,
    pub rows: Vec<LambdaRow>,
    pub all_hold: bool,
}

/// Exact evaluation of `λ(h) = det_φ[I ⊗ P_h]` for every `h ∈ A_d` by two routes,
/// compared with `δ_{e,h}`.
pub fn check_lambda_identity(d: usize) -> Result<LambdaCheck> {
    check_range(d, IDENTITY_MAX_DEGREE, "lambda check")?;
    let perms = enumerate_perms(d)?;
    let e = Permutation::identity(d);
    let mut rows = Vec::new();
    for h in alternating(d)? {
        // (I ⊗ P_h)^{⊗d} |f, f⟩ = |f, h∘f⟩; ⟨e,e|f,h∘f⟩ = [f = e][h∘f = e]
        let mut direct_sum = 0i64;
        for f in &perms {
            let hf = h.compose(f)?;
            if *f == e && hf == e {
                direct_sum += f.sign() as i64;
            }
        }
        // ⟨k,k| I ⊗ P_h |l,l⟩ = δ_{k,l} δ_{k,h(l)}
        let minor = nalgebra::DMatrix::<i64>::from_fn(d, d, |k, l| {
            i64::from(k == l && h.image(l + 1) == k + 1)
        });
        let minor_determinant = det_perm_sum(&minor)?;
        let expected = i64::from(h.is_identity());
        rows.push(LambdaRow {
            holds: direct_sum == expected && minor_determinant == expected,
            h,
            direct_sum,
            minor_determinant,
            expected,
        });
    }
    let all_hold = rows.iter().all(|r| r.holds);
    Ok(LambdaCheck { d, rows, all_hold })
}

/// `⟨ψ̃| C̃^{⊗d} |ψ̃⟩`, matrix-free.
pub fn eval_psi_tilde_form(ctilde: &Operator, d: usize) -> Result<C64> {
    let s = build_psi_tilde(d)?;
    bilinear_pair_form(ctilde, &s, &s)
}

/// `⟨ψ| C̃^{⊗d} |ψ⟩`, matrix-free.
pub fn eval_psi_form(ctilde: &Operator, d: usize) -> Result<C64> {
    check_range(d, PSI_EVAL_MAX_DEGREE, "psi evaluation")?;
    let s = build_psi(d)?;
    bilinear_pair_form(ctilde, &s, &s)
}

/// `⟨s| C^{⊗d} |s⟩` through the explicit Kronecker power.
pub fn dense_form(op: &Operator, s: &SignedPairSuperposition) -> Result<C64> {
    let big = kron_power(op.matrix(), s.degree())?;
    let v: Vector = dense_pair_vector(s, op.dim_a(), op.dim_b())?;
    Ok(v.dotc(&(big * &v)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateDescription {
    pub label: String,
    #[serde(rename = "dimA")]
    pub dim_a: usize,
    #[serde(rename = "dimB")]
    pub dim_b: usize,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClaimOptions {
    pub witness: WitnessOptions,
    /// Caps below the built-in limits; `None` keeps the built-in limit.
    pub max_degree: Option<usize>,
    pub dense_cross_check: bool,
}

impl Default for ClaimOptions {
    fn default() -> Self {
        ClaimOptions {
            witness: WitnessOptions::default(),
            max_degree: None,
            dense_cross_check: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimStatus {
    Complete,
    NotApplicable,
    Truncated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormValue {
    pub value: f64,
    pub imaginary: f64,
    pub flag: SignFlag,
}

impl FormValue {
    fn new(z: C64, tol_neg: f64) -> Self {
        FormValue {
            value: z.re,
            imaginary: z.im,
            flag: SignFlag::classify(z.re, tol_neg),
        }
    }
}

/// A numerically checked identity `lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub defect: f64,
    pub tolerance: f64,
    pub holds: bool,
}

impl IdentityCheck {
    fn new(lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let defect = (lhs - rhs).abs();
        IdentityCheck {
            lhs,
            rhs,
            defect,
            tolerance,
            holds: defect <= tolerance,
        }
    }
}

/// The measured side of `⟨ψ|C̃^{⊗d}|ψ⟩ = |A_d|·⟨ψ̃|C̃^{⊗d}|ψ̃⟩`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimedEquality {
    pub alternating_order: u64,
    pub predicted_psi_value: f64,
    pub psi_value: f64,
    /// `psi_value - predicted_psi_value`.
    pub discrepancy: f64,
    pub relative_discrepancy: f64,
    /// `psi_value / psi_tilde_value`, to compare with `alternating_order`.
    pub measured_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathAgreement {
    pub quantity: String,
    pub matrix_free: f64,
    pub dense: f64,
    pub defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Construction {
    pub d: usize,
    pub lambda: Vec<f64>,
    pub degenerate_schmidt: bool,
    pub minor_matrix: MinorMatrix,
    pub minor_hermitian_defect: f64,
    /// `λ† M λ` against the witness value `⟨φ|ρ^{T_B}|φ⟩`.
    pub lambda_form: IdentityCheck,
    #[serde(with = "crate::json::complex")]
    pub det_phi: C64,
    #[serde(with = "crate::json::complex")]
    pub det_phi_lu: C64,
    pub det_phi_flag: SignFlag,
    pub psi_tilde: Option<FormValue>,
    /// `⟨ψ̃|C̃^{⊗d}|ψ̃⟩ = d!·det_φ`.
    pub psi_tilde_identity: Option<IdentityCheck>,
    pub psi: Option<FormValue>,
    pub claimed_equality: Option<ClaimedEquality>,
    pub cross_validation: Vec<PathAgreement>,
    pub cross_validation_note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimCheckReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub state: StateDescription,
    pub status: ClaimStatus,
    pub notices: Vec<String>,
    pub min_pt_eigenvalue: f64,
    pub npt: SignFlag,
    /// Schmidt rank of the lowest PT eigenvector; the construction's degree.
    pub witness_rank: usize,
    /// See-saw estimate of the smallest witnessing Schmidt rank.
    pub minimal_rank_estimate: Option<usize>,
    pub construction: Option<Construction>,
    pub witness: WitnessReport,
    pub options: ClaimOptions,
    pub tolerances: Tolerances,
}

/// Full pipeline: witness report, witness frame, minor, `det_φ`, both bilinear
/// forms, and dense cross-checks where they fit.
pub fn claim_check(
    rho: &DensityMatrix,
    state: StateDescription,
    opts: &ClaimOptions,
) -> Result<ClaimCheckReport> {
    let tols = opts.witness.tolerances;
    let witness = witness_report(rho, &opts.witness)?;
    let mut notices = Vec::new();
    let mut report = ClaimCheckReport {
        schema_version: REPORT_SCHEMA_VERSION,
        tool_version: crate::VERSION.to_string(),
        state,
        status: ClaimStatus::NotApplicable,
        notices: Vec::new(),
        min_pt_eigenvalue: witness.min_pt_eigenvalue,
        npt: witness.npt,
        witness_rank: witness.schmidt.rank,
        minimal_rank_estimate: witness.minimal_rank_estimate,
        construction: None,
        witness: witness.clone(),
        options: *opts,
        tolerances: tols,
    };
    if !witness.npt.is_negative() {
        report.notices.push("not applicable: no NPT witness".into());
        return Ok(report);
    }
    let d = witness.schmidt.rank;
    if d < 2 {
        report
            .notices
            .push(format!("not applicable: witness Schmidt rank {d} below 2"));
        return Ok(report);
    }

    let frame = witness_frame(rho, &witness.schmidt)?;
    let ctilde = &frame.ctilde;
    let scale = scale_of(ctilde.matrix());
    let minor = minor_matrix(ctilde, d)?;
    let minor_hermitian_defect = hermitian_defect(&minor.entries);
    let lambda_form = IdentityCheck::new(
        minor.quadratic_form(&frame.lambda).re,
        witness.min_pt_eigenvalue,
        1e-10,
    );
    let det_phi_value = det_phi(&minor)?;
    let det_phi_lu = det_lu(&minor.entries)?;

    let tilde_cap = opts.max_degree.map_or(PSI_TILDE_MAX_DEGREE, |m| m.min(PSI_TILDE_MAX_DEGREE));
    let psi_cap = opts.max_degree.map_or(PSI_EVAL_MAX_DEGREE, |m| m.min(PSI_EVAL_MAX_DEGREE));
    let mut truncated = false;

    let (psi_tilde, psi_tilde_identity, psi_tilde_raw) = if d <= tilde_cap {
        let z = eval_psi_tilde_form(ctilde, d)?;
        let predicted = factorial(d) as f64 * det_phi_value.re;
        let check = IdentityCheck::new(z.re, predicted, 1e-9 * scale);
        (Some(FormValue::new(z, tols.negativity)), Some(check), Some(z))
    } else {
        truncated = true;
        notices.push(format!(
            "psi-tilde form skipped: degree {d} exceeds cap {tilde_cap}"
        ));
        (None, None, None)
    };

    let psi_raw = if d <= psi_cap {
        Some(eval_psi_form(ctilde, d)?)
    } else {
        truncated = true;
        notices.push(format!("psi form skipped: degree {d} exceeds cap {psi_cap}"));
        None
    };
    let psi = psi_raw.map(|z| FormValue::new(z, tols.negativity));

    let claimed_equality = match (psi_tilde_raw, psi_raw) {
        (Some(t), Some(p)) => {
            let order = (factorial(d) / 2) as u64;
            let predicted = order as f64 * t.re;
            let discrepancy = p.re - predicted;
            Some(ClaimedEquality {
                alternating_order: order,
                predicted_psi_value: predicted,
                psi_value: p.re,
                discrepancy,
                relative_discrepancy: discrepancy.abs() / predicted.abs().max(f64::MIN_POSITIVE),
                measured_ratio: p.re / t.re,
            })
        }
        _ => None,
    };

    let mut cross_validation = Vec::new();
    let mut cross_validation_note = None;
    let dense_dim = (ctilde.dim() as u128).checked_pow(d as u32);
    if !opts.dense_cross_check {
        cross_validation_note = Some("dense cross-check disabled".into());
    } else if dense_dim.is_none_or(|n| n > DENSE_CHECK_MAX_DIM as u128) {
        cross_validation_note = Some(format!(
            "dense cross-check skipped: (dimA·dimB)^d exceeds {DENSE_CHECK_MAX_DIM}"
        ));
    } else {
        if let Some(t) = psi_tilde_raw {
            let dense = dense_form(ctilde, &build_psi_tilde(d)?)?;
            cross_validation.push(PathAgreement {
                quantity: "psi_tilde".into(),
                matrix_free: t.re,
                dense: dense.re,
                defect: (t - dense).norm(),
            });
        }
        if let Some(p) = psi_raw {
            let dense = dense_form(ctilde, &build_psi(d)?)?;
            cross_validation.push(PathAgreement {
                quantity: "psi".into(),
                matrix_free: p.re,
                dense: dense.re,
                defect: (p - dense).norm(),
            });
        }
    }
    cross_validation.push(PathAgreement {
        quantity: "det_phi".into(),
        matrix_free: det_phi_value.re,
        dense: det_phi_lu.re,
        defect: (det_phi_value - det_phi_lu).norm(),
    });

    if witness.schmidt.degenerate {
        notices.push(
            "degenerate Schmidt coefficients: frame fixed by SVD order, then phase-normalized".into(),
        );
    }
    if let Some(est) = witness.minimal_rank_estimate {
        if est < d {
            notices.push(format!(
                "see-saw found negativity at Schmidt rank {est}, below the eigenvector witness rank {d}"
            ));
        }
    }

    report.status = if truncated {
        ClaimStatus::Truncated
    } else {
        ClaimStatus::Complete
    };
    report.notices.extend(notices);
    report.construction = Some(Construction {
        d,
        lambda: frame.lambda.clone(),
        degenerate_schmidt: witness.schmidt.degenerate,
        minor_hermitian_defect,
        lambda_form,
        det_phi: det_phi_value,
        det_phi_lu,
        det_phi_flag: SignFlag::classify(det_phi_value.re, tols.negativity),
        minor_matrix: minor,
        psi_tilde,
        psi_tilde_identity,
        psi,
        claimed_equality,
        cross_validation,
        cross_validation_note,
    });
    Ok(report)
}

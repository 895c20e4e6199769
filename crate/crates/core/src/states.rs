//! Density matrices, pure states and the fixture families used by the harness.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_defect, hermitian_eig, partial_transpose, BipartiteOperator};
use crate::{rng, tol, Matrix, Operator, Vector, C64};

/// Hermitian, unit-trace, positive semidefinite operator on `H_A ⊗ H_B`.
///
/// Serializes as `{"dimA", "dimB", "matrix"}` with the matrix row-major in the
/// composite-index convention; deserialization validates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Operator", into = "Operator")]
pub struct DensityMatrix {
    op: Operator,
}

impl DensityMatrix {
    pub fn new(op: Operator) -> Result<Self> {
        let report = validate_operator(&op);
        if !report.passed {
            let (what, magnitude) = report.worst_failure();
            return Err(Error::Validation { what, magnitude });
        }
        Ok(DensityMatrix { op })
    }

    pub fn from_matrix(dim_a: usize, dim_b: usize, matrix: Matrix) -> Result<Self> {
        Self::new(BipartiteOperator::new(dim_a, dim_b, matrix)?)
    }

    pub fn op(&self) -> &Operator {
        &self.op
    }

    pub fn matrix(&self) -> &Matrix {
        self.op.matrix()
    }

    pub fn dim_a(&self) -> usize {
        self.op.dim_a()
    }

    pub fn dim_b(&self) -> usize {
        self.op.dim_b()
    }

    pub fn partial_transpose(&self) -> Operator {
        partial_transpose(&self.op)
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        let m = self.matrix();
        m.iter().map(|z| z.norm_sqr()).sum()
    }
}

impl TryFrom<Operator> for DensityMatrix {
    type Error = Error;

    fn try_from(op: Operator) -> Result<Self> {
        DensityMatrix::new(op)
    }
}

impl From<DensityMatrix> for Operator {
    fn from(rho: DensityMatrix) -> Operator {
        rho.op
    }
}

/// Unit vector in `H_A ⊗ H_B`, amplitudes in the composite-index order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PureState {
    #[serde(rename = "dimA")]
    pub dim_a: usize,
    #[serde(rename = "dimB")]
    pub dim_b: usize,
    #[serde(with = "crate::json::vector")]
    pub amplitudes: Vector,
}

impl PureState {
    pub fn new(dim_a: usize, dim_b: usize, amplitudes: Vector) -> Result<Self> {
        check_len(dim_a, dim_b, &amplitudes)?;
        let defect = (amplitudes.norm() - 1.0).abs();
        if defect > tol::PURE_NORM {
            return Err(Error::Validation {
                what: "state vector is not normalized".into(),
                magnitude: defect,
            });
        }
        Ok(PureState {
            dim_a,
            dim_b,
            amplitudes,
        })
    }

    /// Rescale to unit norm.
    pub fn normalized(dim_a: usize, dim_b: usize, mut amplitudes: Vector) -> Result<Self> {
        check_len(dim_a, dim_b, &amplitudes)?;
        let n = amplitudes.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::arg("cannot normalize a zero vector"));
        }
        amplitudes.unscale_mut(n);
        Ok(PureState {
            dim_a,
            dim_b,
            amplitudes,
        })
    }

    /// `|k, k⟩` summed over `k < rank`, normalized.
    pub fn maximally_entangled(dim: usize, rank: usize) -> Result<Self> {
        if rank == 0 || rank > dim {
            return Err(Error::arg(format!("rank {rank} outside 1..={dim}")));
        }
        let mut v = Vector::zeros(dim * dim);
        for k in 0..rank {
            v[k * dim + k] = C64::new(1.0, 0.0);
        }
        Self::normalized(dim, dim, v)
    }

    /// `⟨ψ|X|ψ⟩`.
    pub fn expectation(&self, op: &Operator) -> Result<C64> {
        op.check_same_dims(self.dim_a, self.dim_b)?;
        Ok(self.amplitudes.dotc(&(op.matrix() * &self.amplitudes)))
    }

    pub fn projector(&self) -> Matrix {
        &self.amplitudes * self.amplitudes.adjoint()
    }
}

fn check_len(dim_a: usize, dim_b: usize, v: &Vector) -> Result<()> {
    if dim_a == 0 || dim_b == 0 || v.len() != dim_a * dim_b {
        return Err(Error::arg(format!(
            "vector of length {} does not fit {dim_a}⊗{dim_b}",
            v.len()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub hermitian_defect: f64,
    pub trace_defect: f64,
    /// Smallest eigenvalue of the Hermitian part.
    pub min_eigenvalue: f64,
    pub passed: bool,
    pub failures: Vec<String>,
}

impl ValidationReport {
    fn worst_failure(&self) -> (String, f64) {
        let what = self.failures.join("; ");
        let magnitude = self
            .hermitian_defect
            .max(self.trace_defect)
            .max((-self.min_eigenvalue).max(0.0));
        (what, magnitude)
    }
}

pub fn validate_operator(op: &Operator) -> ValidationReport {
    let m = op.matrix();
    let herm = hermitian_defect(m);
    let trace_defect = (m.trace() - C64::new(1.0, 0.0)).norm();
    let hermitian_part = (m + m.adjoint()).scale(0.5);
    let min_eigenvalue = hermitian_eig(&hermitian_part)
        .map(|e| e.min_value())
        .unwrap_or(f64::NAN);
    let mut failures = Vec::new();
    if herm > tol::HERMITIAN {
        failures.push(format!("Hermiticity defect {herm:e}"));
    }
    if trace_defect > tol::TRACE {
        failures.push(format!("trace defect {trace_defect:e}"));
    }
    if !(min_eigenvalue >= tol::MIN_EIGENVALUE) {
        failures.push(format!("negative eigenvalue {min_eigenvalue:e}"));
    }
    ValidationReport {
        hermitian_defect: herm,
        trace_defect,
        min_eigenvalue,
        passed: failures.is_empty(),
        failures,
    }
}

pub fn validate(rho: &DensityMatrix) -> ValidationReport {
    validate_operator(rho.op())
}

/// The swap `F = Σ |i,j⟩⟨j,i|` on `dim ⊗ dim`.
pub fn swap_operator(dim: usize) -> Matrix {
    let mut f = Matrix::zeros(dim * dim, dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            f[(i * dim + j, j * dim + i)] = C64::new(1.0, 0.0);
        }
    }
    f
}

pub fn maximally_mixed(dim_a: usize, dim_b: usize) -> Result<DensityMatrix> {
    let n = dim_a * dim_b;
    DensityMatrix::from_matrix(dim_a, dim_b, Matrix::identity(n, n).unscale(n as f64))
}

/// Projector onto `(|1,2⟩ - |2,1⟩)/√2`.
pub fn singlet() -> DensityMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut v = Vector::zeros(4);
    v[1] = C64::new(s, 0.0);
    v[2] = C64::new(-s, 0.0);
    DensityMatrix::from_matrix(2, 2, &v * v.adjoint()).expect("singlet is a valid state")
}

/// `(I + α·F)/(dim² + α·dim)`; NPT iff `α < -1/dim`.
pub fn werner(dim: usize, alpha: f64) -> Result<DensityMatrix> {
    if dim < 2 {
        return Err(Error::arg(format!("Werner state needs dim >= 2, got {dim}")));
    }
    if !(-1.0..=1.0).contains(&alpha) {
        return Err(Error::arg(format!("Werner parameter {alpha} outside [-1, 1]")));
    }
    let n = dim * dim;
    let m = (Matrix::identity(n, n) + swap_operator(dim).scale(alpha))
        .unscale((n as f64) + alpha * dim as f64);
    DensityMatrix::from_matrix(dim, dim, m)
}

/// `F·|Φ+⟩⟨Φ+| + (1-F)·(I - |Φ+⟩⟨Φ+|)/(dim² - 1)`.
pub fn isotropic(dim: usize, fidelity: f64) -> Result<DensityMatrix> {
    if dim < 2 {
        return Err(Error::arg(format!("isotropic state needs dim >= 2, got {dim}")));
    }
    if !(0.0..=1.0).contains(&fidelity) {
        return Err(Error::arg(format!("fidelity {fidelity} outside [0, 1]")));
    }
    let n = dim * dim;
    let phi = PureState::maximally_entangled(dim, dim)?.projector();
    let rest = (Matrix::identity(n, n) - &phi).unscale((n - 1) as f64);
    DensityMatrix::from_matrix(dim, dim, phi.scale(fidelity) + rest.scale(1.0 - fidelity))
}

/// Horodecki's one-parameter family of PPT entangled states on `3 ⊗ 3`, `0 < a < 1`.
pub fn horodecki_3x3(a: f64) -> Result<DensityMatrix> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::arg(format!("Horodecki parameter {a} outside (0, 1)")));
    }
    let mut m = Matrix::zeros(9, 9);
    let re = |x: f64| C64::new(x, 0.0);
    // |1,1⟩, |2,2⟩, |3,3⟩ block
    for &r in &[0, 4, 8] {
        for &s in &[0, 4, 8] {
            m[(r, s)] = re(a);
        }
    }
    for &k in &[1, 2, 3, 5, 7] {
        m[(k, k)] = re(a);
    }
    m[(6, 6)] = re((1.0 + a) / 2.0);
    m[(8, 8)] = re((1.0 + a) / 2.0);
    let off = (1.0 - a * a).sqrt() / 2.0;
    m[(6, 8)] = re(off);
    m[(8, 6)] = re(off);
    DensityMatrix::from_matrix(3, 3, m.unscale(8.0 * a + 1.0))
}

/// `G·G†/tr(G·G†)` for a seeded `(dimA·dimB) × rank` Gaussian `G` (see [`crate::rng`]).
pub fn random_density(dim_a: usize, dim_b: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    let n = dim_a * dim_b;
    if n == 0 {
        return Err(Error::arg("local dimensions must be positive"));
    }
    if rank == 0 || rank > n {
        return Err(Error::arg(format!("rank {rank} outside 1..={n}")));
    }
    let g = rng::gaussian_matrix(n, rank, &mut rng::seeded(seed));
    let gg = &g * g.adjoint();
    let herm = (&gg + gg.adjoint()).scale(0.5);
    let tr = herm.trace().re;
    DensityMatrix::from_matrix(dim_a, dim_b, herm.unscale(tr))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kron;

    fn pt_min(rho: &DensityMatrix) -> f64 {
        hermitian_eig(rho.partial_transpose().matrix()).unwrap().min_value()
    }

    #[test]
    fn singlet_properties() {
        let s = singlet();
        assert!((s.matrix().trace().re - 1.0).abs() < 1e-15);
        assert!((s.purity() - 1.0).abs() < 1e-14);
        assert!((pt_min(&s) + 0.5).abs() < 1e-12);
        assert!(validate(&s).passed);
    }

    #[test]
    fn werner_family() {
        let mixed = werner(3, 0.0).unwrap();
        assert!((mixed.matrix() - Matrix::identity(9, 9).unscale(9.0)).camax() < 1e-15);
        assert!((werner(2, -1.0).unwrap().matrix() - singlet().matrix()).camax() < 1e-15);
        assert!(pt_min(&werner(3, -0.9).unwrap()) < 0.0);
        // NPT threshold at α = -1/dim
        for dim in [2usize, 3, 4] {
            let t = -1.0 / dim as f64;
            assert!(pt_min(&werner(dim, t - 0.01).unwrap()) < -1e-10);
            assert!(pt_min(&werner(dim, t + 0.01).unwrap()) > 0.0);
        }
        assert!(werner(3, -1.5).is_err());
        assert!(werner(1, 0.0).is_err());
    }

    #[test]
    fn werner_swap_symmetry() {
        let f = swap_operator(3);
        for alpha in [-1.0, -0.4, 0.3, 1.0] {
            let rho = werner(3, alpha).unwrap();
            assert!((&f * rho.matrix() * &f - rho.matrix()).camax() < 1e-15);
        }
    }

    #[test]
    fn isotropic_family() {
        let mixed = isotropic(3, 1.0 / 9.0).unwrap();
        assert!((mixed.matrix() - Matrix::identity(9, 9).unscale(9.0)).camax() < 1e-15);
        let pure = isotropic(3, 1.0).unwrap();
        assert!((pure.purity() - 1.0).abs() < 1e-12);
        assert!(pt_min(&isotropic(3, 0.5).unwrap()) < 0.0);
        assert!(isotropic(3, 1.2).is_err());
    }

    #[test]
    fn isotropic_twirl_invariance() {
        let rho = isotropic(3, 0.6).unwrap();
        let mut g = rng::seeded(77);
        for _ in 0..10 {
            let u = rng::haar_unitary(3, &mut g);
            let ubar = u.map(|z| z.conj());
            let w = kron(&u, &ubar).unwrap();
            let twirled = &w * rho.matrix() * w.adjoint();
            assert!((twirled - rho.matrix()).camax() <= 1e-9);
        }
    }

    #[test]
    fn horodecki_is_ppt() {
        for k in 1..=9 {
            let rho = horodecki_3x3(k as f64 / 10.0).unwrap();
            assert!(validate(&rho).passed);
            assert!(pt_min(&rho) >= -1e-10);
        }
        assert!(horodecki_3x3(0.0).is_err());
        assert!(horodecki_3x3(1.0).is_err());
    }

    #[test]
    fn random_states() {
        for seed in 0..10 {
            assert!(validate(&random_density(2, 3, 1 + seed as usize % 6, seed).unwrap()).passed);
        }
        let pure = random_density(3, 3, 1, 5).unwrap();
        assert!((pure.purity() - 1.0).abs() < 1e-10);
        let a = serde_json::to_vec(&random_density(2, 2, 2, 42).unwrap()).unwrap();
        let b = serde_json::to_vec(&random_density(2, 2, 2, 42).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(random_density(2, 2, 5, 0).is_err());
        assert!(random_density(2, 2, 0, 0).is_err());
    }

    #[test]
    fn validation_failures() {
        let doubled = BipartiteOperator::new(2, 2, singlet().matrix().scale(2.0)).unwrap();
        let r = validate_operator(&doubled);
        assert!(!r.passed);
        assert!((r.trace_defect - 1.0).abs() < 1e-14);

        let mut m = singlet().matrix().clone();
        m[(0, 1)] += C64::new(1e-6, 0.0);
        let r = validate_operator(&BipartiteOperator::new(2, 2, m).unwrap());
        assert!(!r.passed);
        assert!((r.hermitian_defect - 1e-6).abs() < 1e-12);
        assert!(DensityMatrix::from_matrix(2, 2, Matrix::identity(4, 4)).is_err());
    }

    #[test]
    fn state_json_schema() {
        let s = singlet();
        let v: serde_json::Value = serde_json::to_value(&s).unwrap();
        assert_eq!(v["dimA"], 2);
        assert_eq!(v["dimB"], 2);
        assert!((v["matrix"][1][2][0].as_f64().unwrap() + 0.5).abs() < 1e-15);
        let back: DensityMatrix = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
        let bad = r#"{"dimA":2,"dimB":2,"matrix":[[[2,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]]]}"#;
        assert!(serde_json::from_str::<DensityMatrix>(bad).is_err());
    }

    #[test]
    fn pure_state_norm() {
        let v = Vector::from_element(4, C64::new(0.5, 0.0));
        assert!(PureState::new(2, 2, v.clone()).is_ok());
        assert!(PureState::new(2, 2, v.scale(1.1)).is_err());
        assert!(PureState::new(2, 3, v).is_err());
    }
}

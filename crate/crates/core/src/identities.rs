//! Batch checks of the forced identities: permutation group laws, the two
//! determinant routes, `Σ_{g,f} sign g·sign f·Π_t C[g(t),f(t)] = d!·det C`,
//! the local relation between `|ψ̃⟩` and `|ψ⟩`, and `λ(h) = δ_{e,h}`.

use serde::{Deserialize, Serialize};

use crate::construct::{check_lambda_identity, check_local_relation, signed_sum, LambdaCheck, LocalRelationCheck, IDENTITY_MAX_DEGREE};
use crate::error::{Error, Result};
use crate::linalg::{bilinear_perm_form, det_lu, det_perm_sum};
use crate::perm::{alternating, enumerate_perms, factorial, Permutation};
use crate::rng;
use crate::scalar::scale_of;

/// Largest degree for the exhaustive group-law check.
pub const GROUP_LAW_MAX_DEGREE: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupLawReport {
    pub d: usize,
    pub order: usize,
    pub alternating_order: usize,
    pub associativity: bool,
    pub identity: bool,
    pub inverse: bool,
    pub sign_homomorphism: bool,
    /// `A_d` is closed and invariant under conjugation by `S_d`.
    pub alternating_normal: bool,
    pub all_hold: bool,
}

/// Exhaustive check over all of `S_d`, `d ≤ 5`.
pub fn group_laws(d: usize) -> Result<GroupLawReport> {
    if d == 0 || d > GROUP_LAW_MAX_DEGREE {
        return Err(Error::size("group-law degree", d as u128, GROUP_LAW_MAX_DEGREE as u128));
    }
    let all = enumerate_perms(d)?;
    let evens = alternating(d)?;
    let e = Permutation::identity(d);
    let comp = |p: &Permutation, q: &Permutation| p.compose(q).expect("same degree");

    let mut associativity = true;
    for f in &all {
        for g in &all {
            let fg = comp(f, g);
            for h in &all {
                if comp(&fg, h) != comp(f, &comp(g, h)) {
                    associativity = false;
                }
            }
        }
    }
    let identity = all.iter().all(|f| comp(f, &e) == *f && comp(&e, f) == *f);
    let inverse = all.iter().all(|f| {
        let inv = f.inverse();
        comp(f, &inv) == e && comp(&inv, f) == e
    });
    let sign_homomorphism = all
        .iter()
        .all(|f| all.iter().all(|g| comp(f, g).sign() == f.sign() * g.sign()));
    let closed = evens
        .iter()
        .all(|f| evens.iter().all(|g| comp(f, g).is_even()));
    let conjugation = all
        .iter()
        .all(|g| evens.iter().all(|h| comp(&comp(g, h), &g.inverse()).is_even()));
    let alternating_normal = closed && conjugation && 2 * evens.len() == all.len().max(2);
    Ok(GroupLawReport {
        d,
        order: all.len(),
        alternating_order: evens.len(),
        all_hold: associativity && identity && inverse && sign_homomorphism && alternating_normal,
        associativity,
        identity,
        inverse,
        sign_homomorphism,
        alternating_normal,
    })
}

/// Worst case of a sampled numerical identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledCheck {
    pub name: String,
    pub samples: usize,
    pub max_defect: f64,
    /// Largest `defect / tolerance` over the samples.
    pub worst_ratio: f64,
    pub tolerance_rule: String,
    pub passed: bool,
}

struct Tracker {
    max_defect: f64,
    worst_ratio: f64,
}

impl Tracker {
    fn new() -> Self {
        Tracker {
            max_defect: 0.0,
            worst_ratio: 0.0,
        }
    }

    fn record(&mut self, defect: f64, tolerance: f64) {
        self.max_defect = self.max_defect.max(defect);
        let ratio = if defect.is_finite() { defect / tolerance } else { f64::INFINITY };
        self.worst_ratio = self.worst_ratio.max(ratio);
    }

    fn finish(self, name: &str, samples: usize, rule: &str) -> SampledCheck {
        SampledCheck {
            name: name.into(),
            samples,
            max_defect: self.max_defect,
            worst_ratio: self.worst_ratio,
            tolerance_rule: rule.into(),
            passed: self.worst_ratio <= 1.0,
        }
    }
}

/// `|det_perm_sum − det_lu| ≤ 1e-10·scale` on random complex `d × d` matrices.
pub fn check_det_routes(d: usize, samples: usize, seed: u64) -> Result<SampledCheck> {
    let mut g = rng::seeded_stream(seed, 1);
    let mut t = Tracker::new();
    for _ in 0..samples {
        let m = rng::gaussian_matrix(d, d, &mut g);
        let defect = (det_perm_sum(&m)? - det_lu(&m)?).norm();
        t.record(defect, 1e-10 * scale_of(&m));
    }
    Ok(t.finish("det_perm_sum_vs_det_lu", samples, "1e-10 * max(1, max|m_ij|)"))
}

/// `|det(AB) − det A·det B| ≤ 1e-9·scale(AB)` on random complex pairs.
pub fn check_det_product(d: usize, samples: usize, seed: u64) -> Result<SampledCheck> {
    let mut g = rng::seeded_stream(seed, 2);
    let mut t = Tracker::new();
    for _ in 0..samples {
        let a = rng::gaussian_matrix(d, d, &mut g);
        let b = rng::gaussian_matrix(d, d, &mut g);
        let ab = &a * &b;
        let defect = (det_lu(&ab)? - det_lu(&a)? * det_lu(&b)?).norm();
        t.record(defect, 1e-9 * scale_of(&ab));
    }
    Ok(t.finish("det_product_rule", samples, "1e-9 * max(1, max|(AB)_ij|)"))
}

/// `Σ_{g,f} sign g·sign f·Π_t C[g(t), f(t)] = d!·det C`, the left side
/// evaluated as the bilinear form of `Σ_f sign f |f⟩` in `C^{⊗d}`.
pub fn check_signed_sum_identity(d: usize, samples: usize, seed: u64) -> Result<SampledCheck> {
    let s = signed_sum(d)?;
    let mut g = rng::seeded_stream(seed, 3);
    let mut t = Tracker::new();
    let fact = factorial(d) as f64;
    for _ in 0..samples {
        let c = rng::gaussian_matrix(d, d, &mut g);
        let lhs = bilinear_perm_form(&c, &s, &s)?;
        let rhs = det_lu(&c)? * fact;
        t.record((lhs - rhs).norm(), 1e-9 * scale_of(&c));
    }
    Ok(t.finish("signed_sum_bilinear_identity", samples, "1e-9 * max(1, max|c_ij|)"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentitySuite {
    pub d: usize,
    pub samples: usize,
    pub seed: u64,
    pub group_laws: Option<GroupLawReport>,
    pub sampled: Vec<SampledCheck>,
    pub local_relation: LocalRelationCheck,
    pub lambda: LambdaCheck,
    pub all_passed: bool,
}

impl IdentitySuite {
    /// `(name, passed)` rows for display.
    pub fn matrix(&self) -> Vec<(String, bool)> {
        let mut rows = Vec::new();
        if let Some(g) = &self.group_laws {
            rows.push(("group_laws".to_string(), g.all_hold));
        }
        rows.extend(self.sampled.iter().map(|s| (s.name.clone(), s.passed)));
        rows.push(("local_relation".into(), self.local_relation.equal));
        rows.push(("lambda_delta".into(), self.lambda.all_hold));
        rows
    }
}

/// All checks at degree `2 ≤ d ≤ 6`; the group laws are included for `d ≤ 5`.
pub fn identity_suite(d: usize, samples: usize, seed: u64) -> Result<IdentitySuite> {
    if d < 2 {
        return Err(Error::arg(format!("identity suite needs d ≥ 2, got {d}")));
    }
    if d > IDENTITY_MAX_DEGREE {
        return Err(Error::size("identity suite degree", d as u128, IDENTITY_MAX_DEGREE as u128));
    }
    let group_laws = if d <= GROUP_LAW_MAX_DEGREE {
        Some(group_laws(d)?)
    } else {
        None
    };
    let sampled = vec![
        check_det_routes(d, samples, seed)?,
        check_det_product(d, samples, seed)?,
        check_signed_sum_identity(d, samples, seed)?,
    ];
    let local_relation = check_local_relation(d)?;
    let lambda = check_lambda_identity(d)?;
    let all_passed = group_laws.as_ref().is_none_or(|g| g.all_hold)
        && sampled.iter().all(|s| s.passed)
        && local_relation.equal
        && lambda.all_hold;
    Ok(IdentitySuite {
        d,
        samples,
        seed,
        group_laws,
        sampled,
        local_relation,
        lambda,
        all_passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_laws_hold() {
        for d in 1..=4 {
            let r = group_laws(d).unwrap();
            assert!(r.all_hold, "{r:?}");
            assert_eq!(r.order as u128, factorial(d));
        }
        assert!(group_laws(6).is_err());
    }

    #[test]
    fn suite_small_degrees() {
        for d in 2..=3 {
            let s = identity_suite(d, 10, 7).unwrap();
            assert!(s.all_passed, "{s:?}");
            assert_eq!(s.matrix().len(), 6);
        }
        assert!(identity_suite(1, 1, 0).is_err());
        assert!(matches!(identity_suite(7, 1, 0), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn suite_is_deterministic() {
        assert_eq!(identity_suite(3, 5, 9).unwrap(), identity_suite(3, 5, 9).unwrap());
    }
}

//! Numerical tolerances shared across the pipeline.
//!
//! Matrix-level tolerances are multiplied by [`crate::scalar::scale_of`] of
//! the operand; state-level tolerances are absolute.

use serde::{Deserialize, Serialize};

/// Maximum |H - H^dagger| entry accepted as Hermitian.
pub const HERMITIAN: f64 = 1e-10;
/// A value below `-NEGATIVITY` is a negativity; values in `(-NEGATIVITY, 0)` are inconclusive.
pub const NEGATIVITY: f64 = 1e-10;
/// Singular values above this count toward the Schmidt rank.
pub const SCHMIDT_RANK: f64 = 1e-9;
pub const TRACE: f64 = 1e-10;
pub const MIN_EIGENVALUE: f64 = -1e-10;
pub const PURE_NORM: f64 = 1e-12;
/// See-saw stops once an iteration improves the value by less than this.
pub const SEESAW_IMPROVEMENT: f64 = 1e-12;

/// Run-time tolerance set, recorded into every report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub hermitian: f64,
    pub negativity: f64,
    pub schmidt_rank: f64,
    pub seesaw_improvement: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            hermitian: HERMITIAN,
            negativity: NEGATIVITY,
            schmidt_rank: SCHMIDT_RANK,
            seesaw_improvement: SEESAW_IMPROVEMENT,
        }
    }
}

/// Three-way sign classification of a measured real quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignFlag {
    Negative,
    Inconclusive,
    Nonnegative,
}

impl SignFlag {
    pub fn classify(value: f64, tol_neg: f64) -> Self {
        if value < -tol_neg {
            SignFlag::Negative
        } else if value < 0.0 {
            SignFlag::Inconclusive
        } else {
            SignFlag::Nonnegative
        }
    }

    pub fn is_negative(self) -> bool {
        self == SignFlag::Negative
    }
}

use serde::{Deserialize, Serialize};

/// Numerical tolerances shared across the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Absolute distance below which two poles are the same pole.
    pub tol_pole: f64,
    /// Root-cancellation tolerance for numerator/denominator reduction.
    pub tol_root: f64,
    /// Evaluation tolerance for equality and reconstruction checks.
    pub tol_eval: f64,
    /// Relative singular-value cutoff for numerical rank.
    pub tol_rank: f64,
    /// Relative cutoff for the support of residue vectors.
    pub tol_orth: f64,
    /// Relative cutoff for structural nonzeros.
    pub tol_struct: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            tol_pole: 1e-6,
            tol_root: 1e-8,
            tol_eval: 1e-8,
            tol_rank: 1e-8,
            tol_orth: 1e-8,
            tol_struct: 1e-9,
        }
    }
}

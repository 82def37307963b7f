//! Per-level summary shared by both solution routes.

use serde::Serialize;

/// Which route produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Bethe,
    Lie,
}

/// One quasi-exactly solvable level: its energy and the admissible couplings
/// `v2` (at most `n + 1` of them).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QesLevel {
    pub n: usize,
    pub energy: f64,
    pub v2_values: Vec<f64>,
    pub provenance: Vec<Method>,
}

impl QesLevel {
    pub fn new(n: usize, energy: f64, mut v2_values: Vec<f64>, method: Method) -> Self {
        v2_values.sort_by(f64::total_cmp);
        let provenance = vec![method; v2_values.len()];
        Self {
            n,
            energy,
            v2_values,
            provenance,
        }
    }

    /// Index of the value within `rel_tol · max(1, |v2|)` of `v2`.
    pub fn position(&self, v2: f64, rel_tol: f64) -> Option<usize> {
        self.v2_values
            .iter()
            .position(|&v| (v - v2).abs() <= rel_tol * v2.abs().max(1.0))
    }

    /// True if every value of `self` has a partner in `other`.
    pub fn is_subset_of(&self, other: &QesLevel, rel_tol: f64) -> bool {
        self.v2_values
            .iter()
            .all(|&v| other.position(v, rel_tol).is_some())
    }
}

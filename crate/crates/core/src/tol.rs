//! Numerical tolerances used throughout the pipeline.

/// The four knobs exposed to callers.
///
/// `cluster` is a *base* value: wherever eigenvalues of a matrix `M` are
/// grouped, the effective tolerance is `cluster * max(1, ||M||)`.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Relative residual allowed on eigendecompositions and idempotent
    /// identities.
    pub eig: f64,
    /// Norm below which a vector counts as zero during orthogonalization.
    pub rank: f64,
    /// Base tolerance for grouping near-equal eigenvalues.
    pub cluster: f64,
    /// Residual allowed on module norm formulas and identities.
    pub module: f64,
    /// Relative tolerance for equality tests in the classification.
    pub class: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eig: 1e-10,
            rank: 1e-8,
            cluster: 1e-7,
            module: 1e-8,
            class: 1e-9,
        }
    }
}

impl Tolerances {
    /// Effective clustering tolerance for a matrix of the given norm.
    pub fn cluster_for(&self, matrix_norm: f64) -> f64 {
        self.cluster * matrix_norm.max(1.0)
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpectralError};

/// Relative tolerances used throughout the toolkit.
///
/// All values are relative to the Frobenius norm of the matrix at hand;
/// call sites multiply by the norm to obtain absolute thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Eigenpair residual bound for the Hermitian solver.
    pub tol_eig: f64,
    /// Orthonormality (Gram matrix) residual bound.
    pub tol_orth: f64,
    /// Schur reconstruction residual bound.
    pub tol_schur: f64,
    /// Threshold below which a real part counts as zero.
    pub tol_zero: f64,
    /// Radius used when clustering Schur diagonal entries into eigenvalues.
    pub cluster_radius: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            tol_eig: 1e-10,
            tol_orth: 1e-10,
            tol_schur: 1e-12,
            tol_zero: 1e-10,
            cluster_radius: 1e-8,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("tol_eig", self.tol_eig),
            ("tol_orth", self.tol_orth),
            ("tol_schur", self.tol_schur),
            ("tol_zero", self.tol_zero),
            ("cluster_radius", self.cluster_radius),
        ];
        for (name, value) in fields {
            if !(value > 0.0) || !value.is_finite() {
                return Err(SpectralError::InvalidTolerance(format!(
                    "{name} must be strictly positive and finite, got {value}"
                )));
            }
        }
        if self.cluster_radius < self.tol_eig {
            return Err(SpectralError::InvalidTolerance(format!(
                "cluster_radius ({}) must be at least tol_eig ({})",
                self.cluster_radius, self.tol_eig
            )));
        }
        Ok(())
    }
}

use thiserror::Error;

/// Errors shared across the matrix, operator and verification layers.
#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("matrix is not Hermitian: relative asymmetry {residual:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { residual: f64, tolerance: f64 },

    #[error("frame is not orthonormal: Gram residual {residual:.3e} exceeds {tolerance:.3e}")]
    NotOrthonormal { residual: f64, tolerance: f64 },

    #[error("eigenvalue iteration did not converge within {iterations} iterations ({context})")]
    NoConvergence { iterations: usize, context: String },

    #[error("bad shape: {0}")]
    BadShape(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("tilt angle is singular: |sin alpha| = {sin_alpha:.3e} is below 1e-12")]
    AlphaSingular { sin_alpha: f64 },

    #[error("degenerate sector: {0}")]
    SectorDegenerate(String),

    #[error(
        "adjacent Schur swap at position {position} is ill-conditioned: \
         residual {residual:.3e} exceeds {limit:.3e}"
    )]
    SwapIllConditioned { position: usize, residual: f64, limit: f64 },

    #[error("moment order gamma = {gamma} is outside the admissible range ({requirement})")]
    GammaOutOfRange { gamma: f64, requirement: String },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("invalid tolerance configuration: {0}")]
    InvalidTolerance(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, SpectralError>;

//! Numerical toolkit for complex spectra of non-self-adjoint
//! Schrödinger-type operators.
//!
//! The crate builds finite-difference discretizations and abstract matrix
//! ensembles, computes their complex spectra with hand-rolled dense
//! eigensolvers, and turns trace inequalities relating the eigenvalues of an
//! operator to those of its Hermitian part into executable certificates:
//! moment bounds of Lieb-Thirring type, Ky Fan variational experiments,
//! sector-localization statements and resonance moment estimates.

pub mod error;
pub mod tolerance;
pub mod matrix;
pub mod eigen;
pub mod operators;
pub mod functionals;
pub mod verify;

pub use error::{Result, SpectralError};
pub use matrix::ComplexMatrix;
pub use tolerance::ToleranceConfig;

pub use eigen::{
    cluster_spectrum, compute_spectrum, hermitian_eigen, hermitian_eigenvalues,
    random_orthonormal_frame, schur, schur_reorder, schur_with_options, HermitianSpectrum,
    OrthonormalFrame, SchurForm, SchurOptions, Spectrum,
};

pub use num_complex::Complex64;

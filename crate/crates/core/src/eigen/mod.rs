//! Dense complex eigensolvers: Hermitian (tridiagonalization + implicit-shift
//! QL), general (Hessenberg + shifted QR into Schur form), Schur reordering,
//! eigenvalue clustering, and orthonormal frame sampling.

pub mod frame;
pub mod hermitian;
pub mod reorder;
pub mod schur;
pub mod spectrum;
pub mod tridiagonal;

pub use frame::{random_orthonormal_frame, random_orthonormal_frame_from, OrthonormalFrame};
pub use hermitian::{hermitian_eigen, hermitian_eigenvalues, HermitianSpectrum};
pub use reorder::schur_reorder;
pub use schur::{schur, schur_with_options, SchurForm, SchurOptions};
pub use spectrum::{cluster_spectrum, compute_spectrum, Spectrum};
pub use tridiagonal::tridiagonal_eigenvalues;

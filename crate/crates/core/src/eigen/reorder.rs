use num_complex::Complex64;

use crate::error::{Result, SpectralError};
use crate::matrix::ComplexMatrix;
use crate::tolerance::ToleranceConfig;

use super::schur::SchurForm;

/// Swap the adjacent diagonal entries t[k][k] and t[k+1][k+1] of an upper
/// triangular matrix by a unitary similarity, updating Q along.
///
/// The rotation's first column is the normalized eigenvector of the 2x2
/// block for the trailing eigenvalue, which moves it to the leading slot.
/// For 1x1 complex blocks the construction is unconditionally stable; the
/// sub-entry left behind is recorded and returned as the swap residual.
fn swap_adjacent(t: &mut ComplexMatrix, q: &mut ComplexMatrix, k: usize) -> f64 {
    let t11 = t[(k, k)];
    let t12 = t[(k, k + 1)];
    let t22 = t[(k + 1, k + 1)];

    let x1 = t12;
    let x2 = t22 - t11;
    let norm = (x1.norm_sqr() + x2.norm_sqr()).sqrt();
    if norm == 0.0 {
        // Equal eigenvalues and zero coupling: nothing to move.
        return 0.0;
    }
    let g11 = x1 / norm;
    let g21 = x2 / norm;
    // G = [[g11, -conj(g21)], [g21, conj(g11)]] is unitary.
    let g12 = -g21.conj();
    let g22 = g11.conj();

    let n = t.dim();
    // T <- G† T (rows k, k+1).
    for j in 0..n {
        let u = t[(k, j)];
        let v = t[(k + 1, j)];
        t[(k, j)] = g11.conj() * u + g21.conj() * v;
        t[(k + 1, j)] = g12.conj() * u + g22.conj() * v;
    }
    // T <- T G (columns k, k+1).
    for r in 0..n {
        let u = t[(r, k)];
        let v = t[(r, k + 1)];
        t[(r, k)] = u * g11 + v * g21;
        t[(r, k + 1)] = u * g12 + v * g22;
    }
    // Q <- Q G.
    for r in 0..q.dim() {
        let u = q[(r, k)];
        let v = q[(r, k + 1)];
        q[(r, k)] = u * g11 + v * g21;
        q[(r, k + 1)] = u * g12 + v * g22;
    }

    let leak = t[(k + 1, k)].norm();
    t[(k + 1, k)] = Complex64::ZERO;
    leak
}

/// Reorder a Schur form so every selected eigenvalue appears on the leading
/// diagonal positions, by repeated adjacent swaps.
///
/// Fails with `SwapIllConditioned` if a swap leaves a subdiagonal residue
/// larger than 10 tol_schur ||T||.
pub fn schur_reorder(
    s: &SchurForm,
    tol: &ToleranceConfig,
    select: impl Fn(Complex64) -> bool,
) -> Result<SchurForm> {
    let mut t = s.t.clone();
    let mut q = s.q.clone();
    let n = t.dim();
    let limit = 10.0 * tol.tol_schur * t.frobenius_norm().max(f64::MIN_POSITIVE);

    let mut target = 0usize;
    for i in 0..n {
        if select(t[(i, i)]) {
            for j in (target..i).rev() {
                let leak = swap_adjacent(&mut t, &mut q, j);
                if leak > limit {
                    return Err(SpectralError::SwapIllConditioned {
                        position: j,
                        residual: leak,
                        limit,
                    });
                }
            }
            target += 1;
        }
    }
    Ok(SchurForm { q, t })
}

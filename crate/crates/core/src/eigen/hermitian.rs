use num_complex::Complex64;

use crate::error::{Result, SpectralError};
use crate::matrix::ComplexMatrix;
use crate::tolerance::ToleranceConfig;

/// Eigendecomposition of a Hermitian matrix: real eigenvalues in ascending
/// order, eigenvector columns orthonormal.
#[derive(Debug, Clone)]
pub struct HermitianSpectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianSpectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }
}

fn phase(z: Complex64) -> Complex64 {
    let m = z.norm();
    if m == 0.0 {
        Complex64::ONE
    } else {
        z / m
    }
}

fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Hermitian tridiagonalization by Householder reflections.
///
/// Returns (diagonal, real nonnegative off-diagonal, accumulated unitary Q)
/// with Q† H Q tridiagonal. Off-diagonal phases are folded into Q so the
/// reduced matrix is real symmetric.
fn tridiagonalize(h: &ComplexMatrix) -> (Vec<f64>, Vec<f64>, ComplexMatrix) {
    let n = h.dim();
    let mut a = h.clone();
    let mut q = ComplexMatrix::identity(n);

    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let mut x = vec![Complex64::ZERO; m];
        for i in 0..m {
            x[i] = a[(k + 1 + i, k)];
        }
        let xnorm = vec_norm(&x);
        if xnorm == 0.0 {
            continue;
        }
        let beta = -phase(x[0]) * xnorm;
        let mut v = x;
        v[0] -= beta;
        let vnorm = vec_norm(&v);
        if vnorm <= f64::EPSILON * xnorm {
            // Column already reduced.
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }

        // Column k and its mirror.
        a[(k + 1, k)] = beta;
        a[(k, k + 1)] = beta.conj();
        for i in 2..=m {
            a[(k + i, k)] = Complex64::ZERO;
            a[(k, k + i)] = Complex64::ZERO;
        }

        // Two-sided Hermitian update of the trailing block:
        // B <- B - v w† - w v† with p = 2 B v, w = p - (v† p) v.
        let mut p = vec![Complex64::ZERO; m];
        for i in 0..m {
            let mut acc = Complex64::ZERO;
            for j in 0..m {
                acc += a[(k + 1 + i, k + 1 + j)] * v[j];
            }
            p[i] = 2.0 * acc;
        }
        let mu: Complex64 = v.iter().zip(p.iter()).map(|(vi, pi)| vi.conj() * pi).sum();
        let w: Vec<Complex64> = p
            .iter()
            .zip(v.iter())
            .map(|(pi, vi)| pi - mu * vi)
            .collect();
        for i in 0..m {
            for j in 0..m {
                let delta = v[i] * w[j].conj() + w[i] * v[j].conj();
                a[(k + 1 + i, k + 1 + j)] -= delta;
            }
        }

        // Q <- Q (I - 2 v v†) on the trailing columns.
        for r in 0..n {
            let mut acc = Complex64::ZERO;
            for j in 0..m {
                acc += q[(r, k + 1 + j)] * v[j];
            }
            let acc2 = 2.0 * acc;
            for j in 0..m {
                let vj = v[j].conj();
                q[(r, k + 1 + j)] -= acc2 * vj;
            }
        }
    }

    // Fold off-diagonal phases into Q so the tridiagonal matrix is real.
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n.saturating_sub(1)];
    let mut col_phase = vec![Complex64::ONE; n];
    for i in 0..n {
        d[i] = a[(i, i)].re;
    }
    for k in 0..n.saturating_sub(1) {
        // The similarity by diag(p) maps entry (k+1,k) to conj(p_{k+1}) t_k p_k;
        // p_{k+1} = p_k sign(t_k) turns it into |t_k|.
        let t = a[(k + 1, k)];
        e[k] = t.norm();
        col_phase[k + 1] = col_phase[k] * phase(t);
    }
    for j in 0..n {
        if col_phase[j] != Complex64::ONE {
            for r in 0..n {
                q[(r, j)] = q[(r, j)] * col_phase[j];
            }
        }
    }

    (d, e, q)
}

/// Implicit-shift QL iteration on a real symmetric tridiagonal matrix,
/// accumulating the (complex) transformation when `z` is provided.
///
/// Classic EISPACK/JAMA tql2 recurrence with a global sweep cap.
fn tql2(
    d: &mut [f64],
    e: &mut [f64],
    mut z: Option<&mut ComplexMatrix>,
    sweep_cap: usize,
) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    // e is used with the JAMA convention: e[i] couples i and i+1, e[n-1] = 0.
    let mut ework = vec![0.0; n];
    ework[..n - 1].copy_from_slice(&e[..n - 1]);

    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let mut total_sweeps = 0usize;

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + ework[l].abs());
        loop {
            let mut m = l;
            while m < n - 1 {
                if ework[m].abs() <= eps * tst1 {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            total_sweeps += 1;
            if total_sweeps > sweep_cap {
                return Err(SpectralError::NoConvergence {
                    iterations: total_sweeps,
                    context: "symmetric tridiagonal QL".into(),
                });
            }

            let g = d[l];
            let mut p = (d[l + 1] - g) / (2.0 * ework[l]);
            let mut r = p.hypot(1.0);
            if p < 0.0 {
                r = -r;
            }
            d[l] = ework[l] / (p + r);
            d[l + 1] = ework[l] * (p + r);
            let dl1 = d[l + 1];
            let h = g - d[l];
            for i in (l + 2)..n {
                d[i] -= h;
            }
            f += h;

            p = d[m];
            let mut c = 1.0;
            let mut c2 = c;
            let mut c3 = c;
            let el1 = ework[l + 1];
            let mut s = 0.0;
            let mut s2 = 0.0;
            for i in (l..m).rev() {
                c3 = c2;
                c2 = c;
                s2 = s;
                let gg = c * ework[i];
                let hh = c * p;
                r = p.hypot(ework[i]);
                ework[i + 1] = s * r;
                s = ework[i] / r;
                c = p / r;
                p = c * d[i] - s * gg;
                d[i + 1] = hh + s * (c * gg + s * d[i]);

                if let Some(zm) = z.as_deref_mut() {
                    for k in 0..zm.dim() {
                        let hz = zm[(k, i + 1)];
                        zm[(k, i + 1)] = s * zm[(k, i)] + c * hz;
                        zm[(k, i)] = c * zm[(k, i)] - s * hz;
                    }
                }
            }
            p = -s * s2 * c3 * el1 * ework[l] / dl1;
            ework[l] = s * p;
            d[l] = c * p;

            if ework[l].abs() <= eps * tst1 {
                break;
            }
        }
        d[l] += f;
        ework[l] = 0.0;
    }

    // Ascending order; permute eigenvector columns along.
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        let mut p = d[i];
        for j in (i + 1)..n {
            if d[j] < p {
                k = j;
                p = d[j];
            }
        }
        if k != i {
            d.swap(i, k);
            if let Some(zm) = z.as_deref_mut() {
                for r in 0..zm.dim() {
                    let t = zm[(r, i)];
                    zm[(r, i)] = zm[(r, k)];
                    zm[(r, k)] = t;
                }
            }
        }
    }
    Ok(())
}

fn check_hermitian(h: &ComplexMatrix, tol: &ToleranceConfig) -> Result<()> {
    let norm = h.frobenius_norm();
    let defect = h.hermitian_defect();
    if defect > tol.tol_orth * norm.max(1.0) {
        return Err(SpectralError::NotHermitian {
            residual: defect / norm.max(1.0),
            tolerance: tol.tol_orth,
        });
    }
    Ok(())
}

/// True when `h` is Hermitian tridiagonal, in which case the Householder
/// phase can be skipped entirely.
fn hermitian_tridiagonal_bands(h: &ComplexMatrix) -> Option<(Vec<f64>, Vec<f64>, Vec<Complex64>)> {
    if !h.is_tridiagonal() {
        return None;
    }
    let n = h.dim();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n.saturating_sub(1)];
    let mut phases = vec![Complex64::ONE; n];
    for i in 0..n {
        d[i] = h[(i, i)].re;
    }
    for k in 0..n.saturating_sub(1) {
        let sub = h[(k + 1, k)];
        e[k] = sub.norm();
        phases[k + 1] = phases[k] * phase(sub);
    }
    Some((d, e, phases))
}

/// Full Hermitian eigendecomposition.
///
/// Householder tridiagonalization followed by implicit-shift QL; direct QL
/// when the input is already tridiagonal. Sweep cap is 40 n.
pub fn hermitian_eigen(h: &ComplexMatrix, tol: &ToleranceConfig) -> Result<HermitianSpectrum> {
    check_hermitian(h, tol)?;
    let n = h.dim();
    let hsym = h.symmetric_part();

    let (mut d, mut e, mut q) = match hermitian_tridiagonal_bands(&hsym) {
        Some((d, e, phases)) => {
            let mut q = ComplexMatrix::zeros(n);
            for j in 0..n {
                q[(j, j)] = phases[j];
            }
            (d, e, q)
        }
        None => tridiagonalize(&hsym),
    };
    tql2(&mut d, &mut e, Some(&mut q), 40 * n.max(1))?;
    Ok(HermitianSpectrum { eigenvalues: d, eigenvectors: q })
}

/// Eigenvalues only, ascending. Skips eigenvector accumulation, which makes
/// the tridiagonal case O(n^2).
pub fn hermitian_eigenvalues(h: &ComplexMatrix, tol: &ToleranceConfig) -> Result<Vec<f64>> {
    check_hermitian(h, tol)?;
    let n = h.dim();
    let (mut d, mut e) = match hermitian_tridiagonal_bands(&h.symmetric_part()) {
        Some((d, e, _)) => (d, e),
        None => {
            let (d, e, _) = tridiagonalize(&h.symmetric_part());
            (d, e)
        }
    };
    tql2(&mut d, &mut e, None, 40 * n.max(1))?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn residual(h: &ComplexMatrix, s: &HermitianSpectrum) -> f64 {
        let n = h.dim();
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let v: Vec<Complex64> = (0..n).map(|r| s.eigenvectors[(r, k)]).collect();
            let hv = h.matvec(&v);
            let r: f64 = hv
                .iter()
                .zip(v.iter())
                .map(|(a, b)| (a - s.eigenvalues[k] * b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            worst = worst.max(r);
        }
        worst
    }

    fn gram_defect(s: &HermitianSpectrum) -> f64 {
        let q = &s.eigenvectors;
        let g = q.adjoint().matmul(q).unwrap();
        let n = q.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { Complex64::ONE } else { Complex64::ZERO };
                worst = worst.max((g[(i, j)] - expect).norm());
            }
        }
        worst
    }

    #[test]
    fn diagonal_input() {
        let h = ComplexMatrix::diagonal(&[c(2.0, 0.0), c(-1.0, 0.0)]);
        let s = hermitian_eigen(&h, &ToleranceConfig::default()).unwrap();
        assert!((s.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn pauli_y_like() {
        // [[0, i], [-i, 0]] has characteristic polynomial l^2 - 1.
        let h = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, -1.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let s = hermitian_eigen(&h, &ToleranceConfig::default()).unwrap();
        assert!((s.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] - 1.0).abs() < 1e-14);
        assert!(residual(&h, &s) < 1e-13);
    }

    #[test]
    fn two_by_two_closed_form() {
        let h = ComplexMatrix::from_rows(&[
            vec![c(-1.0, 0.0), c(5.0, 0.0)],
            vec![c(5.0, 0.0), c(-2.0, 0.0)],
        ])
        .unwrap();
        let s = hermitian_eigen(&h, &ToleranceConfig::default()).unwrap();
        let lo = (-3.0 - 101f64.sqrt()) / 2.0;
        let hi = (-3.0 + 101f64.sqrt()) / 2.0;
        assert!((s.eigenvalues[0] - lo).abs() < 1e-12);
        assert!((s.eigenvalues[1] - hi).abs() < 1e-12);
    }

    #[test]
    fn random_hermitian_residual_and_orthogonality() {
        use rand::SeedableRng;
        use rand_distr::{Distribution, StandardNormal};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for n in [3usize, 7, 16, 25] {
            let raw = ComplexMatrix::from_fn(n, |_, _| {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                c(re, im)
            });
            let h = raw.symmetric_part();
            let s = hermitian_eigen(&h, &ToleranceConfig::default()).unwrap();
            let norm = h.frobenius_norm();
            assert!(residual(&h, &s) < 1e-12 * norm.max(1.0), "residual too large at n={n}");
            assert!(gram_defect(&s) < 1e-12, "gram defect too large at n={n}");
            for w in s.eigenvalues.windows(2) {
                assert!(w[0] <= w[1]);
            }
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(
            hermitian_eigen(&m, &ToleranceConfig::default()),
            Err(SpectralError::NotHermitian { .. })
        ));
    }

    #[test]
    fn eigenvalues_only_matches_full_solver() {
        use rand::SeedableRng;
        use rand_distr::{Distribution, StandardNormal};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let raw = ComplexMatrix::from_fn(12, |_, _| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            c(re, im)
        });
        let h = raw.symmetric_part();
        let tol = ToleranceConfig::default();
        let full = hermitian_eigen(&h, &tol).unwrap();
        let vals = hermitian_eigenvalues(&h, &tol).unwrap();
        for (a, b) in full.eigenvalues.iter().zip(vals.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn tridiagonal_fast_path_agrees_with_dense() {
        // Hermitian tridiagonal with complex off-diagonals.
        let n = 30;
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = c(i as f64 * 0.3 - 2.0, 0.0);
            if i + 1 < n {
                let off = c(0.7, 0.4 * (i as f64).sin());
                m[(i, i + 1)] = off;
                m[(i + 1, i)] = off.conj();
            }
        }
        let tol = ToleranceConfig::default();
        let s = hermitian_eigen(&m, &tol).unwrap();
        assert!(residual(&m, &s) < 1e-12 * m.frobenius_norm());
        assert!(gram_defect(&s) < 1e-12);

        // Dense route forced by adding an explicit zero that breaks tridiagonal
        // structure detection without changing the matrix.
        let mut dense = m.clone();
        dense[(0, 2)] = c(1e-300, 0.0);
        dense[(2, 0)] = c(1e-300, 0.0);
        let s2 = hermitian_eigen(&dense, &tol).unwrap();
        for (a, b) in s.eigenvalues.iter().zip(s2.eigenvalues.iter()) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}

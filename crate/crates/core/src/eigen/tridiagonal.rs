use num_complex::Complex64;
use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Result, SpectralError};
use crate::matrix::ComplexMatrix;
use crate::tolerance::ToleranceConfig;

/// Eigenvalues of a complex tridiagonal matrix in O(n^2), each paired with a
/// certified eigenpair residual computed by inverse iteration on the original
/// matrix.
///
/// The matrix is split at decoupled off-diagonal products, each block is
/// symmetrized by an implicit diagonal similarity, and a rotation-based QL
/// iteration in complex arithmetic delivers the eigenvalues. The residual
/// certificates are the correctness gate: any failure rejects the whole
/// computation so the caller can fall back to the dense Schur path.
pub fn tridiagonal_eigenvalues(
    a: &ComplexMatrix,
    tol: &ToleranceConfig,
) -> Result<Vec<(Complex64, f64)>> {
    let n = a.dim();
    let (diag, sub, sup) = a.tridiagonal_bands();

    // Row-sum scale of the full matrix, used for residual thresholds.
    let mut scale: f64 = 0.0;
    for i in 0..n {
        let mut row = diag[i].norm();
        if i > 0 {
            row += sub[i - 1].norm();
        }
        if i + 1 < n {
            row += sup[i].norm();
        }
        scale = scale.max(row);
    }
    let scale = scale.max(f64::MIN_POSITIVE);

    let mut eigenvalues: Vec<Complex64> = Vec::with_capacity(n);
    let mut start = 0usize;
    for end in 0..n {
        let decoupled = end + 1 == n || sub[end] * sup[end] == Complex64::ZERO;
        if !decoupled {
            continue;
        }
        // Block start..=end. Eigenvalues of a block-triangular matrix are the
        // union over blocks, so one-sided zero couplings split too.
        let m = end - start + 1;
        let mut d: Vec<Complex64> = diag[start..=end].to_vec();
        if m == 1 {
            eigenvalues.push(d[0]);
        } else {
            // Diagonal similarity with off-diagonals sqrt(sub * sup).
            let mut e: Vec<Complex64> = (start..end)
                .map(|j| (sub[j] * sup[j]).sqrt())
                .collect();
            complex_symmetric_ql(&mut d, &mut e, 40 * m)?;
            eigenvalues.extend_from_slice(&d);
        }
        start = end + 1;
    }

    // Certify every eigenvalue against the original matrix.
    let threshold = (tol.tol_eig * scale).max(1e4 * n as f64 * f64::EPSILON * scale);
    let mut out = Vec::with_capacity(n);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_cafe);
    let b: Vec<Complex64> = (0..n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im)
        })
        .collect();
    for &lambda in &eigenvalues {
        let res = eigenpair_residual(&diag, &sub, &sup, lambda, &b, scale);
        if !(res <= threshold) {
            return Err(SpectralError::NoConvergence {
                iterations: 0,
                context: format!(
                    "tridiagonal eigenvalue residual {res:.3e} above certificate threshold {threshold:.3e}"
                ),
            });
        }
        out.push((lambda, res));
    }
    out.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    Ok(out)
}

/// QL iteration with implicit shift on a complex symmetric tridiagonal
/// matrix. The rotations satisfy c^2 + s^2 = 1 with complex c, s; breakdown
/// (near-cancellation in the rotation norm) aborts.
fn complex_symmetric_ql(d: &mut [Complex64], e: &mut [Complex64], sweep_cap: usize) -> Result<()> {
    let n = d.len();
    let mut ework = vec![Complex64::ZERO; n];
    ework[..n - 1].copy_from_slice(&e[..n - 1]);

    let eps = f64::EPSILON;
    let mut total_sweeps = 0usize;
    // Accumulated shift; converged entries get it added back.
    let mut f = Complex64::ZERO;
    let mut tst1: f64 = 0.0;

    for l in 0..n {
        tst1 = tst1.max(d[l].norm() + ework[l].norm());
        loop {
            let mut m = l;
            while m < n - 1 {
                if ework[m].norm() <= eps * tst1 {
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
                    context: "complex symmetric tridiagonal QL".into(),
                });
            }

            // Wilkinson-style shift from the leading 2x2 of the block.
            let g = d[l];
            let p = (d[l + 1] - g) / (2.0 * ework[l]);
            let mut r = (p * p + Complex64::ONE).sqrt();
            if (p - r).norm() > (p + r).norm() {
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

            let mut pp = d[m];
            let mut c = Complex64::ONE;
            let mut c2 = c;
            let mut c3 = c;
            let el1 = ework[l + 1];
            let mut s = Complex64::ZERO;
            let mut s2 = Complex64::ZERO;
            for i in (l..m).rev() {
                c3 = c2;
                c2 = c;
                s2 = s;
                let gg = c * ework[i];
                let hh = c * pp;
                let rr = (pp * pp + ework[i] * ework[i]).sqrt();
                if rr.norm() <= 1e-8 * (pp.norm() + ework[i].norm()) {
                    return Err(SpectralError::NoConvergence {
                        iterations: total_sweeps,
                        context: "complex rotation breakdown".into(),
                    });
                }
                ework[i + 1] = s * rr;
                s = ework[i] / rr;
                c = pp / rr;
                pp = c * d[i] - s * gg;
                d[i + 1] = hh + s * (c * gg + s * d[i]);
            }
            let pfin = -s * s2 * c3 * el1 * ework[l] / dl1;
            ework[l] = s * pfin;
            d[l] = c * pfin;

            if ework[l].norm() <= eps * tst1 {
                break;
            }
        }
        d[l] += f;
        ework[l] = Complex64::ZERO;
    }
    Ok(())
}

/// Residual ||T v - lambda v|| / ||v|| after two inverse-iteration steps,
/// solved with a pivoted tridiagonal LU.
fn eigenpair_residual(
    diag: &[Complex64],
    sub: &[Complex64],
    sup: &[Complex64],
    lambda: Complex64,
    b: &[Complex64],
    scale: f64,
) -> f64 {
    let n = diag.len();
    let mut v = b.to_vec();
    normalize(&mut v);
    for _ in 0..2 {
        match solve_shifted(diag, sub, sup, lambda, &v, scale) {
            Some(mut x) => {
                normalize(&mut x);
                v = x;
            }
            None => break,
        }
    }
    // || (T - lambda) v ||.
    let mut acc = 0.0;
    for i in 0..n {
        let mut y = (diag[i] - lambda) * v[i];
        if i > 0 {
            y += sub[i - 1] * v[i - 1];
        }
        if i + 1 < n {
            y += sup[i] * v[i + 1];
        }
        acc += y.norm_sqr();
    }
    acc.sqrt()
}

fn normalize(v: &mut [Complex64]) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for z in v.iter_mut() {
            *z /= norm;
        }
    }
}

/// Pivoted LU solve of (T - lambda I) x = rhs for tridiagonal T.
fn solve_shifted(
    diag: &[Complex64],
    sub: &[Complex64],
    sup: &[Complex64],
    lambda: Complex64,
    rhs: &[Complex64],
    scale: f64,
) -> Option<Vec<Complex64>> {
    let n = diag.len();
    let tiny = Complex64::new(f64::EPSILON * scale.max(f64::MIN_POSITIVE), 0.0);
    let mut d: Vec<Complex64> = diag.iter().map(|&z| z - lambda).collect();
    let dl: Vec<Complex64> = sub.to_vec();
    let mut du: Vec<Complex64> = sup.to_vec();
    let mut du2 = vec![Complex64::ZERO; n.saturating_sub(2)];
    let mut b = rhs.to_vec();

    for k in 0..n.saturating_sub(1) {
        if d[k].norm() >= dl[k].norm() {
            if d[k] == Complex64::ZERO {
                d[k] = tiny;
            }
            let mult = dl[k] / d[k];
            d[k + 1] -= mult * du[k];
            let bk = b[k];
            b[k + 1] -= mult * bk;
            if k + 2 < n {
                du2[k] = Complex64::ZERO;
            }
        } else {
            let mult = d[k] / dl[k];
            d[k] = dl[k];
            let temp = d[k + 1];
            d[k + 1] = du[k] - mult * temp;
            if k + 2 < n {
                du2[k] = du[k + 1];
                du[k + 1] = -mult * du2[k];
            }
            du[k] = temp;
            b.swap(k, k + 1);
            let bk = b[k];
            b[k + 1] -= mult * bk;
        }
    }
    if d[n - 1] == Complex64::ZERO {
        d[n - 1] = tiny;
    }

    let mut x = vec![Complex64::ZERO; n];
    x[n - 1] = b[n - 1] / d[n - 1];
    if n > 1 {
        x[n - 2] = (b[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
    }
    for k in (0..n.saturating_sub(2)).rev() {
        x[k] = (b[k] - du[k] * x[k + 1] - du2[k] * x[k + 2]) / d[k];
    }
    if x.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Some(x)
    } else {
        None
    }
}

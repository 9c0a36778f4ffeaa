use num_complex::Complex64;

use crate::error::{Result, SpectralError};
use crate::matrix::ComplexMatrix;
use crate::tolerance::ToleranceConfig;

/// Unitary triangularization A = Q T Q†.
#[derive(Debug, Clone)]
pub struct SchurForm {
    pub q: ComplexMatrix,
    pub t: ComplexMatrix,
}

impl SchurForm {
    pub fn dim(&self) -> usize {
        self.t.dim()
    }

    pub fn eigenvalues(&self) -> Vec<Complex64> {
        (0..self.dim()).map(|i| self.t[(i, i)]).collect()
    }

    /// Relative reconstruction residual ||Q T Q† - A|| / ||A||.
    pub fn reconstruction_residual(&self, a: &ComplexMatrix) -> f64 {
        let qt = self.q.matmul(&self.t).expect("dims agree");
        let qtqh = qt.matmul(&self.q.adjoint()).expect("dims agree");
        let diff = qtqh.sub(a).expect("dims agree");
        diff.frobenius_norm() / a.frobenius_norm().max(f64::MIN_POSITIVE)
    }

    /// ||Q†Q - I|| in Frobenius norm.
    pub fn orthogonality_defect(&self) -> f64 {
        let g = self.q.adjoint().matmul(&self.q).expect("dims agree");
        let n = g.dim();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { Complex64::ONE } else { Complex64::ZERO };
                acc += (g[(i, j)] - expect).norm_sqr();
            }
        }
        acc.sqrt()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SchurOptions {
    /// Diagonal similarity balancing before the Hessenberg reduction.
    pub balance: bool,
}

impl Default for SchurOptions {
    fn default() -> Self {
        Self { balance: true }
    }
}

/// Complex Givens rotation: returns (c, s) with c real such that
/// [[c, s], [-conj(s), c]]† applied from the left maps (a, b) to (r, 0).
pub(crate) fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, Complex64::ZERO);
    }
    if an == 0.0 {
        return (0.0, b.conj() / bn);
    }
    let scale = an.max(bn);
    let d = scale * ((an / scale).powi(2) + (bn / scale).powi(2)).sqrt();
    let c = an / d;
    let s = (a / an) * b.conj() / d;
    (c, s)
}

/// Rows i, i+1 over columns jlo..=jhi: left-multiplication by the rotation's adjoint.
fn rot_left(m: &mut ComplexMatrix, i: usize, c: f64, s: Complex64, jlo: usize, jhi: usize) {
    for j in jlo..=jhi {
        let u = m[(i, j)];
        let v = m[(i + 1, j)];
        m[(i, j)] = c * u + s * v;
        m[(i + 1, j)] = -s.conj() * u + c * v;
    }
}

/// Columns i, i+1 over rows rlo..=rhi: right-multiplication by the rotation.
fn rot_right(m: &mut ComplexMatrix, i: usize, c: f64, s: Complex64, rlo: usize, rhi: usize) {
    for r in rlo..=rhi {
        let u = m[(r, i)];
        let v = m[(r, i + 1)];
        m[(r, i)] = c * u + s.conj() * v;
        m[(r, i + 1)] = -s * u + c * v;
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

/// Unitary reduction to upper Hessenberg form, Q accumulated.
fn hessenberg(a: &mut ComplexMatrix, q: &mut ComplexMatrix) {
    let n = a.dim();
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
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }

        // Left: rows k+1..n over all columns.
        for j in k..n {
            let mut acc = Complex64::ZERO;
            for i in 0..m {
                acc += v[i].conj() * a[(k + 1 + i, j)];
            }
            let acc2 = 2.0 * acc;
            for i in 0..m {
                a[(k + 1 + i, j)] -= acc2 * v[i];
            }
        }
        // Right: columns k+1..n over all rows.
        for r in 0..n {
            let mut acc = Complex64::ZERO;
            for i in 0..m {
                acc += a[(r, k + 1 + i)] * v[i];
            }
            let acc2 = 2.0 * acc;
            for i in 0..m {
                a[(r, k + 1 + i)] -= acc2 * v[i].conj();
            }
        }
        // Q <- Q P.
        for r in 0..n {
            let mut acc = Complex64::ZERO;
            for i in 0..m {
                acc += q[(r, k + 1 + i)] * v[i];
            }
            let acc2 = 2.0 * acc;
            for i in 0..m {
                q[(r, k + 1 + i)] -= acc2 * v[i].conj();
            }
        }
        // Column k is mapped to beta e1 by construction; store it exactly.
        a[(k + 1, k)] = beta;
        for i in 2..=m {
            a[(k + i, k)] = Complex64::ZERO;
        }
    }
}

/// Wilkinson shift from the trailing 2x2 block ending at index hi.
fn wilkinson_shift(h: &ComplexMatrix, hi: usize) -> Complex64 {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let t = 0.5 * (a - d);
    let disc = (t * t + b * c).sqrt();
    let d1 = t + disc;
    let d2 = t - disc;
    let denom = if d1.norm() >= d2.norm() { d1 } else { d2 };
    if denom.norm() == 0.0 {
        d
    } else {
        d - (b * c) / denom
    }
}

/// Implicitly single-shifted QR iteration on an upper Hessenberg matrix.
///
/// Wilkinson shift, machine-epsilon deflation, 30 iterations per eigenvalue
/// with an exceptional shift every tenth sweep.
fn hessenberg_qr(h: &mut ComplexMatrix, q: &mut ComplexMatrix) -> Result<()> {
    let n = h.dim();
    if n <= 1 {
        return Ok(());
    }
    let eps = f64::EPSILON;
    let hnorm = h.frobenius_norm();
    let mut hi = n - 1;
    let mut iters_at_hi = 0usize;

    loop {
        // Zero negligible subdiagonals in the active range.
        for k in 0..hi {
            let tst = h[(k, k)].norm() + h[(k + 1, k + 1)].norm();
            let tst = if tst == 0.0 { hnorm } else { tst };
            if h[(k + 1, k)].norm() <= eps * tst {
                h[(k + 1, k)] = Complex64::ZERO;
            }
        }
        if h[(hi, hi - 1)] == Complex64::ZERO {
            if hi == 1 {
                break;
            }
            hi -= 1;
            iters_at_hi = 0;
            continue;
        }
        let mut lo = hi - 1;
        while lo > 0 && h[(lo, lo - 1)] != Complex64::ZERO {
            lo -= 1;
        }

        iters_at_hi += 1;
        if iters_at_hi > 30 {
            return Err(SpectralError::NoConvergence {
                iterations: iters_at_hi,
                context: format!("QR iteration stalled at trailing index {hi}"),
            });
        }
        let mu = if iters_at_hi % 10 == 0 {
            h[(hi, hi)] + 0.75 * h[(hi, hi - 1)].norm()
        } else {
            wilkinson_shift(h, hi)
        };

        // Bulge-chasing sweep over the unreduced block [lo, hi].
        let mut x = h[(lo, lo)] - mu;
        let mut z = h[(lo + 1, lo)];
        for k in lo..hi {
            let (c, s) = givens(x, z);
            let col_start = if k > lo { k - 1 } else { lo };
            rot_left(h, k, c, s, col_start, n - 1);
            if k > lo {
                h[(k + 1, k - 1)] = Complex64::ZERO;
            }
            let row_end = (k + 2).min(hi);
            rot_right(h, k, c, s, 0, row_end);
            rot_right(q, k, c, s, 0, n - 1);
            if k + 1 < hi {
                x = h[(k + 1, k)];
                z = h[(k + 2, k)];
            }
        }
    }
    Ok(())
}

/// EISPACK-style diagonal balancing (radix-2 scaling only, exact in floating
/// point). Returns the scaling d with `a` overwritten by D^-1 A D.
fn balance_in_place(a: &mut ComplexMatrix) -> Vec<f64> {
    let n = a.dim();
    let radix = 2.0f64;
    let sqrdx = radix * radix;
    let mut d = vec![1.0f64; n];
    loop {
        let mut done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].norm();
                    r += a[(i, j)].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let mut g = r / radix;
            let mut f = 1.0;
            let s = c + r;
            let mut cc = c;
            while cc < g {
                f *= radix;
                cc *= sqrdx;
            }
            g = r * radix;
            while cc > g {
                f /= radix;
                cc /= sqrdx;
            }
            if (cc + r) / f < 0.95 * s {
                done = false;
                let ginv = 1.0 / f;
                d[i] *= f;
                for j in 0..n {
                    a[(i, j)] = a[(i, j)] * ginv;
                }
                for j in 0..n {
                    a[(j, i)] = a[(j, i)] * f;
                }
            }
        }
        if done {
            break;
        }
    }
    d
}

/// Householder QR of a square complex matrix: M = Q R with Q unitary.
fn qr_decompose(m: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = m.dim();
    let mut r = m.clone();
    let mut q = ComplexMatrix::identity(n);
    for k in 0..n.saturating_sub(1) {
        let len = n - k;
        let mut x = vec![Complex64::ZERO; len];
        for i in 0..len {
            x[i] = r[(k + i, k)];
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
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        for j in k..n {
            let mut acc = Complex64::ZERO;
            for i in 0..len {
                acc += v[i].conj() * r[(k + i, j)];
            }
            let acc2 = 2.0 * acc;
            for i in 0..len {
                r[(k + i, j)] -= acc2 * v[i];
            }
        }
        for row in 0..n {
            let mut acc = Complex64::ZERO;
            for i in 0..len {
                acc += q[(row, k + i)] * v[i];
            }
            let acc2 = 2.0 * acc;
            for i in 0..len {
                q[(row, k + i)] -= acc2 * v[i].conj();
            }
        }
        r[(k, k)] = beta;
        for i in 1..len {
            r[(k + i, k)] = Complex64::ZERO;
        }
    }
    // Enforce exact upper-triangularity.
    for i in 1..n {
        for j in 0..i {
            r[(i, j)] = Complex64::ZERO;
        }
    }
    (q, r)
}

/// Product of two upper-triangular matrices (upper triangular).
fn tri_mul(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let n = a.dim();
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let mut acc = Complex64::ZERO;
            for k in i..=j {
                acc += a[(i, k)] * b[(k, j)];
            }
            out[(i, j)] = acc;
        }
    }
    out
}

/// Solve X R = Y for upper-triangular X, with R, Y upper triangular.
fn tri_right_solve(y: &ComplexMatrix, r: &ComplexMatrix) -> ComplexMatrix {
    let n = y.dim();
    let mut x = ComplexMatrix::zeros(n);
    for j in 0..n {
        for i in 0..=j {
            let mut acc = y[(i, j)];
            for k in i..j {
                acc -= x[(i, k)] * r[(k, j)];
            }
            x[(i, j)] = acc / r[(j, j)];
        }
    }
    x
}

/// Complex Schur decomposition with default options (balancing on).
pub fn schur(a: &ComplexMatrix, tol: &ToleranceConfig) -> Result<SchurForm> {
    schur_with_options(a, tol, SchurOptions::default())
}

/// Complex Schur decomposition.
///
/// Optional radix-2 balancing, unitary Hessenberg reduction, then implicitly
/// single-shifted QR with Wilkinson shift and deflation. When balancing
/// scales the matrix, the non-unitary similarity is folded back through a QR
/// factorization so the returned Q is unitary and Q T Q† reconstructs the
/// original matrix.
pub fn schur_with_options(
    a: &ComplexMatrix,
    _tol: &ToleranceConfig,
    opts: SchurOptions,
) -> Result<SchurForm> {
    let n = a.dim();
    if n == 1 {
        return Ok(SchurForm { q: ComplexMatrix::identity(1), t: a.clone() });
    }

    let mut work = a.clone();
    let scale = if opts.balance {
        balance_in_place(&mut work)
    } else {
        vec![1.0; n]
    };
    let balanced = scale.iter().any(|&s| s != 1.0);

    let mut q = ComplexMatrix::identity(n);
    hessenberg(&mut work, &mut q);
    hessenberg_qr(&mut work, &mut q)?;
    for i in 1..n {
        for j in 0..i {
            work[(i, j)] = Complex64::ZERO;
        }
    }

    if !balanced {
        return Ok(SchurForm { q, t: work });
    }

    // A = D B D^-1 and B = Q_B T_B Q_B†; fold the diagonal back through a QR
    // of D Q_B so the factorization stays unitary.
    let mut m = q;
    for i in 0..n {
        if scale[i] != 1.0 {
            for j in 0..n {
                m[(i, j)] = m[(i, j)] * scale[i];
            }
        }
    }
    let (qu, r) = qr_decompose(&m);
    let t = tri_right_solve(&tri_mul(&r, &work), &r);
    Ok(SchurForm { q: qu, t })
}

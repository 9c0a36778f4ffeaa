//! Concrete operators as matrices: 1D finite-difference Schrödinger operators
//! with complex potential and complex drift, their tilted self-adjoint
//! companions, complex-scaled operators for resonance hunting, and the
//! triangular equality family for the moment inequality.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SpectralError};
use crate::matrix::ComplexMatrix;

/// Uniform 1D grid with Dirichlet boundary; only interior points are stored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    pub x_min: f64,
    pub x_max: f64,
    /// Number of interior points.
    pub n: usize,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !(x_min < x_max) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(SpectralError::InvalidGrid(format!(
                "need x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n < 3 {
            return Err(SpectralError::InvalidGrid(format!(
                "need at least 3 interior points, got {n}"
            )));
        }
        Ok(Self { x_min, x_max, n })
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n as f64 + 1.0)
    }

    pub fn point(&self, j: usize) -> f64 {
        self.x_min + (j as f64 + 1.0) * self.dx()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.point(j)).collect()
    }

    /// Composite trapezoid weights over the interior samples.
    pub fn trapezoid(&self, f: &[f64]) -> f64 {
        assert_eq!(f.len(), self.n);
        let dx = self.dx();
        if self.n == 1 {
            return f[0] * dx;
        }
        let inner: f64 = f[1..self.n - 1].iter().sum();
        dx * (0.5 * (f[0] + f[self.n - 1]) + inner)
    }
}

/// Declarative description of P = -h^2 d^2/dx^2 + i(a d/dx + d/dx a) + V on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSpec {
    pub v: Vec<Complex64>,
    pub a: Vec<Complex64>,
    pub h: f64,
}

impl OperatorSpec {
    pub fn new(v: Vec<Complex64>, a: Vec<Complex64>, h: f64) -> Result<Self> {
        if v.len() != a.len() {
            return Err(SpectralError::ShapeMismatch(format!(
                "potential has {} samples, drift has {}",
                v.len(),
                a.len()
            )));
        }
        if !(h > 0.0) || !h.is_finite() {
            return Err(SpectralError::InvalidGrid(format!("h must be positive, got {h}")));
        }
        for (i, z) in v.iter().chain(a.iter()).enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(SpectralError::NonFinite { row: i, col: 0 });
            }
        }
        Ok(Self { v, a, h })
    }

    pub fn potential_only(v: Vec<Complex64>) -> Result<Self> {
        let a = vec![Complex64::ZERO; v.len()];
        Self::new(v, a, 1.0)
    }

    fn check_grid(&self, grid: &Grid1D) -> Result<()> {
        if self.v.len() != grid.n {
            return Err(SpectralError::ShapeMismatch(format!(
                "spec has {} samples, grid has {} interior points",
                self.v.len(),
                grid.n
            )));
        }
        Ok(())
    }
}

/// cot(alpha), taken as exactly zero at the representable right angle so the
/// tilted functionals reduce bit-for-bit to the plain ones there.
pub fn cot(alpha: f64) -> f64 {
    if alpha == std::f64::consts::FRAC_PI_2 || alpha == -std::f64::consts::FRAC_PI_2 {
        0.0
    } else {
        alpha.cos() / alpha.sin()
    }
}

/// The rotation e^{-i(alpha - pi/2)} that maps the tilted half-plane onto the
/// left half-plane. Exactly 1 at alpha = pi/2.
pub fn tilt_phase(alpha: f64) -> Complex64 {
    Complex64::cis(std::f64::consts::FRAC_PI_2 - alpha)
}

fn check_alpha(alpha: f64) -> Result<f64> {
    let s = alpha.sin();
    if s.abs() < 1e-12 {
        return Err(SpectralError::AlphaSingular { sin_alpha: s });
    }
    Ok(s)
}

/// Dirichlet second-difference matrix for -d^2/dx^2: (2, -1, -1)/dx^2 stencil.
pub fn second_difference(grid: &Grid1D) -> ComplexMatrix {
    let n = grid.n;
    let inv_dx2 = 1.0 / (grid.dx() * grid.dx());
    let mut m = ComplexMatrix::zeros(n);
    for j in 0..n {
        m[(j, j)] = Complex64::new(2.0 * inv_dx2, 0.0);
        if j + 1 < n {
            m[(j, j + 1)] = Complex64::new(-inv_dx2, 0.0);
            m[(j + 1, j)] = Complex64::new(-inv_dx2, 0.0);
        }
    }
    m
}

/// Central-difference matrix for d/dx: antisymmetric, (+1, -1)/(2 dx).
pub fn central_difference(grid: &Grid1D) -> ComplexMatrix {
    let n = grid.n;
    let inv_2dx = 1.0 / (2.0 * grid.dx());
    let mut m = ComplexMatrix::zeros(n);
    for j in 0..n.saturating_sub(1) {
        m[(j, j + 1)] = Complex64::new(inv_2dx, 0.0);
        m[(j + 1, j)] = Complex64::new(-inv_2dx, 0.0);
    }
    m
}

/// A = h^2 D2 + i (M_a D_c + D_c M_a) + M_V, assembled directly on the three
/// bands so the zero pattern is exact. Hermitian exactly for real a and V.
pub fn build_schrodinger(grid: &Grid1D, spec: &OperatorSpec) -> Result<ComplexMatrix> {
    spec.check_grid(grid)?;
    let n = grid.n;
    let dx = grid.dx();
    let kin = spec.h * spec.h / (dx * dx);
    let inv_2dx = 1.0 / (2.0 * dx);
    let mut m = ComplexMatrix::zeros(n);
    for j in 0..n {
        m[(j, j)] = Complex64::new(2.0 * kin, 0.0) + spec.v[j];
        if j + 1 < n {
            let drift = Complex64::i() * (spec.a[j] + spec.a[j + 1]) * inv_2dx;
            m[(j, j + 1)] = Complex64::new(-kin, 0.0) + drift;
            m[(j + 1, j)] = Complex64::new(-kin, 0.0) - drift;
        }
    }
    Ok(m)
}

/// Real coefficient fields of the tilted companion operator:
/// b = Re a - cot(alpha) Im a and W = Re V - cot(alpha) Im V.
pub fn tilted_coefficients(spec: &OperatorSpec, alpha: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    check_alpha(alpha)?;
    let ct = cot(alpha);
    let b = spec.a.iter().map(|a| a.re - ct * a.im).collect();
    let w = spec.v.iter().map(|v| v.re - ct * v.im).collect();
    Ok((b, w))
}

/// The self-adjoint family H(alpha) = h^2 D2 + i (M_b D_c + D_c M_b) + M_W
/// with b and W as in `tilted_coefficients`. Hermitian by construction.
pub fn rotated_hamiltonian(grid: &Grid1D, spec: &OperatorSpec, alpha: f64) -> Result<ComplexMatrix> {
    spec.check_grid(grid)?;
    let (b, w) = tilted_coefficients(spec, alpha)?;
    let n = grid.n;
    let dx = grid.dx();
    let kin = spec.h * spec.h / (dx * dx);
    let inv_2dx = 1.0 / (2.0 * dx);
    let mut m = ComplexMatrix::zeros(n);
    for j in 0..n {
        m[(j, j)] = Complex64::new(2.0 * kin + w[j], 0.0);
        if j + 1 < n {
            let s = (b[j] + b[j + 1]) * inv_2dx;
            m[(j, j + 1)] = Complex64::new(-kin, s);
            m[(j + 1, j)] = Complex64::new(-kin, -s);
        }
    }
    Ok(m)
}

/// Complex-scaled operator P_theta = e^{-i theta} h^2 D2 + M_{V_scaled}.
///
/// The caller supplies samples of the analytically continued potential
/// x -> V(e^{i theta/2} x).
pub fn complex_scaled(
    grid: &Grid1D,
    v_scaled: &[Complex64],
    theta: f64,
    h: f64,
) -> Result<ComplexMatrix> {
    if v_scaled.len() != grid.n {
        return Err(SpectralError::ShapeMismatch(format!(
            "potential has {} samples, grid has {}",
            v_scaled.len(),
            grid.n
        )));
    }
    let n = grid.n;
    let dx = grid.dx();
    let kin = Complex64::cis(-theta) * (h * h / (dx * dx));
    let mut m = ComplexMatrix::zeros(n);
    for j in 0..n {
        m[(j, j)] = 2.0 * kin + v_scaled[j];
        if j + 1 < n {
            m[(j, j + 1)] = -kin;
            m[(j + 1, j)] = -kin;
        }
    }
    Ok(m)
}

/// Hermitian test operator whose nonnegativity excludes resonances from a
/// sector: D2 + M_w with w = (h^-2 / sin alpha) Re(e^{-i(alpha-theta-pi/2)} V_scaled).
pub fn resonance_test_hamiltonian(
    grid: &Grid1D,
    v_scaled: &[Complex64],
    theta: f64,
    alpha: f64,
    h: f64,
) -> Result<ComplexMatrix> {
    if v_scaled.len() != grid.n {
        return Err(SpectralError::ShapeMismatch(format!(
            "potential has {} samples, grid has {}",
            v_scaled.len(),
            grid.n
        )));
    }
    let sin_alpha = check_alpha(alpha)?;
    let phase = Complex64::cis(-(alpha - theta - std::f64::consts::FRAC_PI_2));
    let factor = 1.0 / (h * h * sin_alpha);
    let mut m = second_difference(grid);
    for j in 0..grid.n {
        let w = factor * (phase * v_scaled[j]).re;
        m[(j, j)] += Complex64::new(w, 0.0);
    }
    Ok(m)
}

/// Triangular equality family: every diagonal entry -1, every strictly upper
/// entry -2. Its only eigenvalue is -1 with algebraic multiplicity n, while
/// the Hermitian part is the negated all-ones matrix with single negative
/// eigenvalue -n.
pub fn bony_counterexample(n: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n.max(1));
    for i in 0..n.max(1) {
        m[(i, i)] = Complex64::new(-1.0, 0.0);
        for j in (i + 1)..n.max(1) {
            m[(i, j)] = Complex64::new(-2.0, 0.0);
        }
    }
    m
}

/// Named potential families accepted on the command line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum PotentialFamily {
    /// V(x) = (-depth + i im_depth) sech^2(x)
    Sech2 { depth: f64, im_depth: f64 },
    /// V(x) = (-depth + i im_depth) exp(-x^2)
    Gaussian { depth: f64, im_depth: f64 },
    /// V(x) = (coeff + i im_coeff) x^2
    Harmonic { coeff: f64, im_coeff: f64 },
    /// Raw samples on the grid; not dilation-analytic.
    CustomSamples { samples: Vec<(f64, f64)> },
}

impl PotentialFamily {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Sech2 { .. } => "sech2",
            Self::Gaussian { .. } => "gaussian",
            Self::Harmonic { .. } => "harmonic",
            Self::CustomSamples { .. } => "custom-samples",
        }
    }

    fn profile_at(&self, z: Complex64) -> Complex64 {
        match self {
            Self::Sech2 { .. } => {
                let c = z.cosh();
                1.0 / (c * c)
            }
            Self::Gaussian { .. } => (-z * z).exp(),
            Self::Harmonic { .. } => z * z,
            Self::CustomSamples { .. } => unreachable!("custom samples have no profile"),
        }
    }

    fn coefficient(&self) -> Complex64 {
        match self {
            Self::Sech2 { depth, im_depth } | Self::Gaussian { depth, im_depth } => {
                Complex64::new(-depth, *im_depth)
            }
            Self::Harmonic { coeff, im_coeff } => Complex64::new(*coeff, *im_coeff),
            Self::CustomSamples { .. } => Complex64::ONE,
        }
    }

    pub fn samples(&self, grid: &Grid1D) -> Result<Vec<Complex64>> {
        if let Self::CustomSamples { samples } = self {
            if samples.len() != grid.n {
                return Err(SpectralError::ShapeMismatch(format!(
                    "{} custom samples for a grid with {} points",
                    samples.len(),
                    grid.n
                )));
            }
            return Ok(samples.iter().map(|&(re, im)| Complex64::new(re, im)).collect());
        }
        let c = self.coefficient();
        Ok(grid
            .points()
            .iter()
            .map(|&x| c * self.profile_at(Complex64::new(x, 0.0)))
            .collect())
    }

    /// Samples of x -> V(e^{i theta/2} x). Custom samples cannot be continued.
    pub fn scaled_samples(&self, grid: &Grid1D, theta: f64) -> Result<Vec<Complex64>> {
        if matches!(self, Self::CustomSamples { .. }) {
            return Err(SpectralError::SectorDegenerate(
                "custom samples are not dilation-analytic; use a named family".into(),
            ));
        }
        let c = self.coefficient();
        let rot = Complex64::cis(theta / 2.0);
        Ok(grid
            .points()
            .iter()
            .map(|&x| c * self.profile_at(rot * x))
            .collect())
    }
}

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Result, SpectralError};
use crate::matrix::ComplexMatrix;

/// n x k complex matrix with orthonormal columns.
#[derive(Debug, Clone)]
pub struct OrthonormalFrame {
    rows: usize,
    cols: usize,
    /// Column-major storage: column j occupies data[j*rows .. (j+1)*rows].
    data: Vec<Complex64>,
}

impl OrthonormalFrame {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[Complex64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    fn column_mut(&mut self, j: usize) -> &mut [Complex64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// ||F†F - I|| in Frobenius norm.
    pub fn gram_defect(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.cols {
            for j in 0..self.cols {
                let mut g = Complex64::ZERO;
                for r in 0..self.rows {
                    g += self.column(i)[r].conj() * self.column(j)[r];
                }
                let expect = if i == j { Complex64::ONE } else { Complex64::ZERO };
                acc += (g - expect).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Build from raw columns, orthonormalizing by modified Gram-Schmidt with
    /// one reorthogonalization pass.
    pub fn orthonormalize(rows: usize, cols: usize, mut data: Vec<Complex64>) -> Result<Self> {
        if cols == 0 || cols > rows {
            return Err(SpectralError::BadShape(format!(
                "frame size must satisfy 1 <= k <= n, got k={cols}, n={rows}"
            )));
        }
        if data.len() != rows * cols {
            return Err(SpectralError::ShapeMismatch(format!(
                "expected {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        for j in 0..cols {
            for _pass in 0..2 {
                for i in 0..j {
                    let mut proj = Complex64::ZERO;
                    for r in 0..rows {
                        proj += data[i * rows + r].conj() * data[j * rows + r];
                    }
                    for r in 0..rows {
                        let qi = data[i * rows + r];
                        data[j * rows + r] -= proj * qi;
                    }
                }
            }
            let norm = data[j * rows..(j + 1) * rows]
                .iter()
                .map(|z| z.norm_sqr())
                .sum::<f64>()
                .sqrt();
            if norm <= 1e-300 {
                return Err(SpectralError::BadShape(
                    "rank-deficient frame candidate".into(),
                ));
            }
            for r in 0..rows {
                data[j * rows + r] /= norm;
            }
        }
        Ok(Self { rows, cols, data })
    }

    /// Square frames promote to a unitary matrix.
    pub fn to_matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.rows.max(self.cols));
        for j in 0..self.cols {
            for r in 0..self.rows {
                m[(r, j)] = self.column(j)[r];
            }
        }
        m
    }
}

/// Haar-ish random orthonormal frame: orthonormalization of an n x k matrix
/// of independent standard complex Gaussians. Deterministic for a fixed seed.
pub fn random_orthonormal_frame(n: usize, k: usize, seed: u64) -> Result<OrthonormalFrame> {
    if k == 0 || k > n {
        return Err(SpectralError::BadShape(format!(
            "frame size must satisfy 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = gaussian_columns(n, k, &mut rng);
    OrthonormalFrame::orthonormalize(n, k, data)
}

/// Same sampling, but drawing from a caller-owned RNG stream.
pub fn random_orthonormal_frame_from(
    n: usize,
    k: usize,
    rng: &mut ChaCha8Rng,
) -> Result<OrthonormalFrame> {
    if k == 0 || k > n {
        return Err(SpectralError::BadShape(format!(
            "frame size must satisfy 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    let data = gaussian_columns(n, k, rng);
    OrthonormalFrame::orthonormalize(n, k, data)
}

fn gaussian_columns(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    (0..n * k)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_fixed_seed() {
        let a = random_orthonormal_frame(5, 2, 1234).unwrap();
        let b = random_orthonormal_frame(5, 2, 1234).unwrap();
        assert_eq!(a.data, b.data);
        let c = random_orthonormal_frame(5, 2, 1235).unwrap();
        assert_ne!(a.data, c.data);
    }

    #[test]
    fn gram_matrix_is_identity() {
        for seed in 0..100u64 {
            let f = random_orthonormal_frame(9, 4, seed).unwrap();
            assert!(f.gram_defect() < 1e-12, "gram defect at seed {seed}");
            for j in 0..4 {
                let norm: f64 = f.column(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                assert!((norm - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(random_orthonormal_frame(3, 4, 0).is_err());
        assert!(random_orthonormal_frame(3, 0, 0).is_err());
    }

    #[test]
    fn square_frame_is_unitary_with_unit_determinant_modulus() {
        use crate::eigen::schur::schur;
        use crate::tolerance::ToleranceConfig;
        let f = random_orthonormal_frame(6, 6, 77).unwrap();
        let u = f.to_matrix();
        // |det U| = product of |Schur diagonal| = 1 for unitary U.
        let s = schur(&u, &ToleranceConfig::default()).unwrap();
        let absdet: f64 = s.eigenvalues().iter().map(|z| z.norm()).product();
        assert!((absdet - 1.0).abs() < 1e-10);
    }
}

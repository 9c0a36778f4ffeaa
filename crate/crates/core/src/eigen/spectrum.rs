use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::matrix::ComplexMatrix;
use crate::tolerance::ToleranceConfig;

use super::schur::{schur, SchurForm};
use super::tridiagonal;

/// Eigenvalues with algebraic multiplicities recovered by clustering, plus a
/// per-cluster residual diagnostic (cluster spread for the Schur route,
/// certified eigenpair residual for the tridiagonal route).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Spectrum {
    pub values: Vec<Complex64>,
    pub multiplicities: Vec<usize>,
    pub residuals: Vec<f64>,
}

impl Spectrum {
    pub fn total_multiplicity(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// Iterate (eigenvalue, multiplicity) pairs.
    pub fn iter(&self) -> impl Iterator<Item = (Complex64, usize)> + '_ {
        self.values.iter().copied().zip(self.multiplicities.iter().copied())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    fn union(&mut self, i: usize, j: usize) {
        let (ri, rj) = (self.find(i), self.find(j));
        if ri != rj {
            self.parent[ri.max(rj)] = ri.min(rj);
        }
    }
}

/// Single-linkage clustering of raw eigenvalues within an absolute radius;
/// each cluster is reported at its arithmetic mean with the spread as the
/// base residual, combined with any per-value residual supplied.
pub(crate) fn cluster_values(
    values: &[Complex64],
    per_value_residuals: Option<&[f64]>,
    radius_abs: f64,
) -> Spectrum {
    let n = values.len();
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if (values[i] - values[j]).norm() <= radius_abs {
                uf.union(i, j);
            }
        }
    }

    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut root_slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = uf.find(i);
        if root_slot[r] == usize::MAX {
            root_slot[r] = clusters.len();
            clusters.push(Vec::new());
        }
        clusters[root_slot[r]].push(i);
    }

    let mut entries: Vec<(Complex64, usize, f64)> = clusters
        .iter()
        .map(|members| {
            let m = members.len() as f64;
            let mean = members.iter().map(|&i| values[i]).sum::<Complex64>() / m;
            let spread = members
                .iter()
                .map(|&i| (values[i] - mean).norm())
                .fold(0.0, f64::max);
            let verify = per_value_residuals
                .map(|r| members.iter().map(|&i| r[i]).fold(0.0, f64::max))
                .unwrap_or(0.0);
            (mean, members.len(), spread.max(verify))
        })
        .collect();
    entries.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));

    Spectrum {
        values: entries.iter().map(|e| e.0).collect(),
        multiplicities: entries.iter().map(|e| e.1).collect(),
        residuals: entries.iter().map(|e| e.2).collect(),
    }
}

/// Algebraic multiplicities from the Schur diagonal: entries within
/// `cluster_radius * ||T||` of each other merge into one eigenvalue.
pub fn cluster_spectrum(s: &SchurForm, tol: &ToleranceConfig) -> Spectrum {
    let radius = tol.cluster_radius * s.t.frobenius_norm();
    cluster_values(&s.eigenvalues(), None, radius)
}

/// Spectrum of a general complex matrix.
///
/// Large tridiagonal matrices take an O(n^2) rotation-based path whose
/// eigenvalues are certified by inverse-iteration residuals; everything else
/// (and any fast-path failure) goes through the dense Schur decomposition.
pub fn compute_spectrum(a: &ComplexMatrix, tol: &ToleranceConfig) -> Result<Spectrum> {
    let n = a.dim();
    let radius = tol.cluster_radius * a.frobenius_norm();
    if n >= 128 && a.is_tridiagonal() {
        if let Ok(pairs) = tridiagonal::tridiagonal_eigenvalues(a, tol) {
            let values: Vec<Complex64> = pairs.iter().map(|p| p.0).collect();
            let residuals: Vec<f64> = pairs.iter().map(|p| p.1).collect();
            return Ok(cluster_values(&values, Some(&residuals), radius));
        }
    }
    let s = schur(a, tol)?;
    Ok(cluster_spectrum(&s, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ComplexMatrix;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn forced_merge_of_nearby_entries() {
        let vals = [c(-1.0, 0.0), c(-1.0 + 1e-14, 0.0), c(3.0, 0.0)];
        let spec = cluster_values(&vals, None, 1e-10);
        assert_eq!(spec.multiplicities, vec![2, 1]);
        assert!((spec.values[0] - c(-1.0 + 0.5e-14, 0.0)).norm() < 1e-13);
        assert!((spec.values[1] - c(3.0, 0.0)).norm() == 0.0);
    }

    #[test]
    fn simple_eigenvalues_stay_separate() {
        let t = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        let s = SchurForm { q: ComplexMatrix::identity(3), t };
        let spec = cluster_spectrum(&s, &ToleranceConfig::default());
        assert_eq!(spec.multiplicities, vec![1, 1, 1]);
        assert_eq!(spec.total_multiplicity(), 3);
    }

    #[test]
    fn chain_merges_transitively() {
        // Single linkage: a-b close, b-c close, a-c not; all three merge.
        let r = 1.0;
        let vals = [c(0.0, 0.0), c(0.9, 0.0), c(1.8, 0.0)];
        let spec = cluster_values(&vals, None, r);
        assert_eq!(spec.multiplicities, vec![3]);
    }
}

use num_complex::Complex64;

use super::eigen::hermitian_eigenvalues;
use crate::tol::{EPS_EIG, EPS_HERM, EPS_NORM};
use crate::{Error, Result};

/// Square complex matrix that is Hermitian within [`EPS_HERM`], row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::domain(format!(
                "expected {dim}x{dim} entries, got {}",
                entries.len()
            )));
        }
        let m = Self { dim, entries };
        let dev = m.hermiticity_defect();
        if dev > EPS_HERM {
            return Err(Error::domain(format!(
                "matrix is not Hermitian (max |a_ij - conj(a_ji)| = {dev:e})"
            )));
        }
        Ok(m)
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)))
            .collect();
        Self::new(dim, entries)
    }

    pub(crate) fn from_entries_unchecked(dim: usize, entries: Vec<Complex64>) -> Self {
        debug_assert_eq!(entries.len(), dim * dim);
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i).re).sum()
    }

    pub fn transpose(&self) -> HermitianMatrix {
        let n = self.dim;
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        Self::from_entries_unchecked(n, entries)
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(self)
    }

    fn hermiticity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }
}

impl std::ops::Sub for &HermitianMatrix {
    type Output = HermitianMatrix;

    fn sub(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        HermitianMatrix::from_entries_unchecked(self.dim, entries)
    }
}

/// Density matrix on 1, 2 or 3 qubits: Hermitian, unit trace, positive
/// semidefinite (eigenvalues at least `-EPS_EIG`).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(HermitianMatrix);

impl DensityMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if !matches!(dim, 2 | 4 | 8) {
            return Err(Error::domain(format!(
                "density matrix dimension must be 2, 4 or 8, got {dim}"
            )));
        }
        let h = HermitianMatrix::new(dim, entries)?;
        let tr = h.trace();
        if (tr - 1.0).abs() > EPS_NORM {
            return Err(Error::domain(format!("trace is {tr}, expected 1")));
        }
        let min = h.eigenvalues()[0];
        if min < -EPS_EIG {
            return Err(Error::domain(format!(
                "not positive semidefinite (min eigenvalue {min:e})"
            )));
        }
        Ok(Self(h))
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let h = HermitianMatrix::from_real_rows(rows)?;
        Self::new(h.dim, h.entries)
    }

    pub fn diagonal(probabilities: &[f64]) -> Result<Self> {
        let n = probabilities.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for (i, &p) in probabilities.iter().enumerate() {
            entries[i * n + i] = Complex64::new(p, 0.0);
        }
        Self::new(n, entries)
    }

    /// `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        Self::diagonal(&vec![1.0 / dim as f64; dim])
    }

    pub(crate) fn from_entries_unchecked(dim: usize, entries: Vec<Complex64>) -> Self {
        Self(HermitianMatrix::from_entries_unchecked(dim, entries))
    }

    pub fn as_hermitian(&self) -> &HermitianMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.0.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0.get(i, j)
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.0.eigenvalues()
    }

    /// `O rho O^T` for a real matrix `O` (row-major).
    pub fn conjugate_real(&self, o: &[f64]) -> Result<DensityMatrix> {
        let n = self.dim();
        if o.len() != n * n {
            return Err(Error::domain("rotation has the wrong dimension"));
        }
        let mut tmp = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                tmp[i * n + j] = (0..n).map(|k| self.get(i, k) * o[j * n + k]).sum();
            }
        }
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = (0..n).map(|k| o[i * n + k] * tmp[k * n + j]).sum();
            }
        }
        DensityMatrix::new(n, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_rejects_bad_matrices() {
        // wrong dimension
        assert!(DensityMatrix::diagonal(&[0.5, 0.25, 0.25]).is_err());
        // trace != 1
        assert!(DensityMatrix::diagonal(&[0.5, 0.6]).is_err());
        // negative eigenvalue
        assert!(DensityMatrix::diagonal(&[1.2, -0.2]).is_err());
        // non-hermitian
        let e = vec![
            Complex64::new(0.5, 0.0),
            Complex64::new(0.1, 0.0),
            Complex64::new(0.2, 0.0),
            Complex64::new(0.5, 0.0),
        ];
        assert!(DensityMatrix::new(2, e).is_err());
        assert!(DensityMatrix::maximally_mixed(4).is_ok());
    }
}

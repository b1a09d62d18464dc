use num_complex::Complex64;

use super::density::HermitianMatrix;
use crate::tol::{JACOBI_MAX_SWEEPS, JACOBI_OFFDIAG};

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Row-major unitary whose column `k` is the eigenvector of `values[k]`.
    pub vectors: Vec<Complex64>,
    pub dim: usize,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.vectors[i * self.dim + k]).collect()
    }
}

/// Eigenvalues in ascending order. Closed form for 2x2, cyclic Jacobi
/// otherwise.
pub fn hermitian_eigenvalues(m: &HermitianMatrix) -> Vec<f64> {
    if m.dim() == 1 {
        return vec![m.get(0, 0).re];
    }
    if m.dim() == 2 {
        let a = m.get(0, 0).re;
        let d = m.get(1, 1).re;
        let b = m.get(0, 1).norm();
        let mean = 0.5 * (a + d);
        let r = (0.25 * (a - d) * (a - d) + b * b).sqrt();
        return vec![mean - r, mean + r];
    }
    hermitian_eigen(m).values
}

/// Cyclic complex Jacobi: each rotation first removes the phase of the pivot
/// `a_pq`, then applies a real Givens rotation that zeroes it.
pub fn hermitian_eigen(m: &HermitianMatrix) -> HermitianEigen {
    let n = m.dim();
    let mut a = m.entries().to_vec();
    // enforce exact hermiticity of the working copy
    for i in 0..n {
        a[i * n + i] = Complex64::new(a[i * n + i].re, 0.0);
        for j in i + 1..n {
            let avg = 0.5 * (a[i * n + j] + a[j * n + i].conj());
            a[i * n + j] = avg;
            a[j * n + i] = avg.conj();
        }
    }
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a, n) < JACOBI_OFFDIAG {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r < 1e-300 {
                    continue;
                }
                let phase = apq / r;
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // J = diag-phase * Givens, restricted to (p, q)
                let jpp = Complex64::new(c, 0.0);
                let jpq = Complex64::new(s, 0.0);
                let jqp = -s * phase.conj();
                let jqq = c * phase.conj();
                // A <- A J
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * jpp + akq * jqp;
                    a[k * n + q] = akp * jpq + akq * jqq;
                }
                // A <- J^dagger A
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = jpp.conj() * apk + jqp.conj() * aqk;
                    a[q * n + k] = jpq.conj() * apk + jqq.conj() * aqk;
                }
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;
                // V <- V J
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * jpp + vkq * jqp;
                    v[k * n + q] = vkp * jpq + vkq * jqq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let mut vectors = vec![Complex64::new(0.0, 0.0); n * n];
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[row * n + col] = v[row * n + src];
        }
    }
    HermitianEigen {
        values,
        vectors,
        dim: n,
    }
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_spectrum() {
        let m = HermitianMatrix::from_real_rows(&[&[0.7, 0.0], &[0.0, 0.3]]).unwrap();
        let ev = hermitian_eigenvalues(&m);
        assert!((ev[0] - 0.3).abs() < 1e-15 && (ev[1] - 0.7).abs() < 1e-15);
    }

    #[test]
    fn pauli_y_spectrum() {
        let m = HermitianMatrix::new(2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]).unwrap();
        let ev = hermitian_eigenvalues(&m);
        assert!((ev[0] + 1.0).abs() < 1e-15 && (ev[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn non_hermitian_rejected() {
        assert!(HermitianMatrix::new(2, vec![c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]).is_err());
    }

    #[test]
    fn jacobi_vectors_diagonalize() {
        // Pauli-Y embedded in a 4x4 block matrix plus a complex coupling.
        let e = vec![
            c(1., 0.), c(0., -1.), c(0.2, 0.1), c(0., 0.),
            c(0., 1.), c(1., 0.), c(0., 0.), c(0.3, 0.),
            c(0.2, -0.1), c(0., 0.), c(-0.5, 0.), c(0., 0.4),
            c(0., 0.), c(0.3, 0.), c(0., -0.4), c(2., 0.),
        ];
        let m = HermitianMatrix::new(4, e.clone()).unwrap();
        let eig = hermitian_eigen(&m);
        for k in 0..4 {
            let x = eig.vector(k);
            for i in 0..4 {
                let mx: Complex64 = (0..4).map(|j| e[i * 4 + j] * x[j]).sum();
                assert!((mx - eig.values[k] * x[i]).norm() < 1e-12);
            }
        }
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }
}

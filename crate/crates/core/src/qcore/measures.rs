use num_complex::Complex64;

use super::density::{DensityMatrix, HermitianMatrix};
use super::eigen::{hermitian_eigen, hermitian_eigenvalues};
use super::state::{partial_trace, PureState, QubitSubset};
use crate::assist::CanonicalThreeQubit;
use crate::tol::{CONCURRENCE_SUPPORT_CUTOFF, ENTROPY_CUTOFF};
use crate::{Error, Result};

/// Singlet conversion probability across `side | rest`: twice the smallest
/// eigenvalue of the single-qubit marginal on `side`.
pub fn scp(state: &PureState, side: &QubitSubset) -> Result<f64> {
    if side.len() != 1 {
        return Err(Error::UnsupportedPartition(format!(
            "SCP is defined here for single-qubit sides only, got {:?}",
            side.indices()
        )));
    }
    let rho = partial_trace(state, side)?;
    let lmin = hermitian_eigenvalues(rho.as_hermitian())[0];
    Ok((2.0 * lmin).clamp(0.0, 1.0))
}

/// Pairwise measure `E2^{i|j}` of a three-qubit pure state: the smaller of
/// the two single-qubit SCPs. Equals the entanglement of assistance under
/// the SCP measure.
pub fn e2_pair(state: &PureState, i: usize, j: usize) -> Result<f64> {
    if state.num_qubits() != 3 {
        return Err(Error::domain(format!(
            "pairwise E2 needs a three-qubit state, got {} qubits",
            state.num_qubits()
        )));
    }
    if i == j || i > 2 || j > 2 {
        return Err(Error::domain(format!(
            "pair ({i}, {j}) must be two distinct qubits in 0..3"
        )));
    }
    let a = scp(state, &QubitSubset::single(i))?;
    let b = scp(state, &QubitSubset::single(j))?;
    Ok(a.min(b))
}

/// Wootters concurrence of a two-qubit density matrix.
///
/// The spin-flip roots `r_k` are the singular values of
/// `sqrt(rho) (Y⊗Y) sqrt(rho)*`. Writing `rho = V W V†` on its support, they
/// are the singular values of the `r x r` matrix `W^½ V† (Y⊗Y) V* W^½`, which
/// avoids square roots of round-off eigenvalues on the kernel.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::domain(format!(
            "concurrence needs a 4x4 density matrix, got {0}x{0}",
            rho.dim()
        )));
    }
    let eig = hermitian_eigen(rho.as_hermitian());
    let support: Vec<usize> = (0..4)
        .filter(|&k| eig.values[k] > CONCURRENCE_SUPPORT_CUTOFF)
        .collect();
    let r = support.len();
    // Y⊗Y is real: anti-diagonal (-1, 1, 1, -1).
    let flip = |v: &[Complex64]| -> Vec<Complex64> {
        (0..4)
            .map(|i| {
                let sign = if i == 0 || i == 3 { -1.0 } else { 1.0 };
                v[3 - i].conj() * sign
            })
            .collect()
    };
    let vecs: Vec<Vec<Complex64>> = support.iter().map(|&k| eig.vector(k)).collect();
    let weights: Vec<f64> = support.iter().map(|&k| eig.values[k].sqrt()).collect();
    let mut b = vec![Complex64::new(0.0, 0.0); r * r];
    for k in 0..r {
        for l in 0..r {
            let fl = flip(&vecs[l]);
            let m: Complex64 = (0..4).map(|i| vecs[k][i].conj() * fl[i]).sum();
            b[k * r + l] = m * weights[k] * weights[l];
        }
    }
    let c = match r {
        0 => 0.0,
        1 => b[0].norm(),
        2 => {
            // σ1 − σ2 = sqrt(‖B‖² − 2|det B|)
            let frob: f64 = b.iter().map(|z| z.norm_sqr()).sum();
            let det = (b[0] * b[3] - b[1] * b[2]).norm();
            (frob - 2.0 * det).max(0.0).sqrt()
        }
        _ => {
            let mut bb = vec![Complex64::new(0.0, 0.0); r * r];
            for i in 0..r {
                for j in 0..r {
                    bb[i * r + j] = (0..r).map(|k| b[k * r + i].conj() * b[k * r + j]).sum();
                }
            }
            let mut roots: Vec<f64> = hermitian_eigenvalues(&HermitianMatrix::new(r, bb)?)
                .into_iter()
                .map(|x| x.max(0.0).sqrt())
                .collect();
            roots.sort_by(|a, b| b.total_cmp(a));
            roots[0] - roots[1..].iter().sum::<f64>()
        }
    };
    Ok(c.clamp(0.0, 1.0))
}

/// Three-tangle of the canonical form as `4 λ0 λ4`.
///
/// Note this is not the conventional normalization: for GHZ it evaluates to
/// 2, where the Coffman-Kundu-Wootters tangle `4 λ0² λ4²` gives 1. Both vanish
/// exactly on the W class.
pub fn three_tangle(c: &CanonicalThreeQubit) -> f64 {
    4.0 * c.lambda(0) * c.lambda(4)
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.eigenvalues()
        .into_iter()
        .filter(|&l| l > ENTROPY_CUTOFF)
        .map(|l| -l * l.log2())
        .sum()
}

/// `H2(p)` in bits.
pub fn binary_entropy(p: f64) -> f64 {
    [p, 1.0 - p]
        .into_iter()
        .filter(|&x| x > ENTROPY_CUTOFF)
        .map(|x| -x * x.log2())
        .sum()
}

/// Robustness of imaginarity, `½‖ρ − ρᵀ‖₁` with the transpose taken in the
/// computational basis.
pub fn roi(rho: &DensityMatrix) -> f64 {
    let h = rho.as_hermitian();
    let diff = h - &h.transpose();
    0.5 * hermitian_eigenvalues(&diff)
        .into_iter()
        .map(f64::abs)
        .sum::<f64>()
}

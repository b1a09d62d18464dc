//! Numerical tolerances shared across the crate.

/// State normalization and basis orthonormality.
pub const EPS_NORM: f64 = 1e-12;
/// Smallest admissible (negative) eigenvalue of a density matrix.
pub const EPS_EIG: f64 = 1e-10;
/// Entrywise hermiticity check.
pub const EPS_HERM: f64 = 1e-10;
/// Jacobi sweeps stop once the off-diagonal Frobenius norm drops below this.
pub const JACOBI_OFFDIAG: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Eigenvalues below this contribute nothing to the entropy.
pub const ENTROPY_CUTOFF: f64 = 1e-14;
/// Measurement branches with smaller probability are not renormalized.
pub const BRANCH_CUTOFF: f64 = 1e-14;
/// Radicands within this distance below zero are clamped.
pub const RADICAND_CLAMP: f64 = 1e-14;
/// Eigenvalues of a two-qubit state below this are treated as kernel when
/// computing the concurrence.
pub const CONCURRENCE_SUPPORT_CUTOFF: f64 = 1e-13;
/// Maximum register size.
pub const MAX_QUBITS: usize = 6;

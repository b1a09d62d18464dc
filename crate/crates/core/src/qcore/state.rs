use num_complex::Complex64;

use super::density::DensityMatrix;
use crate::tol::{EPS_NORM, MAX_QUBITS};
use crate::{Error, Result};

/// Normalized pure state on `num_qubits` qubits.
///
/// Qubit 0 is the leftmost ket label and the most significant bit of the
/// amplitude index, so `|abc>` lives at index `4a + 2b + c`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Wraps an amplitude vector, which must already be normalized.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let num_qubits = qubits_for_len(amplitudes.len())?;
        let norm2 = norm_sqr(&amplitudes);
        if (norm2 - 1.0).abs() > EPS_NORM {
            return Err(Error::domain(format!(
                "amplitudes not normalized (norm^2 = {norm2})"
            )));
        }
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn from_unnormalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let num_qubits = qubits_for_len(amplitudes.len())?;
        let norm = norm_sqr(&amplitudes).sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::domain("cannot normalize a zero vector"));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// Computational basis state `|bits>` with `bits` read as a binary index.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::Capacity {
                qubits: num_qubits,
                max: MAX_QUBITS,
            });
        }
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::domain(format!(
                "basis index {index} out of range for {num_qubits} qubits"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        inner(&self.amplitudes, &other.amplitudes)
    }

    /// `|psi><psi|`.
    pub fn projector(&self) -> DensityMatrix {
        let n = self.dim();
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = self.amplitudes[i] * self.amplitudes[j].conj();
            }
        }
        DensityMatrix::from_entries_unchecked(n, entries)
    }

    /// Reorders qubits so that new qubit `k` is old qubit `order[k]`.
    pub fn permute_qubits(&self, order: &[usize]) -> Result<PureState> {
        let n = self.num_qubits;
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&q| q >= n || std::mem::replace(&mut seen[q], true))
        {
            return Err(Error::domain(format!(
                "{order:?} is not a permutation of {n} qubits"
            )));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (new_index, slot) in out.iter_mut().enumerate() {
            let mut old_index = 0usize;
            for (k, &q) in order.iter().enumerate() {
                let bit = (new_index >> (n - 1 - k)) & 1;
                old_index |= bit << (n - 1 - q);
            }
            *slot = self.amplitudes[old_index];
        }
        Ok(PureState {
            num_qubits: n,
            amplitudes: out,
        })
    }

    /// Contracts the qubits in `subset` with `<vector|` and returns the
    /// unnormalized residual on the remaining qubits, in their original order.
    pub fn contract(&self, subset: &QubitSubset, vector: &[Complex64]) -> Result<Vec<Complex64>> {
        subset.check_within(self.num_qubits)?;
        let k = subset.len();
        if vector.len() != 1 << k {
            return Err(Error::domain(format!(
                "measurement vector has length {}, expected {}",
                vector.len(),
                1usize << k
            )));
        }
        if k == self.num_qubits {
            return Err(Error::domain("cannot contract every qubit"));
        }
        let n = self.num_qubits;
        let rest: Vec<usize> = (0..n).filter(|q| !subset.contains(*q)).collect();
        let mut residual = vec![Complex64::new(0.0, 0.0); 1 << rest.len()];
        for (index, amp) in self.amplitudes.iter().enumerate() {
            let sub = gather_bits(index, n, subset.indices());
            let rem = gather_bits(index, n, &rest);
            residual[rem] += vector[sub].conj() * amp;
        }
        Ok(residual)
    }

    /// Probability of outcome `vector` on `subset` and the renormalized
    /// post-measurement state on the remaining qubits.
    pub fn measure_outcome(
        &self,
        subset: &QubitSubset,
        vector: &[Complex64],
        cutoff: f64,
    ) -> Result<(f64, Option<PureState>)> {
        let residual = self.contract(subset, vector)?;
        let p = norm_sqr(&residual);
        if p < cutoff {
            return Ok((p, None));
        }
        Ok((p, Some(PureState::from_unnormalized(residual)?)))
    }
}

/// Kronecker product `a ⊗ b`; `a`'s qubits come first.
pub fn tensor_product(a: &PureState, b: &PureState) -> Result<PureState> {
    let qubits = a.num_qubits + b.num_qubits;
    if qubits > MAX_QUBITS {
        return Err(Error::Capacity {
            qubits,
            max: MAX_QUBITS,
        });
    }
    let amplitudes: Vec<Complex64> = a
        .amplitudes
        .iter()
        .flat_map(|x| b.amplitudes.iter().map(move |y| x * y))
        .collect();
    PureState::from_unnormalized(amplitudes)
}

/// Reduced density matrix on `keep`, tracing out every other qubit.
pub fn partial_trace(state: &PureState, keep: &QubitSubset) -> Result<DensityMatrix> {
    let n = state.num_qubits;
    keep.check_within(n)?;
    if keep.len() == n {
        return Err(Error::domain("partial trace must discard at least one qubit"));
    }
    let discard: Vec<usize> = (0..n).filter(|q| !keep.contains(*q)).collect();
    let kd = 1usize << keep.len();
    let dd = 1usize << discard.len();
    // psi[k][d] as a kd x dd matrix, then rho = M M^dagger.
    let mut m = vec![Complex64::new(0.0, 0.0); kd * dd];
    for (index, amp) in state.amplitudes.iter().enumerate() {
        let k = gather_bits(index, n, keep.indices());
        let d = gather_bits(index, n, &discard);
        m[k * dd + d] = *amp;
    }
    let mut entries = vec![Complex64::new(0.0, 0.0); kd * kd];
    for i in 0..kd {
        for j in i..kd {
            let v: Complex64 = (0..dd).map(|d| m[i * dd + d] * m[j * dd + d].conj()).sum();
            entries[i * kd + j] = v;
            entries[j * kd + i] = v.conj();
        }
    }
    Ok(DensityMatrix::from_entries_unchecked(kd, entries))
}

/// Ordered, strictly increasing set of qubit positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QubitSubset(Vec<usize>);

impl QubitSubset {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::domain("qubit subset must be nonempty"));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain(format!(
                "qubit subset {indices:?} must be strictly increasing"
            )));
        }
        Ok(Self(indices))
    }

    pub fn single(q: usize) -> Self {
        Self(vec![q])
    }

    pub fn range(start: usize, end: usize) -> Result<Self> {
        Self::new((start..end).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, q: usize) -> bool {
        self.0.binary_search(&q).is_ok()
    }

    pub(crate) fn check_within(&self, num_qubits: usize) -> Result<()> {
        match self.0.last() {
            Some(&last) if last < num_qubits => Ok(()),
            _ => Err(Error::domain(format!(
                "qubit subset {:?} out of range for {num_qubits} qubits",
                self.0
            ))),
        }
    }
}

fn qubits_for_len(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::domain(format!(
            "amplitude vector length {len} is not 2^n with n >= 1"
        )));
    }
    let n = len.trailing_zeros() as usize;
    if n > MAX_QUBITS {
        return Err(Error::Capacity {
            qubits: n,
            max: MAX_QUBITS,
        });
    }
    Ok(n)
}

/// Packs the bits of `index` at `positions` (MSB-first qubit numbering) into
/// a new index, first position most significant.
fn gather_bits(index: usize, num_qubits: usize, positions: &[usize]) -> usize {
    positions.iter().fold(0, |acc, &q| {
        (acc << 1) | ((index >> (num_qubits - 1 - q)) & 1)
    })
}

pub(crate) fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum()
}

pub(crate) fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

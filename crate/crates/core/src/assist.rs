//! Entanglement of assistance on three-qubit pure states.
//!
//! A helper measures its qubit in a single-qubit basis and announces the
//! outcome; the remaining pair keeps the post-measurement state. The average
//! SCP of that pair over outcomes is the assisted yield, bounded above by the
//! pairwise `E2` of the original state.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::bases::{parametric_qubit_basis, verify_basis, ProjectiveBasis};
use crate::qcore::{e2_pair, scp, PureState, QubitSubset};
use crate::tol::{BRANCH_CUTOFF, EPS_NORM};
use crate::{Error, Result};

/// `λ0|000> + λ1 e^{iφ}|100> + λ2|101> + λ3|110> + λ4|111>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CanonicalThreeQubit {
    lambdas: [f64; 5],
    phi: f64,
}

impl CanonicalThreeQubit {
    pub fn new(lambdas: [f64; 5], phi: f64) -> Result<Self> {
        if lambdas.iter().any(|&l| !(l >= 0.0)) {
            return Err(Error::domain(format!(
                "canonical coefficients must be non-negative, got {lambdas:?}"
            )));
        }
        let norm: f64 = lambdas.iter().map(|l| l * l).sum();
        if (norm - 1.0).abs() > EPS_NORM {
            return Err(Error::domain(format!(
                "sum of squared coefficients is {norm}, expected 1"
            )));
        }
        if !(0.0..=PI).contains(&phi) {
            return Err(Error::domain(format!("phi = {phi} outside [0, π]")));
        }
        Ok(Self { lambdas, phi })
    }

    pub fn lambda(&self, i: usize) -> f64 {
        self.lambdas[i]
    }

    pub fn lambdas(&self) -> [f64; 5] {
        self.lambdas
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn to_state(&self) -> PureState {
        canonical_to_state(self)
    }
}

pub fn canonical_to_state(c: &CanonicalThreeQubit) -> PureState {
    let l = c.lambdas;
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    amps[0b000] = Complex64::new(l[0], 0.0);
    amps[0b100] = Complex64::from_polar(l[1], c.phi);
    amps[0b101] = Complex64::new(l[2], 0.0);
    amps[0b110] = Complex64::new(l[3], 0.0);
    amps[0b111] = Complex64::new(l[4], 0.0);
    PureState::new(amps).expect("canonical invariants imply normalization")
}

/// `λ0|000> + λ1|100> + λ4|111>`: only the B-C pair has nonzero concurrence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SliceState {
    pub lambda0: f64,
    pub lambda1: f64,
    pub lambda4: f64,
}

impl SliceState {
    pub fn new(lambda0: f64, lambda1: f64, lambda4: f64) -> Result<Self> {
        if !(lambda0 > 0.0 && lambda4 > 0.0 && lambda1 >= 0.0) {
            return Err(Error::domain(
                "slice state needs λ0 > 0, λ4 > 0 and λ1 >= 0",
            ));
        }
        let norm = lambda0 * lambda0 + lambda1 * lambda1 + lambda4 * lambda4;
        if (norm - 1.0).abs() > EPS_NORM {
            return Err(Error::domain(format!(
                "λ0² + λ1² + λ4² = {norm}, expected 1"
            )));
        }
        Ok(Self {
            lambda0,
            lambda1,
            lambda4,
        })
    }

    pub fn to_canonical(&self) -> CanonicalThreeQubit {
        CanonicalThreeQubit {
            lambdas: [self.lambda0, self.lambda1, 0.0, 0.0, self.lambda4],
            phi: 0.0,
        }
    }

    pub fn to_state(&self) -> PureState {
        self.to_canonical().to_state()
    }

    /// `E2^{A|B} = E2^{A|C} = 1 − √(1 − 4λ0²λ4²)`.
    pub fn eoa_ab(&self) -> f64 {
        let x = self.lambda0 * self.lambda4;
        1.0 - (1.0 - 4.0 * x * x).max(0.0).sqrt()
    }

    /// `E2^{B|C} = 2 min{λ4², 1 − λ4²}`.
    pub fn eoa_bc(&self) -> f64 {
        let l4 = self.lambda4 * self.lambda4;
        2.0 * l4.min(1.0 - l4)
    }
}

/// The one-parameter slice family `b|000> + b|100> + a|111>`, `a² + 2b² = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SliceFamilyParam {
    pub a: f64,
    pub b: f64,
}

impl SliceFamilyParam {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a >= 0.0 && b >= 0.0) {
            return Err(Error::domain("slice family needs a, b >= 0"));
        }
        let norm = a * a + 2.0 * b * b;
        if (norm - 1.0).abs() > EPS_NORM {
            return Err(Error::domain(format!("a² + 2b² = {norm}, expected 1")));
        }
        Ok(Self { a, b })
    }

    /// Solves the constraint for `b`; `a ∈ [0, 1]`.
    pub fn from_a(a: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::domain(format!("a = {a} outside [0, 1]")));
        }
        Self::new(a, ((1.0 - a * a) / 2.0).max(0.0).sqrt())
    }

    pub fn to_state(&self) -> PureState {
        CanonicalThreeQubit {
            lambdas: [self.b, self.b, 0.0, 0.0, self.a],
            phi: 0.0,
        }
        .to_state()
    }
}

/// `√x1|100> + √x2|010> + √x3|001>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeneralizedW {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl GeneralizedW {
    pub fn new(x1: f64, x2: f64, x3: f64) -> Result<Self> {
        if [x1, x2, x3].iter().any(|&x| !(x >= 0.0)) {
            return Err(Error::domain("generalized W weights must be non-negative"));
        }
        if (x1 + x2 + x3 - 1.0).abs() > EPS_NORM {
            return Err(Error::domain("generalized W weights must sum to 1"));
        }
        Ok(Self { x1, x2, x3 })
    }

    pub fn to_state(&self) -> PureState {
        let mut amps = vec![Complex64::new(0.0, 0.0); 8];
        amps[0b100] = Complex64::new(self.x1.sqrt(), 0.0);
        amps[0b010] = Complex64::new(self.x2.sqrt(), 0.0);
        amps[0b001] = Complex64::new(self.x3.sqrt(), 0.0);
        PureState::new(amps).expect("weights sum to one")
    }
}

/// Entanglement of assistance of the pair `(i, j)` under the SCP measure.
pub fn eoa_bound(state: &PureState, i: usize, j: usize) -> Result<f64> {
    e2_pair(state, i, j)
}

/// One outcome of the helper's measurement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssistBranch {
    pub probability: f64,
    /// SCP of the remaining two-qubit state (0 for null branches).
    pub scp: f64,
}

/// Per-outcome probabilities and SCPs when `helper` measures in `basis`.
pub fn assisted_branches(
    state: &PureState,
    helper: usize,
    basis: &ProjectiveBasis,
) -> Result<Vec<AssistBranch>> {
    if state.num_qubits() != 3 || helper > 2 {
        return Err(Error::domain(
            "assisted yield needs a three-qubit state and a helper in 0..3",
        ));
    }
    if basis.dim() != 2 {
        return Err(Error::domain("helper basis must be a single-qubit basis"));
    }
    let check = verify_basis(basis, 1e-10)?;
    if !check.passed {
        return Err(Error::domain(format!(
            "helper basis '{}' is not orthonormal (residual {:e})",
            basis.label(),
            check.orthonormality_residual.max(check.completeness_residual)
        )));
    }
    Ok(branches_unchecked(state, helper, basis))
}

fn branches_unchecked(state: &PureState, helper: usize, basis: &ProjectiveBasis) -> Vec<AssistBranch> {
    let side = QubitSubset::single(helper);
    basis
        .vectors()
        .iter()
        .map(|v| {
            let (p, post) = state
                .measure_outcome(&side, v, BRANCH_CUTOFF)
                .expect("three-qubit state and qubit vector");
            let scp = post
                .map(|s| scp(&s, &QubitSubset::single(0)).expect("two-qubit state"))
                .unwrap_or(0.0);
            AssistBranch { probability: p, scp }
        })
        .collect()
}

/// `Σ_k p_k SCP(post_k)` over the helper's outcomes.
pub fn assisted_yield(state: &PureState, helper: usize, basis: &ProjectiveBasis) -> Result<f64> {
    Ok(assisted_branches(state, helper, basis)?
        .iter()
        .map(|b| b.probability * b.scp)
        .sum())
}

/// Real-basis angle that maximizes the B-C yield of a slice state when A
/// assists: `α = arctan((√(1−λ4²) + λ1) / λ0)`.
pub fn optimal_real_alpha(s: &SliceState) -> f64 {
    ((1.0 - s.lambda4 * s.lambda4).max(0.0).sqrt() + s.lambda1).atan2(s.lambda0)
}

/// Closed-form B-C yield for the slice family when A measures in the
/// complex basis `(α, β)`, `α ∈ [0, π/4]`, `β ∈ [0, π)`.
pub fn e2_im_closed(p: &SliceFamilyParam, alpha: f64, beta: f64) -> f64 {
    let (a2, b2) = (p.a * p.a, p.b * p.b);
    let (s, c) = alpha.sin_cos();
    let x = (2.0 * alpha).sin() * beta.cos();
    2.0 * (a2 * s * s).min(b2 * (1.0 + x)) + 2.0 * (a2 * c * c).min(b2 * (1.0 - x))
}

/// [`e2_im_closed`] at `β = 0`.
pub fn e2_re_closed(p: &SliceFamilyParam, alpha: f64) -> f64 {
    e2_im_closed(p, alpha, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BasisOptimum {
    pub alpha: f64,
    pub beta: f64,
    #[serde(rename = "yield")]
    pub yield_value: f64,
}

pub const OPTIMIZER_GRID: usize = 64;
pub const OPTIMIZER_MIN_STEP: f64 = 1e-6;

/// Best single-qubit basis for `helper` over `α ∈ [0, π/2)`, `β ∈ [0, π)`.
///
/// A 64x64 grid picks the starting point (ties go to the smallest `(α, β)`),
/// then a compass search halves its step until it is below 1e-6.
pub fn optimize_qubit_basis(state: &PureState, helper: usize) -> Result<BasisOptimum> {
    if state.num_qubits() != 3 || helper > 2 {
        return Err(Error::domain(
            "basis optimization needs a three-qubit state and a helper in 0..3",
        ));
    }
    let eval = |alpha: f64, beta: f64| -> f64 {
        branches_unchecked(state, helper, &parametric_qubit_basis(alpha, beta))
            .iter()
            .map(|b| b.probability * b.scp)
            .sum()
    };
    let da = FRAC_PI_2 / OPTIMIZER_GRID as f64;
    let db = PI / OPTIMIZER_GRID as f64;
    let values: Vec<f64> = (0..OPTIMIZER_GRID * OPTIMIZER_GRID)
        .into_par_iter()
        .map(|k| eval((k / OPTIMIZER_GRID) as f64 * da, (k % OPTIMIZER_GRID) as f64 * db))
        .collect();
    let mut best_k = 0;
    for (k, &v) in values.iter().enumerate() {
        if v > values[best_k] {
            best_k = k;
        }
    }
    let mut alpha = (best_k / OPTIMIZER_GRID) as f64 * da;
    let mut beta = (best_k % OPTIMIZER_GRID) as f64 * db;
    let mut best = values[best_k];
    let (mut sa, mut sb) = (da, db);
    while sa.max(sb) >= OPTIMIZER_MIN_STEP {
        let candidates = [
            (alpha - sa, beta),
            (alpha + sa, beta),
            (alpha, beta - sb),
            (alpha, beta + sb),
        ];
        let mut moved = false;
        for (a, b) in candidates {
            let a = a.clamp(0.0, FRAC_PI_2);
            let b = b.clamp(0.0, PI);
            let v = eval(a, b);
            if v > best {
                best = v;
                alpha = a;
                beta = b;
                moved = true;
            }
        }
        if !moved {
            sa *= 0.5;
            sb *= 0.5;
        }
    }
    Ok(BasisOptimum {
        alpha,
        beta,
        yield_value: best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{complex_qubit_basis, computational_basis, real_qubit_basis};
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

    fn basis(label: &str) -> ProjectiveBasis {
        ProjectiveBasis::from_label(label).unwrap()
    }

    #[test]
    fn canonical_examples() {
        let h = FRAC_1_SQRT_2;
        let ghz = CanonicalThreeQubit::new([h, 0.0, 0.0, 0.0, h], 0.0).unwrap().to_state();
        assert!((ghz.amplitude(0).re - h).abs() < 1e-15 && (ghz.amplitude(7).re - h).abs() < 1e-15);
        let s = SliceState::new(0.6, 0.0, 0.8).unwrap();
        let st = s.to_state();
        assert_eq!(st.amplitude(0).re, 0.6);
        assert_eq!(st.amplitude(7).re, 0.8);
        assert!(CanonicalThreeQubit::new([0.5; 5], 0.0).is_err());
        assert!(CanonicalThreeQubit::new([1.0, 0.0, 0.0, 0.0, 0.0], 4.0).is_err());
        assert!(SliceState::new(0.0, 0.6, 0.8).is_err());
        assert!(SliceFamilyParam::new(0.5, 0.5).is_err());
        assert!(GeneralizedW::new(0.5, 0.5, 0.5).is_err());
    }

    #[test]
    fn slice_eoa_formulas() {
        let s = SliceState::new(0.5, 0.5, FRAC_1_SQRT_2).unwrap();
        let st = s.to_state();
        assert!((eoa_bound(&st, 0, 1).unwrap() - s.eoa_ab()).abs() < 1e-12);
        assert!((eoa_bound(&st, 0, 2).unwrap() - s.eoa_ab()).abs() < 1e-12);
        assert!((eoa_bound(&st, 1, 2).unwrap() - s.eoa_bc()).abs() < 1e-12);
        assert!(eoa_bound(&st, 2, 2).is_err());
    }

    #[test]
    fn w_state_bound() {
        let t = 1.0 / 3.0;
        let w = GeneralizedW::new(t, t, t).unwrap().to_state();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            assert!((eoa_bound(&w, i, j).unwrap() - 2.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn optimal_bases_reach_the_bound() {
        // gGHZ, C assists with |±>
        let g = CanonicalThreeQubit::new([0.8, 0.0, 0.0, 0.0, 0.6], 0.0).unwrap().to_state();
        let y = assisted_yield(&g, 2, &basis("pauli-x")).unwrap();
        assert!((y - eoa_bound(&g, 0, 1).unwrap()).abs() < 1e-12);
        // gW, C assists in the computational basis
        let w = GeneralizedW::new(0.5, 0.3, 0.2).unwrap().to_state();
        let y = assisted_yield(&w, 2, &computational_basis(1)).unwrap();
        assert!((y - eoa_bound(&w, 0, 1).unwrap()).abs() < 1e-12);
        // slice, A assists with the hat basis
        let s = SliceState::new(0.6, 0.3, (1.0f64 - 0.45).sqrt()).unwrap();
        let y = assisted_yield(&s.to_state(), 0, &basis("hat")).unwrap();
        assert!((y - s.eoa_bc()).abs() < 1e-12);
    }

    #[test]
    fn invalid_basis_rejected() {
        let s = SliceState::new(0.6, 0.0, 0.8).unwrap().to_state();
        let mut b = basis("hat");
        b.scale_vector(0, 0.9);
        assert!(assisted_yield(&s, 0, &b).is_err());
        assert!(assisted_yield(&s, 0, &crate::bases::ghz_basis()).is_err());
        assert!(assisted_yield(&s, 3, &basis("hat")).is_err());
    }

    #[test]
    fn optimal_real_alpha_examples() {
        let l = (3.0f64 / 8.0).sqrt();
        let s = SliceState::new(l, l, 0.5).unwrap();
        assert!((optimal_real_alpha(&s) - 3.0 * PI / 8.0).abs() < 1e-12);
        assert!((optimal_real_alpha(&s) - (1.0 + 2f64.sqrt()).atan()).abs() < 1e-12);
        let g = SliceState::new(FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2).unwrap();
        assert!((optimal_real_alpha(&g) - FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn optimal_real_alpha_beats_grid() {
        for (l0, l1) in [(0.6, 0.3), (0.3, 0.2), (0.8, 0.1), (0.5, 0.5)] {
            let l4 = (1.0f64 - l0 * l0 - l1 * l1).sqrt();
            let s = SliceState::new(l0, l1, l4).unwrap();
            let st = s.to_state();
            let best = assisted_yield(&st, 0, &real_qubit_basis(optimal_real_alpha(&s)).unwrap()).unwrap();
            for k in 0..200 {
                let a = k as f64 * FRAC_PI_2 / 200.0;
                let y = assisted_yield(&st, 0, &real_qubit_basis(a).unwrap()).unwrap();
                assert!(best >= y - 1e-12, "alpha {a}: {y} > {best}");
            }
        }
    }

    #[test]
    fn closed_forms() {
        let p = SliceFamilyParam::from_a(FRAC_1_SQRT_2).unwrap();
        assert!((e2_im_closed(&p, FRAC_PI_4, FRAC_PI_2) - 1.0).abs() < 1e-12);
        let p = SliceFamilyParam::from_a(0.4).unwrap();
        let (a2, b2) = (p.a * p.a, p.b * p.b);
        for alpha in [0.0, 0.2, 0.5, FRAC_PI_4] {
            let s2 = alpha.sin().powi(2);
            let want = 2.0 * (a2 * s2).min(b2) + 2.0 * (a2 * (1.0 - s2)).min(b2);
            assert!((e2_im_closed(&p, alpha, FRAC_PI_2) - want).abs() < 1e-14);
            assert_eq!(e2_re_closed(&p, alpha), e2_im_closed(&p, alpha, 0.0));
        }
        assert!((e2_re_closed(&p, 0.0) - 2.0 * a2.min(b2)).abs() < 1e-15);
    }

    #[test]
    fn closed_form_matches_simulation() {
        let p = SliceFamilyParam::from_a(0.55).unwrap();
        let st = p.to_state();
        for (alpha, beta) in [(0.1, 0.3), (0.7, 2.0), (FRAC_PI_4, FRAC_PI_2)] {
            let y = assisted_yield(&st, 0, &complex_qubit_basis(alpha, beta).unwrap()).unwrap();
            assert!((y - e2_im_closed(&p, alpha, beta)).abs() < 1e-12);
        }
    }

    #[test]
    fn optimizer_finds_bounds() {
        let g = CanonicalThreeQubit::new([0.8, 0.0, 0.0, 0.0, 0.6], 0.0).unwrap().to_state();
        let o = optimize_qubit_basis(&g, 2).unwrap();
        assert!((o.yield_value - eoa_bound(&g, 0, 1).unwrap()).abs() < 1e-9);
        let s = SliceState::new(0.5, 0.6, (1.0f64 - 0.61).sqrt()).unwrap();
        let o = optimize_qubit_basis(&s.to_state(), 0).unwrap();
        assert!((o.yield_value - s.eoa_bc()).abs() < 1e-6, "{o:?}");
    }
}

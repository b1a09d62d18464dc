//! Three-qubit entanglement swapping.
//!
//! Three copies of `√φ0|00> + √φ1|11>` are shared between A1-B, A2-C and
//! A3-D. A measures A1A2A3 jointly in an eight-element basis; each outcome
//! leaves B, C, D in a three-qubit pure state whose pairwise `E2` is the
//! entanglement that can later be concentrated between any two of them.

use serde::Serialize;

use crate::bases::{verify_basis, ProjectiveBasis};
use crate::qcore::{e2_pair, tensor_product, PureState, QubitSubset};
use crate::tol::{BRANCH_CUTOFF, EPS_NORM, RADICAND_CLAMP};
use crate::{Error, Result};

/// Schmidt weights of the shared pair, `φ0 >= φ1 >= 0`, `φ0 + φ1 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoQubitPhi {
    pub phi0: f64,
    pub phi1: f64,
}

impl TwoQubitPhi {
    pub fn new(phi0: f64, phi1: f64) -> Result<Self> {
        if !(phi1 >= 0.0 && phi0 >= phi1) {
            return Err(Error::domain(format!(
                "need φ0 >= φ1 >= 0, got φ0 = {phi0}, φ1 = {phi1}"
            )));
        }
        if (phi0 + phi1 - 1.0).abs() > EPS_NORM {
            return Err(Error::domain(format!("φ0 + φ1 = {}, expected 1", phi0 + phi1)));
        }
        Ok(Self { phi0, phi1 })
    }

    /// `φ1 ∈ [0, 1/2]`.
    pub fn from_phi1(phi1: f64) -> Result<Self> {
        check_phi1(phi1)?;
        Self::new(1.0 - phi1, phi1)
    }

    pub fn pair_state(&self) -> PureState {
        PureState::from_real(&[self.phi0.sqrt(), 0.0, 0.0, self.phi1.sqrt()])
            .expect("weights sum to one")
    }
}

fn check_phi1(phi1: f64) -> Result<()> {
    if !(0.0..=0.5).contains(&phi1) {
        return Err(Error::domain(format!("φ1 = {phi1} outside [0, 1/2]")));
    }
    Ok(())
}

/// `|φ>_{A1B} ⊗ |φ>_{A2C} ⊗ |φ>_{A3D}` with qubit order (A1, A2, A3, B, C, D).
pub fn network_state(phi: &TwoQubitPhi) -> PureState {
    let pair = phi.pair_state();
    let four = tensor_product(&pair, &pair).expect("4 qubits");
    let six = tensor_product(&four, &pair).expect("6 qubits");
    // tensor order is (A1, B, A2, C, A3, D)
    six.permute_qubits(&[0, 2, 4, 1, 3, 5])
        .expect("valid permutation")
}

/// One branch of A's joint measurement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SwapOutcome {
    /// Position of the measured element in the basis.
    pub index: usize,
    pub probability: f64,
    /// Normalized state of (B, C, D); `None` for null branches.
    #[serde(skip)]
    pub post_state: Option<PureState>,
    /// `E2` of the (B, C) pair; 0 for null branches.
    pub e2: f64,
}

/// Measures A1A2A3 of [`network_state`] in `basis`.
pub fn swap_measure(phi: &TwoQubitPhi, basis: &ProjectiveBasis) -> Result<Vec<SwapOutcome>> {
    if basis.dim() != 8 {
        return Err(Error::domain("swap measurement needs a three-qubit basis"));
    }
    let check = verify_basis(basis, 1e-10)?;
    if !check.passed {
        return Err(Error::domain(format!(
            "basis '{}' failed verification (residual {:e})",
            basis.label(),
            check.orthonormality_residual.max(check.completeness_residual)
        )));
    }
    let network = network_state(phi);
    let alice = QubitSubset::range(0, 3)?;
    basis
        .vectors()
        .iter()
        .enumerate()
        .map(|(index, v)| {
            let (probability, post_state) = network.measure_outcome(&alice, v, BRANCH_CUTOFF)?;
            let e2 = match &post_state {
                Some(s) => e2_pair(s, 0, 1)?,
                None => 0.0,
            };
            Ok(SwapOutcome {
                index,
                probability,
                post_state,
                e2,
            })
        })
        .collect()
}

/// `Σ_i p_i E2_i` over the outcomes of [`swap_measure`].
pub fn simulated_yield(phi: &TwoQubitPhi, basis: &ProjectiveBasis) -> Result<f64> {
    Ok(swap_measure(phi, basis)?
        .iter()
        .map(|o| o.probability * o.e2)
        .sum())
}

/// GHZ-basis yield `2 φ1² (φ1 + 3 φ0)`.
pub fn yield_ghz_closed(phi1: f64) -> Result<f64> {
    check_phi1(phi1)?;
    let phi0 = 1.0 - phi1;
    Ok(2.0 * phi1 * phi1 * (phi1 + 3.0 * phi0))
}

/// `k = φ0³ + φ1³ + 3 φ0 φ1²`: five times the probability of each GHZ-like
/// GW outcome.
pub fn gw_k(phi1: f64) -> f64 {
    let phi0 = 1.0 - phi1;
    phi0.powi(3) + phi1.powi(3) + 3.0 * phi0 * phi1 * phi1
}

fn gw_radical(phi1: f64) -> f64 {
    let phi0 = 1.0 - phi1;
    let k = gw_k(phi1);
    let radicand = k * k - 4.0 * phi0 * phi0 * phi1 * phi1 * (2.0 - 3.0 * phi0 * phi1);
    if (-RADICAND_CLAMP..0.0).contains(&radicand) {
        0.0
    } else {
        radicand.sqrt()
    }
}

/// `E2` of each GHZ-like GW outcome: `(k − √(k² − 4φ0²φ1²(2 − 3φ0φ1))) / k`.
pub fn gw_ghz_outcome_e2(phi1: f64) -> Result<f64> {
    check_phi1(phi1)?;
    let k = gw_k(phi1);
    Ok((k - gw_radical(phi1)) / k)
}

/// GW-basis yield
/// `1 − φ0²φ1 − √((φ0³+φ1³+3φ0φ1²)² − 4φ0²φ1²(2 − 3φ0φ1))`.
pub fn yield_gw_closed(phi1: f64) -> Result<f64> {
    check_phi1(phi1)?;
    let phi0 = 1.0 - phi1;
    Ok(1.0 - phi0 * phi0 * phi1 - gw_radical(phi1))
}

/// `yield_gw − yield_ghz`.
pub fn advantage(phi1: f64) -> Result<f64> {
    Ok(yield_gw_closed(phi1)? - yield_ghz_closed(phi1)?)
}

pub const CROSSOVER_BRACKET: (f64, f64) = (0.3, 0.45);
const CROSSOVER_TOL: f64 = 1e-8;
const ADVANTAGE_TOL: f64 = 1e-7;

/// `φ1` above which the GHZ basis out-yields the GW basis.
pub fn crossover_phi1() -> Result<f64> {
    let (mut lo, mut hi) = CROSSOVER_BRACKET;
    let f_lo = advantage(lo)?;
    if f_lo.signum() == advantage(hi)?.signum() {
        return Err(Error::Numerical(
            "advantage has no sign change on the crossover bracket".into(),
        ));
    }
    while hi - lo >= CROSSOVER_TOL {
        let mid = 0.5 * (lo + hi);
        if advantage(mid)?.signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaxAdvantage {
    pub phi1: f64,
    pub advantage: f64,
}

/// Golden-section maximization of the GW advantage on `[0, crossover]`.
pub fn max_advantage() -> Result<MaxAdvantage> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (0.0, crossover_phi1()?);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (advantage(c)?, advantage(d)?);
    while b - a >= ADVANTAGE_TOL {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = advantage(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = advantage(d)?;
        }
    }
    let phi1 = 0.5 * (a + b);
    Ok(MaxAdvantage {
        phi1,
        advantage: advantage(phi1)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct YieldCurvePoint {
    pub phi1: f64,
    pub yield_ghz: f64,
    pub yield_gw: f64,
    pub advantage: f64,
}

/// Closed-form yields on `from, from + step, ...` up to `to`.
pub fn sweep_yields(from: f64, to: f64, step: f64) -> Result<Vec<YieldCurvePoint>> {
    if !(0.0 <= from && from < to && to <= 0.5) {
        return Err(Error::domain(format!(
            "sweep range must satisfy 0 <= from < to <= 0.5, got [{from}, {to}]"
        )));
    }
    if !(step > 0.0) {
        return Err(Error::domain(format!("step must be positive, got {step}")));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    (0..count)
        .map(|i| {
            let phi1 = (from + i as f64 * step).min(to);
            let yield_ghz = yield_ghz_closed(phi1)?;
            let yield_gw = yield_gw_closed(phi1)?;
            Ok(YieldCurvePoint {
                phi1,
                yield_ghz,
                yield_gw,
                advantage: yield_gw - yield_ghz,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{ghz_basis, gw_basis};
    use num_complex::Complex64;
    use std::f64::consts::PI;

    #[test]
    fn network_state_limits() {
        let s = network_state(&TwoQubitPhi::from_phi1(0.0).unwrap());
        assert!((s.amplitude(0).re - 1.0).abs() < 1e-15);
        let s = network_state(&TwoQubitPhi::from_phi1(0.5).unwrap());
        let amp = 0.5f64.powf(1.5);
        for bits in 0..8usize {
            let idx = (bits << 3) | bits;
            assert!((s.amplitude(idx).re - amp).abs() < 1e-15);
        }
        assert!((s.norm_sqr() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn network_state_amplitude_pattern() {
        let (p0, p1) = (0.7f64, 0.3f64);
        let s = network_state(&TwoQubitPhi::from_phi1(p1).unwrap());
        let want = |ones: i32| p0.powf(1.5 - 0.5 * ones as f64) * p1.powf(0.5 * ones as f64);
        for bits in 0..8usize {
            let ones = bits.count_ones() as i32;
            let got = s.amplitude((bits << 3) | bits).re;
            assert!((got - want(ones)).abs() < 1e-15, "bits {bits:03b}");
        }
        // φ1√φ0 on the double excitations
        assert!((s.amplitude(0b110_110).re - 0.3 * 0.7f64.sqrt()).abs() < 1e-15);
        assert!((s.amplitude(0b111_111).re - 0.3f64.powf(1.5)).abs() < 1e-15);
        // uncorrelated strings are absent
        assert_eq!(s.amplitude(0b100_010).norm(), 0.0);
    }

    #[test]
    fn gw_outcome_data() {
        for p1 in [0.1, 0.25, 0.4, 0.5] {
            let phi = TwoQubitPhi::from_phi1(p1).unwrap();
            let out = swap_measure(&phi, &gw_basis()).unwrap();
            let k = gw_k(p1);
            let p0 = 1.0 - p1;
            for o in &out[..5] {
                assert!((o.probability - k / 5.0).abs() < 1e-12);
                assert!((o.e2 - gw_ghz_outcome_e2(p1).unwrap()).abs() < 1e-10);
            }
            for o in &out[5..] {
                assert!((o.probability - p0 * p0 * p1).abs() < 1e-12);
                assert!((o.e2 - 2.0 / 3.0).abs() < 1e-10);
            }
        }
    }

    /// The listed GW post-measurement states, with `a`, `w` the roots of unity.
    fn listed_post_state(line: usize, p1: f64) -> Vec<Complex64> {
        let p0 = 1.0 - p1;
        let root = |n: usize, k: usize| Complex64::from_polar(1.0, 2.0 * PI * (k % n) as f64 / n as f64);
        let mut v = vec![Complex64::new(0.0, 0.0); 8];
        if line < 5 {
            v[0] = Complex64::new(p0.powf(1.5), 0.0);
            let d = p1 * p0.sqrt();
            v[6] = d * root(5, line);
            v[5] = d * root(5, 2 * line);
            v[3] = d * root(5, 3 * line);
            v[7] = p1.powf(1.5) * root(5, 4 * line);
        } else {
            let m = line - 5;
            v[4] = Complex64::new(1.0, 0.0);
            v[2] = root(3, m);
            v[1] = root(3, 2 * m);
        }
        v
    }

    #[test]
    fn gw_outcomes_match_listed_states() {
        for p1 in [0.1, 0.3] {
            let out = swap_measure(&TwoQubitPhi::from_phi1(p1).unwrap(), &gw_basis()).unwrap();
            for (m, o) in out.iter().enumerate() {
                // measuring an element leaves the complex-conjugate phases
                let line = if m < 5 { (5 - m) % 5 } else { 5 + (3 - (m - 5)) % 3 };
                let listed = PureState::from_unnormalized(listed_post_state(line, p1)).unwrap();
                let overlap = listed.inner(o.post_state.as_ref().unwrap()).norm();
                assert!((overlap - 1.0).abs() < 1e-10, "outcome {m}: overlap {overlap}");
            }
        }
    }

    #[test]
    fn ghz_outcomes_are_symmetric() {
        let out = swap_measure(&TwoQubitPhi::from_phi1(0.2).unwrap(), &ghz_basis()).unwrap();
        let total: f64 = out.iter().map(|o| o.probability).sum();
        assert!((total - 1.0).abs() < 1e-12);
        // |000>±|111> branches
        let p0: f64 = 0.8;
        let p1: f64 = 0.2;
        assert!((out[0].probability - (p0.powi(3) + p1.powi(3)) / 2.0).abs() < 1e-14);
        assert!((out[0].e2 - 2.0 * p1.powi(3) / (p0.powi(3) + p1.powi(3))).abs() < 1e-12);
        assert!((out[2].e2 - 2.0 * p1).abs() < 1e-12);
    }

    #[test]
    fn closed_form_examples() {
        assert!((yield_ghz_closed(0.5).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(yield_ghz_closed(0.0).unwrap(), 0.0);
        assert!((yield_ghz_closed(0.2).unwrap() - 0.208).abs() < 1e-15);
        assert!(yield_gw_closed(0.0).unwrap().abs() < 1e-15);
        assert!((yield_gw_closed(0.5).unwrap() - 0.59549).abs() < 1e-5);
        assert!(yield_gw_closed(0.6).is_err());
        assert!(yield_ghz_closed(-0.1).is_err());
    }

    #[test]
    fn crossover_and_maximum() {
        let c = crossover_phi1().unwrap();
        assert!((c - 0.39493).abs() < 5e-4);
        assert!(advantage(0.2).unwrap() > 0.0);
        assert!(advantage(0.45).unwrap() < 0.0);
        assert!(advantage(c).unwrap().abs() < 1e-6);
        let m = max_advantage().unwrap();
        assert!((m.phi1 - 0.206).abs() < 1e-3);
        assert!((m.advantage - 0.191).abs() < 1e-3);
    }

    #[test]
    fn sweep_grid() {
        let pts = sweep_yields(0.0, 0.5, 0.1).unwrap();
        assert_eq!(pts.len(), 6);
        assert!(pts[3].advantage > 0.0 && pts[4].advantage < 0.0);
        assert!(pts.windows(2).all(|w| w[0].phi1 < w[1].phi1));
        assert_eq!(pts[5].phi1, 0.5);
        for p in &pts {
            assert_eq!(p.advantage, p.yield_gw - p.yield_ghz);
        }
        assert!(sweep_yields(0.3, 0.2, 0.1).is_err());
        assert!(sweep_yields(0.0, 0.6, 0.1).is_err());
        assert!(sweep_yields(0.0, 0.5, 0.0).is_err());
    }
}

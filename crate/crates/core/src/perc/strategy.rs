use serde::Serialize;

use crate::bases::{basis_average_roi, basis_average_scp, ghz_basis, gw_basis};
use crate::qcore::binary_entropy;
use crate::{Error, Result};

/// Site percolation threshold of the triangular lattice.
pub const TRIANGULAR_SITE_THRESHOLD: f64 = 0.5;

/// Bond percolation threshold of the honeycomb lattice, `1 − 2 sin(π/18)`.
pub const HONEYCOMB_BOND_THRESHOLD: f64 = 0.652_703_644_666_139_3;

/// Probability that a GW-measured triangle yields a Bell pair.
pub fn p0_of_phi1(phi1: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&phi1) {
        return Err(Error::domain(format!("φ1 = {phi1} outside [0, 1/2]")));
    }
    let phi0 = 1.0 - phi1;
    let k = phi0 * phi0 * phi0 + phi1 * phi1 * phi1 + 3.0 * phi0 * phi1 * phi1;
    let r = k * k - 4.0 * phi0 * phi0 * phi1 * phi1 * (2.0 - 3.0 * phi0 * phi1);
    Ok(1.0 - phi0 * phi0 * phi1 - r.max(0.0).sqrt())
}

/// Smallest `φ1` for which `p0` exceeds the triangular site threshold.
pub fn phi1_percolation_threshold() -> Result<f64> {
    let (mut lo, mut hi) = (0.1, 0.4);
    let f = |x: f64| p0_of_phi1(x).map(|p| p - TRIANGULAR_SITE_THRESHOLD);
    if f(lo)? >= 0.0 || f(hi)? <= 0.0 {
        return Err(Error::Numerical("p0 − 1/2 does not change sign on (0.1, 0.4)".into()));
    }
    while hi - lo >= 1e-8 {
        let mid = 0.5 * (lo + hi);
        if f(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Resource comparison of the GHZ and GW measurement strategies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StrategyReport {
    /// Minimal bond SCP with the GHZ basis (honeycomb bond threshold).
    pub p_ghz: f64,
    /// Minimal bond SCP with the GW basis, `2 φ1*`.
    pub p_gw: f64,
    /// Entanglement (ebits) of the weakest usable bond, GHZ strategy.
    pub s_ghz: f64,
    /// Same for the GW strategy.
    pub s_gw: f64,
    pub bond_reduction_pct: f64,
    pub ebit_reduction_pct: f64,
    pub gw_avg_scp: f64,
    pub gw_avg_roi: f64,
    pub ghz_avg_scp: f64,
    pub ghz_avg_roi: f64,
}

pub fn strategy_report() -> Result<StrategyReport> {
    let phi1_gw = phi1_percolation_threshold()?;
    let p_ghz = HONEYCOMB_BOND_THRESHOLD;
    // a bond |φ> converts to a singlet with probability 2 φ1
    let p_gw = 2.0 * phi1_gw;
    let s_ghz = binary_entropy(p_ghz / 2.0);
    let s_gw = binary_entropy(phi1_gw);
    let (gw, ghz) = (gw_basis(), ghz_basis());
    Ok(StrategyReport {
        p_ghz,
        p_gw,
        s_ghz,
        s_gw,
        bond_reduction_pct: 100.0 * (p_ghz - p_gw) / p_ghz,
        ebit_reduction_pct: 100.0 * (s_ghz - s_gw) / s_ghz,
        gw_avg_scp: basis_average_scp(&gw)?,
        gw_avg_roi: basis_average_roi(&gw)?,
        ghz_avg_scp: basis_average_scp(&ghz)?,
        ghz_avg_roi: basis_average_roi(&ghz)?,
    })
}

//! Python module `iqconc`.

use std::collections::BTreeMap;

use iqconc_core::assist::{self, CanonicalThreeQubit, SliceFamilyParam};
use iqconc_core::bases::{self, ProjectiveBasis};
use iqconc_core::perc::{self, PercolationModel};
use iqconc_core::qcore::{self, PureState, QubitSubset};
use iqconc_core::swap::{self, TwoQubitPhi};
use iqconc_core::{Complex64, Error};
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Numerical(m) => PyArithmeticError::new_err(m),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn state_from(amplitudes: Vec<Complex64>) -> PyResult<PureState> {
    PureState::new(amplitudes).map_err(to_py)
}

/// Single- or three-qubit projective measurement basis.
#[pyclass(name = "Basis", frozen)]
struct PyBasis(ProjectiveBasis);

#[pymethods]
impl PyBasis {
    /// Build from a label: ghz, gw, pauli-x, hat, computational, real:<a>,
    /// complex:<a>,<b>.
    #[new]
    fn new(label: &str) -> PyResult<Self> {
        ProjectiveBasis::from_label(label).map(PyBasis).map_err(to_py)
    }

    #[getter]
    fn label(&self) -> String {
        self.0.label().to_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn vectors(&self) -> Vec<Vec<Complex64>> {
        self.0.vectors().to_vec()
    }

    /// `(orthonormality_residual, completeness_residual, passed)`.
    #[pyo3(signature = (tol = 1e-12))]
    fn verify(&self, tol: f64) -> PyResult<(f64, f64, bool)> {
        let v = bases::verify_basis(&self.0, tol).map_err(to_py)?;
        Ok((v.orthonormality_residual, v.completeness_residual, v.passed))
    }

    fn average_scp(&self) -> PyResult<f64> {
        bases::basis_average_scp(&self.0).map_err(to_py)
    }

    fn average_roi(&self) -> PyResult<f64> {
        bases::basis_average_roi(&self.0).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Basis('{}')", self.0.label())
    }
}

/// Three-qubit state in canonical form with coefficients λ0..λ4 and phase φ.
#[pyclass(name = "CanonicalState", frozen)]
struct PyCanonical(CanonicalThreeQubit);

#[pymethods]
impl PyCanonical {
    #[new]
    #[pyo3(signature = (lambdas, phi = 0.0))]
    fn new(lambdas: [f64; 5], phi: f64) -> PyResult<Self> {
        CanonicalThreeQubit::new(lambdas, phi).map(PyCanonical).map_err(to_py)
    }

    /// `b|000> + b|100> + a|111>` with `a² + 2b² = 1`.
    #[staticmethod]
    fn slice_family(a: f64) -> PyResult<Self> {
        let p = SliceFamilyParam::from_a(a).map_err(to_py)?;
        Ok(PyCanonical(CanonicalThreeQubit::new([p.b, p.b, 0.0, 0.0, p.a], 0.0).map_err(to_py)?))
    }

    #[getter]
    fn lambdas(&self) -> [f64; 5] {
        self.0.lambdas()
    }

    #[getter]
    fn phi(&self) -> f64 {
        self.0.phi()
    }

    fn amplitudes(&self) -> Vec<Complex64> {
        self.0.to_state().amplitudes().to_vec()
    }

    fn e2_pair(&self, i: usize, j: usize) -> PyResult<f64> {
        qcore::e2_pair(&self.0.to_state(), i, j).map_err(to_py)
    }

    /// Wootters concurrence of the reduced state of qubits `i < j`.
    fn concurrence(&self, i: usize, j: usize) -> PyResult<f64> {
        let keep = QubitSubset::new(vec![i, j]).map_err(to_py)?;
        let rho = qcore::partial_trace(&self.0.to_state(), &keep).map_err(to_py)?;
        qcore::wootters_concurrence(&rho).map_err(to_py)
    }

    fn three_tangle(&self) -> f64 {
        qcore::three_tangle(&self.0)
    }

    /// `Σ p_k SCP_k` when `helper` measures in `basis`.
    fn assisted_yield(&self, helper: usize, basis: &PyBasis) -> PyResult<f64> {
        assist::assisted_yield(&self.0.to_state(), helper, &basis.0).map_err(to_py)
    }

    /// `(alpha, beta, yield)` of the best single-qubit basis for `helper`.
    fn optimize_basis(&self, helper: usize) -> PyResult<(f64, f64, f64)> {
        let o = assist::optimize_qubit_basis(&self.0.to_state(), helper).map_err(to_py)?;
        Ok((o.alpha, o.beta, o.yield_value))
    }

    fn __repr__(&self) -> String {
        format!("CanonicalState({:?}, phi={})", self.0.lambdas(), self.0.phi())
    }
}

/// SCP of qubit `qubit` against the rest of a pure state.
#[pyfunction]
fn scp(amplitudes: Vec<Complex64>, qubit: usize) -> PyResult<f64> {
    qcore::scp(&state_from(amplitudes)?, &QubitSubset::single(qubit)).map_err(to_py)
}

/// RoI of the projector onto a pure state.
#[pyfunction]
fn roi(amplitudes: Vec<Complex64>) -> PyResult<f64> {
    Ok(qcore::roi(&state_from(amplitudes)?.projector()))
}

#[pyfunction]
fn yield_ghz(phi1: f64) -> PyResult<f64> {
    swap::yield_ghz_closed(phi1).map_err(to_py)
}

#[pyfunction]
fn yield_gw(phi1: f64) -> PyResult<f64> {
    swap::yield_gw_closed(phi1).map_err(to_py)
}

#[pyfunction]
fn advantage(phi1: f64) -> PyResult<f64> {
    swap::advantage(phi1).map_err(to_py)
}

#[pyfunction]
fn crossover_phi1() -> PyResult<f64> {
    swap::crossover_phi1().map_err(to_py)
}

/// `(phi1, advantage)` at the maximal GW advantage.
#[pyfunction]
fn max_advantage() -> PyResult<(f64, f64)> {
    swap::max_advantage().map(|m| (m.phi1, m.advantage)).map_err(to_py)
}

/// `(probability, e2)` per basis element of the joint measurement.
#[pyfunction]
fn swap_outcomes(phi1: f64, basis: &PyBasis) -> PyResult<Vec<(f64, f64)>> {
    let phi = TwoQubitPhi::from_phi1(phi1).map_err(to_py)?;
    let out = swap::swap_measure(&phi, &basis.0).map_err(to_py)?;
    Ok(out.iter().map(|o| (o.probability, o.e2)).collect())
}

/// Rows `(phi1, yield_ghz, yield_gw, advantage)`.
#[pyfunction]
fn sweep_yields(start: f64, stop: f64, step: f64) -> PyResult<Vec<(f64, f64, f64, f64)>> {
    let pts = swap::sweep_yields(start, stop, step).map_err(to_py)?;
    Ok(pts.iter().map(|p| (p.phi1, p.yield_ghz, p.yield_gw, p.advantage)).collect())
}

#[pyfunction]
fn p0_of_phi1(phi1: f64) -> PyResult<f64> {
    perc::p0_of_phi1(phi1).map_err(to_py)
}

#[pyfunction]
fn phi1_percolation_threshold() -> PyResult<f64> {
    perc::phi1_percolation_threshold().map_err(to_py)
}

#[pyfunction]
fn strategy_report() -> PyResult<BTreeMap<&'static str, f64>> {
    let r = perc::strategy_report().map_err(to_py)?;
    Ok(BTreeMap::from([
        ("p_ghz", r.p_ghz),
        ("p_gw", r.p_gw),
        ("s_ghz", r.s_ghz),
        ("s_gw", r.s_gw),
        ("bond_reduction_pct", r.bond_reduction_pct),
        ("ebit_reduction_pct", r.ebit_reduction_pct),
        ("gw_avg_scp", r.gw_avg_scp),
        ("gw_avg_roi", r.gw_avg_roi),
        ("ghz_avg_scp", r.ghz_avg_scp),
        ("ghz_avg_roi", r.ghz_avg_roi),
    ]))
}

/// `(p, spanning_fraction, std_err)`.
type TracePoint = (f64, f64, f64);

/// Bisection threshold estimate; `lattice` is "triangular-site" or
/// "honeycomb-bond". Returns `(p_c, [(p, spanning_fraction, std_err), ...])`.
#[pyfunction]
#[pyo3(signature = (lattice, size, trials, seed = 42))]
fn estimate_threshold(
    lattice: &str,
    size: usize,
    trials: usize,
    seed: u64,
) -> PyResult<(f64, Vec<TracePoint>)> {
    let model: PercolationModel = lattice.parse().map_err(to_py)?;
    let e = perc::estimate_threshold(model, size, trials, seed).map_err(to_py)?;
    let trace = (0..e.p_values.len())
        .map(|k| (e.p_values[k], e.spanning_fraction[k], e.standard_error[k]))
        .collect();
    Ok((e.p_c_estimate.unwrap_or(f64::NAN), trace))
}

#[pymodule]
fn iqconc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBasis>()?;
    m.add_class::<PyCanonical>()?;
    m.add_function(wrap_pyfunction!(scp, m)?)?;
    m.add_function(wrap_pyfunction!(roi, m)?)?;
    m.add_function(wrap_pyfunction!(yield_ghz, m)?)?;
    m.add_function(wrap_pyfunction!(yield_gw, m)?)?;
    m.add_function(wrap_pyfunction!(advantage, m)?)?;
    m.add_function(wrap_pyfunction!(crossover_phi1, m)?)?;
    m.add_function(wrap_pyfunction!(max_advantage, m)?)?;
    m.add_function(wrap_pyfunction!(swap_outcomes, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_yields, m)?)?;
    m.add_function(wrap_pyfunction!(p0_of_phi1, m)?)?;
    m.add_function(wrap_pyfunction!(phi1_percolation_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(strategy_report, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_threshold, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}

use serde_json::{json, Value};

use iqconc_core::assist::{assisted_branches, eoa_bound, optimize_qubit_basis};
use iqconc_core::bases::{basis_average_roi, basis_average_scp, verify_basis};
use iqconc_core::perc::{estimate_threshold, spanning_curve, strategy_report};
use iqconc_core::swap::{crossover_phi1, max_advantage, swap_measure, sweep_yields};

use crate::args::Pair;
use crate::config::{Job, RunConfig};
use crate::error::CliError;
use crate::output::{Cell, Payload, Table};

/// Outcome of a command: its payload plus an optional verification failure
/// that should still be reported.
pub struct Dispatched {
    pub payload: Payload,
    pub failure: Option<String>,
}

fn ok(results: Value, table: Option<Table>) -> Dispatched {
    Dispatched {
        payload: Payload { results, table },
        failure: None,
    }
}

fn pair_indices(p: Pair) -> (usize, usize) {
    match p {
        Pair::Ab => (0, 1),
        Pair::Bc => (1, 2),
        Pair::Ac => (0, 2),
    }
}

pub fn dispatch(cfg: &RunConfig) -> Result<Dispatched, CliError> {
    Ok(match &cfg.job {
        Job::BasesVerify { basis, tol } => {
            let v = verify_basis(basis, *tol)?;
            let results = json!({
                "basis": basis.label(),
                "dim": basis.dim(),
                "orthonormality_residual": v.orthonormality_residual,
                "completeness_residual": v.completeness_residual,
                "tol": v.tol,
                "passed": v.passed,
            });
            let failure = (!v.passed).then(|| {
                format!(
                    "basis '{}' residuals ({:e}, {:e}) exceed tol {:e}",
                    basis.label(),
                    v.orthonormality_residual,
                    v.completeness_residual,
                    v.tol
                )
            });
            Dispatched {
                payload: Payload { results, table: None },
                failure,
            }
        }
        Job::BasesStats { basis } => {
            let scp = if basis.dim() == 8 { Some(basis_average_scp(basis)?) } else { None };
            ok(
                json!({
                    "basis": basis.label(),
                    "dim": basis.dim(),
                    "average_scp": scp,
                    "average_roi": basis_average_roi(basis)?,
                }),
                None,
            )
        }
        Job::Assist { state, helper, pair, basis } => {
            let (i, j) = pair_indices(*pair);
            let bound = eoa_bound(state, i, j)?;
            match basis {
                Some(b) => {
                    let branches = assisted_branches(state, helper.index(), b)?;
                    let y: f64 = branches.iter().map(|x| x.probability * x.scp).sum();
                    let table = Table {
                        header: vec!["outcome", "probability", "scp"],
                        rows: branches
                            .iter()
                            .enumerate()
                            .map(|(k, x)| vec![Cell::Int(k as u64), Cell::Num(x.probability), Cell::Num(x.scp)])
                            .collect(),
                    };
                    ok(
                        json!({
                            "basis": b.label(),
                            "branches": branches,
                            "yield": y,
                            "eoa_bound": bound,
                        }),
                        Some(table),
                    )
                }
                None => {
                    let opt = optimize_qubit_basis(state, helper.index())?;
                    ok(
                        json!({
                            "alpha": opt.alpha,
                            "beta": opt.beta,
                            "yield": opt.yield_value,
                            "eoa_bound": bound,
                        }),
                        None,
                    )
                }
            }
        }
        Job::SwapSweep { from, to, step } => {
            let pts = sweep_yields(*from, *to, *step)?;
            let table = Table {
                header: vec!["phi1", "yield_ghz", "yield_gw", "advantage"],
                rows: pts
                    .iter()
                    .map(|p| vec![Cell::Num(p.phi1), Cell::Num(p.yield_ghz), Cell::Num(p.yield_gw), Cell::Num(p.advantage)])
                    .collect(),
            };
            ok(json!(pts), Some(table))
        }
        Job::SwapCrossover => {
            let c = crossover_phi1()?;
            let m = max_advantage()?;
            ok(
                json!({
                    "crossover_phi1": c,
                    "max_adv_phi1": m.phi1,
                    "max_adv": m.advantage,
                }),
                None,
            )
        }
        Job::SwapOutcomes { phi, basis } => {
            let outcomes = swap_measure(phi, basis)?;
            let y: f64 = outcomes.iter().map(|o| o.probability * o.e2).sum();
            let table = Table {
                header: vec!["outcome", "probability", "e2"],
                rows: outcomes
                    .iter()
                    .map(|o| vec![Cell::Int(o.index as u64), Cell::Num(o.probability), Cell::Num(o.e2)])
                    .collect(),
            };
            ok(
                json!({
                    "basis": basis.label(),
                    "outcomes": outcomes,
                    "yield": y,
                }),
                Some(table),
            )
        }
        Job::PercThreshold { model, l, trials } => {
            let est = estimate_threshold(*model, *l, *trials, cfg.seed)?;
            let table = perc_table(*l, *trials, &est.p_values, &est.spanning_fraction, &est.standard_error);
            ok(json!(est), Some(table))
        }
        Job::PercCurve { model, l, trials, boundary, p_values } => {
            let pts = spanning_curve(*model, *l, *trials, cfg.seed, *boundary, p_values)?;
            let f: Vec<f64> = pts.iter().map(|p| p.spanning_fraction).collect();
            let se: Vec<f64> = pts.iter().map(|p| p.std_err).collect();
            ok(json!(pts), Some(perc_table(*l, *trials, p_values, &f, &se)))
        }
        Job::ReportTable1 => ok(json!(strategy_report()?), None),
    })
}

fn perc_table(l: usize, trials: usize, p: &[f64], f: &[f64], se: &[f64]) -> Table {
    Table {
        header: vec!["p", "L", "trials", "spanning_fraction", "std_err"],
        rows: p
            .iter()
            .zip(f)
            .zip(se)
            .map(|((&p, &f), &s)| vec![Cell::Num(p), Cell::Int(l as u64), Cell::Int(trials as u64), Cell::Num(f), Cell::Num(s)])
            .collect(),
    }
}

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::parser::ValueSource;
use clap::{ArgMatches, CommandFactory, FromArgMatches};
use serde::Serialize;
use serde_json::{json, Value};

use iqconc_core::assist::{CanonicalThreeQubit, SliceFamilyParam};
use iqconc_core::bases::ProjectiveBasis;
use iqconc_core::perc::{Boundary, PercolationModel, PercolationTrialConfig};
use iqconc_core::qcore::PureState;
use iqconc_core::swap::TwoQubitPhi;

use crate::args::*;
use crate::error::CliError;

pub const DEFAULT_SEED: u64 = 42;
pub const SEED_ENV: &str = "IQCONC_SEED";
/// Canonical coefficients given on the command line are renormalized when
/// their squared sum is this close to 1.
pub const INPUT_NORM_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    BasesVerify,
    BasesStats,
    Assist,
    AssistOptimize,
    SwapSweep,
    SwapCrossover,
    SwapOutcomes,
    PercThreshold,
    PercCurve,
    ReportTable1,
}

impl CommandKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CommandKind::BasesVerify => "bases-verify",
            CommandKind::BasesStats => "bases-stats",
            CommandKind::Assist => "assist",
            CommandKind::AssistOptimize => "assist-optimize",
            CommandKind::SwapSweep => "swap-sweep",
            CommandKind::SwapCrossover => "swap-crossover",
            CommandKind::SwapOutcomes => "swap-outcomes",
            CommandKind::PercThreshold => "perc-threshold",
            CommandKind::PercCurve => "perc-curve",
            CommandKind::ReportTable1 => "report-table1",
        }
    }

    fn default_format(&self) -> OutputFormat {
        match self {
            CommandKind::BasesVerify | CommandKind::BasesStats => OutputFormat::Text,
            CommandKind::SwapSweep | CommandKind::PercCurve => OutputFormat::Csv,
            _ => OutputFormat::Json,
        }
    }
}

/// Validated work item.
#[derive(Debug, Clone)]
pub enum Job {
    BasesVerify {
        basis: ProjectiveBasis,
        tol: f64,
    },
    BasesStats {
        basis: ProjectiveBasis,
    },
    Assist {
        state: PureState,
        helper: Party,
        pair: Pair,
        basis: Option<ProjectiveBasis>,
    },
    SwapSweep {
        from: f64,
        to: f64,
        step: f64,
    },
    SwapCrossover,
    SwapOutcomes {
        phi: TwoQubitPhi,
        basis: ProjectiveBasis,
    },
    PercThreshold {
        model: PercolationModel,
        l: usize,
        trials: usize,
    },
    PercCurve {
        model: PercolationModel,
        l: usize,
        trials: usize,
        boundary: Boundary,
        p_values: Vec<f64>,
    },
    ReportTable1,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    /// Echo of every input that can affect the output.
    pub parameters: BTreeMap<String, Value>,
    pub seed: u64,
    pub output_path: Option<PathBuf>,
    pub output_format: OutputFormat,
    pub workers: Option<usize>,
    pub job: Job,
}

pub(crate) fn cli_command_for_help() -> clap::Command {
    cli_command()
}

fn cli_command() -> clap::Command {
    fn relax(c: clap::Command) -> clap::Command {
        let names: Vec<String> = c.get_subcommands().map(|s| s.get_name().to_string()).collect();
        let mut c = c.args_override_self(true);
        for n in names {
            c = c.mut_subcommand(n, relax);
        }
        c
    }
    relax(Cli::command())
}

/// `key = value` lines; blank lines and `#` comments are skipped.
pub fn read_config_file(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
    parse_config_text(&text)
}

pub fn parse_config_text(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("config line {}: expected `key = value`, got '{raw}'", n + 1))
        })?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            return Err(CliError::Usage(format!("config line {}: empty key", n + 1)));
        }
        out.push((k.to_string(), v.to_string()));
    }
    Ok(out)
}

fn leaf<'a>(cmd: &'a clap::Command, m: &'a ArgMatches) -> (&'a clap::Command, &'a ArgMatches, Vec<String>) {
    let (mut c, mut m) = (cmd, m);
    let mut path = Vec::new();
    while let Some((name, sub)) = m.subcommand() {
        c = c.find_subcommand(name).expect("matched subcommand exists");
        m = sub;
        path.push(name.to_string());
    }
    (c, m, path)
}

fn clap_err(e: clap::Error) -> CliError {
    CliError::Usage(e.render().to_string().trim_end().to_string())
}

/// Parses `argv` (including the program name), merging `--config` values
/// under the explicit flags.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cmd = cli_command();
    let first = cmd.clone().try_get_matches_from(&argv).map_err(clap_err)?;
    let mut argv = argv;
    if let Some(path) = first.get_one::<PathBuf>("config") {
        let entries = read_config_file(path)?;
        let (leaf_cmd, leaf_m, path) = leaf(&cmd, &first);
        for (key, value) in entries {
            let arg = leaf_cmd
                .get_arguments()
                .find(|a| a.get_long() == Some(key.as_str()) && key != "config" && key != "help" && key != "version")
                .ok_or_else(|| {
                    CliError::Usage(format!("unknown config key '{key}' for '{}'", path.join(" ")))
                })?;
            if leaf_m.value_source(arg.get_id().as_str()) == Some(ValueSource::CommandLine) {
                continue;
            }
            argv.push(format!("--{key}").into());
            argv.push(value.into());
        }
    }
    let matches = cmd.try_get_matches_from(&argv).map_err(clap_err)?;
    let cli = Cli::from_arg_matches(&matches).map_err(clap_err)?;
    build(cli)
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{SEED_ENV}='{v}' is not a 64-bit unsigned seed"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn required<T>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("missing required flag --{flag}")))
}

fn basis_arg(label: &str, flag: &str) -> Result<ProjectiveBasis, CliError> {
    ProjectiveBasis::from_label(label).map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
}

fn model_of(l: LatticeArg) -> PercolationModel {
    match l {
        LatticeArg::TriangularSite => PercolationModel::TriangularSite,
        LatticeArg::HoneycombBond => PercolationModel::HoneycombBond,
    }
}

/// Inclusive grid `from, from + step, ...` up to `to`.
pub fn grid(from: f64, to: f64, step: f64, what: &str) -> Result<Vec<f64>, CliError> {
    if !(step > 0.0) || !(to >= from) {
        return Err(CliError::Usage(format!(
            "{what}: need --step > 0 and --to >= --from (got from {from}, to {to}, step {step})"
        )));
    }
    let n = ((to - from) / step + 1e-9).floor() as usize + 1;
    Ok((0..n).map(|k| from + step * k as f64).collect())
}

fn assist_state(a: &AssistArgs, params: &mut BTreeMap<String, Value>) -> Result<PureState, CliError> {
    if let Some(x) = a.a {
        params.insert("a".into(), json!(x));
        let p = SliceFamilyParam::from_a(x).map_err(|e| CliError::Usage(format!("--a: {e}")))?;
        return Ok(p.to_state());
    }
    let mut l = [a.l0, a.l1, a.l2, a.l3, a.l4].map(|x| x.unwrap_or(0.0));
    let phi = a.phi.unwrap_or(0.0);
    if l.iter().all(|&x| x == 0.0) {
        return Err(CliError::Usage("missing state: give --l0..--l4 (and --phi) or --a".into()));
    }
    let norm: f64 = l.iter().map(|x| x * x).sum();
    if (norm - 1.0).abs() <= INPUT_NORM_SLACK {
        let s = norm.sqrt();
        l.iter_mut().for_each(|x| *x /= s);
    }
    for (k, x) in l.iter().enumerate() {
        params.insert(format!("l{k}"), json!(x));
    }
    params.insert("phi".into(), json!(phi));
    let c = CanonicalThreeQubit::new(l, phi).map_err(|e| CliError::Usage(format!("--l0..--l4/--phi: {e}")))?;
    Ok(c.to_state())
}

fn build(cli: Cli) -> Result<RunConfig, CliError> {
    let seed = resolve_seed(cli.seed)?;
    if cli.workers == Some(0) {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    let mut params: BTreeMap<String, Value> = BTreeMap::new();
    let (command, job) = match cli.command {
        Command::Bases { action } => match action {
            BasesAction::Verify { basis, tol } => {
                let label = required(basis, "basis")?;
                if !(tol > 0.0) {
                    return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
                }
                params.insert("basis".into(), json!(label));
                params.insert("tol".into(), json!(tol));
                (CommandKind::BasesVerify, Job::BasesVerify { basis: basis_arg(&label, "basis")?, tol })
            }
            BasesAction::Stats { basis } => {
                let label = required(basis, "basis")?;
                params.insert("basis".into(), json!(label));
                (CommandKind::BasesStats, Job::BasesStats { basis: basis_arg(&label, "basis")? })
            }
        },
        Command::Assist(a) => {
            let state = assist_state(&a, &mut params)?;
            let (helper, pair) = match (a.helper, a.pair) {
                (Some(h), Some(p)) if p.complement() != h => {
                    return Err(CliError::Usage(format!(
                        "--helper {h:?} must be the party outside --pair {p:?}"
                    )))
                }
                (Some(h), _) => (h, [Pair::Bc, Pair::Ac, Pair::Ab][h.index()]),
                (None, Some(p)) => (p.complement(), p),
                (None, None) => (Party::A, Pair::Bc),
            };
            params.insert("helper".into(), json!(format!("{helper:?}")));
            params.insert("pair".into(), json!(format!("{pair:?}").to_uppercase()));
            match a.mode {
                Some(AssistMode::Optimize) => {
                    if a.basis.is_some() {
                        return Err(CliError::Usage("--basis is not used by `assist optimize`".into()));
                    }
                    (CommandKind::AssistOptimize, Job::Assist { state, helper, pair, basis: None })
                }
                None => {
                    let label = required(a.basis, "basis")?;
                    let basis = basis_arg(&label, "basis")?;
                    if basis.dim() != 2 {
                        return Err(CliError::Usage(format!("--basis {label} is not a single-qubit basis")));
                    }
                    params.insert("basis".into(), json!(label));
                    (CommandKind::Assist, Job::Assist { state, helper, pair, basis: Some(basis) })
                }
            }
        }
        Command::Swap { action } => match action {
            SwapAction::Sweep { from, to, step } => {
                let pts = grid(from, to, step, "swap sweep")?;
                for &p in &pts {
                    TwoQubitPhi::from_phi1(p).map_err(|e| CliError::Usage(format!("--from/--to: {e}")))?;
                }
                params.insert("from".into(), json!(from));
                params.insert("to".into(), json!(to));
                params.insert("step".into(), json!(step));
                (CommandKind::SwapSweep, Job::SwapSweep { from, to, step })
            }
            SwapAction::Crossover => (CommandKind::SwapCrossover, Job::SwapCrossover),
            SwapAction::Outcomes { phi1, basis } => {
                let p1 = required(phi1, "phi1")?;
                let phi = TwoQubitPhi::from_phi1(p1).map_err(|e| CliError::Usage(format!("--phi1: {e}")))?;
                let b = basis_arg(&basis, "basis")?;
                if b.dim() != 8 {
                    return Err(CliError::Usage(format!("--basis {basis} is not a three-qubit basis")));
                }
                params.insert("phi1".into(), json!(p1));
                params.insert("basis".into(), json!(basis));
                (CommandKind::SwapOutcomes, Job::SwapOutcomes { phi, basis: b })
            }
        },
        Command::Perc { action } => {
            params.insert("seed".into(), json!(seed));
            match action {
                PercAction::Threshold { lattice, l, trials } => {
                    let model = model_of(required(lattice, "lattice")?);
                    if l < 16 || trials < 100 {
                        return Err(CliError::Usage(format!(
                            "perc threshold needs --L >= 16 and --trials >= 100 (got {l}, {trials})"
                        )));
                    }
                    params.insert("lattice".into(), json!(model.as_str()));
                    params.insert("L".into(), json!(l));
                    params.insert("trials".into(), json!(trials));
                    (CommandKind::PercThreshold, Job::PercThreshold { model, l, trials })
                }
                PercAction::Curve { lattice, l, trials, from, to, step, boundary } => {
                    let model = model_of(required(lattice, "lattice")?);
                    let boundary = match boundary {
                        BoundaryArg::WrapHorizontal => Boundary::WrapHorizontal,
                        BoundaryArg::Open => Boundary::Open,
                    };
                    let p_values = grid(from, to, step, "perc curve")?;
                    for &p in &p_values {
                        PercolationTrialConfig::new(p, l, trials, seed, boundary)
                            .map_err(|e| CliError::Usage(format!("perc curve: {e}")))?;
                    }
                    params.insert("lattice".into(), json!(model.as_str()));
                    params.insert("L".into(), json!(l));
                    params.insert("trials".into(), json!(trials));
                    params.insert("from".into(), json!(from));
                    params.insert("to".into(), json!(to));
                    params.insert("step".into(), json!(step));
                    params.insert("boundary".into(), json!(boundary));
                    (CommandKind::PercCurve, Job::PercCurve { model, l, trials, boundary, p_values })
                }
            }
        }
        Command::Report { action: ReportAction::Table1 } => (CommandKind::ReportTable1, Job::ReportTable1),
    };
    Ok(RunConfig {
        command,
        parameters: params,
        seed,
        output_path: cli.out,
        output_format: cli.format.unwrap_or(command.default_format()),
        workers: cli.workers,
        job,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_style_invocations() {
        let c = parse_args(["iqconc", "swap", "sweep", "--from", "0", "--to", "0.5", "--step", "0.001", "--out", "sweep.csv"]).unwrap();
        assert_eq!(c.command, CommandKind::SwapSweep);
        assert_eq!(c.output_path.as_deref(), Some(Path::new("sweep.csv")));
        let c = parse_args(["iqconc", "perc", "threshold", "--lattice", "triangular-site", "--L", "128", "--trials", "500", "--seed", "7"]).unwrap();
        assert_eq!(c.command, CommandKind::PercThreshold);
        assert_eq!(c.seed, 7);
        let c = parse_args(["iqconc", "assist", "--l0", "0.5", "--l1", "0.5", "--l4", "0.7071067812", "--pair", "BC", "--basis", "hat"]).unwrap();
        assert_eq!(c.command, CommandKind::Assist);
        match c.job {
            Job::Assist { helper, pair, .. } => assert_eq!((helper, pair), (Party::A, Pair::Bc)),
            _ => panic!(),
        }
    }

    #[test]
    fn bad_inputs_are_usage_errors() {
        for argv in [
            vec!["iqconc", "swap", "sweep", "--step", "x"],
            vec!["iqconc", "swap", "sweep", "--bogus", "1"],
            vec!["iqconc", "bases", "verify"],
            vec!["iqconc", "swap", "outcomes", "--phi1", "0.7"],
            vec!["iqconc", "assist", "--l0", "1", "--helper", "A", "--pair", "AB", "--basis", "hat"],
            vec!["iqconc", "perc", "threshold", "--lattice", "square"],
        ] {
            let e = parse_args(argv.clone()).unwrap_err();
            assert_eq!(e.exit_code(), 1, "{argv:?}: {e}");
        }
    }

    #[test]
    fn config_lines() {
        let kv = parse_config_text("# defaults\nfrom = 0.1\n\nstep=0.05  # coarse\n").unwrap();
        assert_eq!(kv, vec![("from".into(), "0.1".into()), ("step".into(), "0.05".into())]);
        assert!(parse_config_text("no equals sign").is_err());
    }

    #[test]
    fn grid_counts() {
        assert_eq!(grid(0.0, 0.5, 0.1, "t").unwrap().len(), 6);
        assert_eq!(grid(0.0, 0.5, 0.001, "t").unwrap().len(), 501);
        assert!(grid(0.5, 0.0, 0.1, "t").is_err());
    }
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "iqconc",
    version,
    about = "Entanglement concentration, swapping and percolation with real and imaginary bases"
)]
pub struct Cli {
    /// Base seed for Monte Carlo runs [default: $IQCONC_SEED, else 42]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Worker threads; never changes results
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// File of `key = value` lines supplying defaults for flags
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check and summarize measurement bases
    Bases {
        #[command(subcommand)]
        action: BasesAction,
    },
    /// Assisted concentration on a three-qubit state
    Assist(AssistArgs),
    /// Three-qubit entanglement swapping
    Swap {
        #[command(subcommand)]
        action: SwapAction,
    },
    /// Percolation Monte Carlo
    Perc {
        #[command(subcommand)]
        action: PercAction,
    },
    /// Strategy comparison tables
    Report {
        #[command(subcommand)]
        action: ReportAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum BasesAction {
    /// Orthonormality and completeness residuals
    Verify {
        #[arg(long)]
        basis: Option<String>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Average SCP and RoI of the basis elements
    Stats {
        #[arg(long)]
        basis: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AssistMode {
    /// Search for the best single-qubit basis of the helper
    Optimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Party {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
}

impl Party {
    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Pair {
    #[value(name = "AB")]
    Ab,
    #[value(name = "BC")]
    Bc,
    #[value(name = "AC")]
    Ac,
}

impl Pair {
    /// The qubit outside the pair.
    pub fn complement(self) -> Party {
        match self {
            Pair::Ab => Party::C,
            Pair::Bc => Party::A,
            Pair::Ac => Party::B,
        }
    }
}

#[derive(Debug, Args)]
pub struct AssistArgs {
    #[arg(value_enum)]
    pub mode: Option<AssistMode>,
    /// Canonical coefficients λ0..λ4 (unset ones are 0)
    #[arg(long)]
    pub l0: Option<f64>,
    #[arg(long)]
    pub l1: Option<f64>,
    #[arg(long)]
    pub l2: Option<f64>,
    #[arg(long)]
    pub l3: Option<f64>,
    #[arg(long)]
    pub l4: Option<f64>,
    /// Canonical phase, in [0, π]
    #[arg(long)]
    pub phi: Option<f64>,
    /// Use the family b|000> + b|100> + a|111> instead of λ coefficients
    #[arg(long, conflicts_with_all = ["l0", "l1", "l2", "l3", "l4", "phi"])]
    pub a: Option<f64>,
    /// Measuring party [default: the one outside --pair, else A]
    #[arg(long, value_enum)]
    pub helper: Option<Party>,
    /// Pair whose entanglement is concentrated [default: the two others]
    #[arg(long, value_enum)]
    pub pair: Option<Pair>,
    /// Helper basis label (pauli-x, hat, real:<α>, complex:<α>,<β>, ...)
    #[arg(long)]
    pub basis: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum SwapAction {
    /// GHZ and GW yields over a φ1 grid
    Sweep {
        #[arg(long, default_value_t = 0.0)]
        from: f64,
        #[arg(long, default_value_t = 0.5)]
        to: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
    },
    /// Crossover point and maximal GW advantage
    Crossover,
    /// Per-outcome probabilities and E2 of one joint measurement
    Outcomes {
        #[arg(long)]
        phi1: Option<f64>,
        #[arg(long, default_value = "gw")]
        basis: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LatticeArg {
    TriangularSite,
    HoneycombBond,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundaryArg {
    WrapHorizontal,
    Open,
}

#[derive(Debug, Subcommand)]
pub enum PercAction {
    /// Bisection estimate of the spanning threshold
    Threshold {
        #[arg(long, value_enum)]
        lattice: Option<LatticeArg>,
        #[arg(long = "L", default_value_t = 128)]
        l: usize,
        #[arg(long, default_value_t = 500)]
        trials: usize,
    },
    /// Spanning fraction over a grid of occupation probabilities
    Curve {
        #[arg(long, value_enum)]
        lattice: Option<LatticeArg>,
        #[arg(long = "L", default_value_t = 64)]
        l: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0.3)]
        from: f64,
        #[arg(long, default_value_t = 0.8)]
        to: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        #[arg(long, value_enum, default_value = "wrap-horizontal")]
        boundary: BoundaryArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum ReportAction {
    /// GHZ versus GW strategy numbers
    Table1,
}

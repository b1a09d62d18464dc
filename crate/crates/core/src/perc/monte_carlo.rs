use petgraph::unionfind::UnionFind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::lattice::{build_honeycomb, contract_to_triangular, Boundary, HoneycombLattice, TriangularSiteGraph};
use crate::{Error, Result};

/// Number of bisection steps in the threshold search.
pub const THRESHOLD_ITERATIONS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PercolationTrialConfig {
    pub occupation_p: f64,
    pub linear_size: usize,
    pub trials: usize,
    pub seed: u64,
    pub boundary: Boundary,
}

impl PercolationTrialConfig {
    pub fn new(occupation_p: f64, linear_size: usize, trials: usize, seed: u64, boundary: Boundary) -> Result<Self> {
        if !(0.0..=1.0).contains(&occupation_p) {
            return Err(Error::domain(format!("occupation probability {occupation_p} outside [0, 1]")));
        }
        if linear_size < 4 {
            return Err(Error::domain(format!("linear size must be at least 4, got {linear_size}")));
        }
        if trials < 1 {
            return Err(Error::domain("need at least one trial"));
        }
        Ok(Self { occupation_p, linear_size, trials, seed, boundary })
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent generator for trial `trial` of evaluation step `step`.
pub fn trial_rng(seed: u64, step: u64, trial: u64) -> ChaCha8Rng {
    let h = splitmix64(splitmix64(splitmix64(seed) ^ step) ^ trial);
    ChaCha8Rng::seed_from_u64(h)
}

/// Something on which a single percolation trial can be run.
pub trait SpanningModel: Sync {
    /// Number of independently occupied elements (sites or bonds).
    fn num_elements(&self) -> usize;

    /// Whether the occupied elements connect the first row to the last.
    fn spans(&self, occupied: &[bool]) -> bool;

    fn sample(&self, p: f64, rng: &mut impl Rng) -> Vec<bool> {
        (0..self.num_elements()).map(|_| rng.random::<f64>() < p).collect()
    }

    fn trial(&self, p: f64, rng: &mut impl Rng) -> bool {
        let occupied = self.sample(p, rng);
        self.spans(&occupied)
    }
}

impl SpanningModel for TriangularSiteGraph {
    fn num_elements(&self) -> usize {
        self.num_sites()
    }

    fn spans(&self, occupied: &[bool]) -> bool {
        let n = self.num_sites();
        let (top, bottom) = (n, n + 1);
        let mut uf = UnionFind::<usize>::new(n + 2);
        for &(a, b) in &self.adjacency {
            if occupied[a] && occupied[b] {
                uf.union(a, b);
            }
        }
        let last = self.rows - 1;
        for (s, &row) in self.site_row.iter().enumerate() {
            if !occupied[s] {
                continue;
            }
            if row == 0 {
                uf.union(s, top);
            }
            if row == last {
                uf.union(s, bottom);
            }
        }
        uf.equiv(top, bottom)
    }
}

impl SpanningModel for HoneycombLattice {
    fn num_elements(&self) -> usize {
        self.bonds.len()
    }

    fn spans(&self, open: &[bool]) -> bool {
        let n = self.num_nodes();
        let (top, bottom) = (n, n + 1);
        let mut uf = UnionFind::<usize>::new(n + 2);
        for (&(a, b), &o) in self.bonds.iter().zip(open) {
            if o {
                uf.union(a, b);
            }
        }
        let last = self.rows - 1;
        for (node, &row) in self.node_row.iter().enumerate() {
            if row == 0 {
                uf.union(node, top);
            }
            if row == last {
                uf.union(node, bottom);
            }
        }
        uf.equiv(top, bottom)
    }
}

/// Occupies each site with probability `p` and reports whether an occupied
/// cluster joins the first and last rows.
pub fn site_percolation_trial(g: &TriangularSiteGraph, p: f64, rng: &mut impl Rng) -> bool {
    g.trial(p, rng)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpanningPoint {
    pub p: f64,
    pub trials: usize,
    pub spanning: usize,
    pub spanning_fraction: f64,
    pub std_err: f64,
}

/// Runs `trials` trials at occupation `p`; trial `t` uses
/// `trial_rng(seed, step, t)`, so the count does not depend on scheduling.
pub fn spanning_point<M: SpanningModel>(model: &M, p: f64, trials: usize, seed: u64, step: u64) -> SpanningPoint {
    let spanning = (0..trials as u64)
        .into_par_iter()
        .filter(|&t| model.trial(p, &mut trial_rng(seed, step, t)))
        .count();
    let f = spanning as f64 / trials as f64;
    SpanningPoint {
        p,
        trials,
        spanning,
        spanning_fraction: f,
        std_err: (f * (1.0 - f) / trials as f64).sqrt(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PercolationModel {
    TriangularSite,
    HoneycombBond,
}

impl std::str::FromStr for PercolationModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "triangular-site" => Ok(Self::TriangularSite),
            "honeycomb-bond" => Ok(Self::HoneycombBond),
            _ => Err(Error::domain(format!(
                "unknown lattice '{s}' (expected triangular-site or honeycomb-bond)"
            ))),
        }
    }
}

impl PercolationModel {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::TriangularSite => "triangular-site",
            Self::HoneycombBond => "honeycomb-bond",
        }
    }

    /// Initial bisection bracket.
    pub fn bracket(&self) -> (f64, f64) {
        match self {
            Self::TriangularSite => (0.3, 0.7),
            Self::HoneycombBond => (0.5, 0.8),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PercolationEstimate {
    pub p_values: Vec<f64>,
    pub spanning_fraction: Vec<f64>,
    pub standard_error: Vec<f64>,
    pub p_c_estimate: Option<f64>,
}

impl PercolationEstimate {
    fn from_points(points: &[SpanningPoint], p_c_estimate: Option<f64>) -> Self {
        Self {
            p_values: points.iter().map(|x| x.p).collect(),
            spanning_fraction: points.iter().map(|x| x.spanning_fraction).collect(),
            standard_error: points.iter().map(|x| x.std_err).collect(),
            p_c_estimate,
        }
    }
}

fn check_threshold_args(l: usize, trials: usize) -> Result<()> {
    if l < 16 {
        return Err(Error::domain(format!("threshold estimation needs L >= 16, got {l}")));
    }
    if trials < 100 {
        return Err(Error::domain(format!("threshold estimation needs >= 100 trials, got {trials}")));
    }
    Ok(())
}

fn bisect<M: SpanningModel>(model: &M, (mut lo, mut hi): (f64, f64), trials: usize, seed: u64) -> PercolationEstimate {
    let mut points = Vec::with_capacity(THRESHOLD_ITERATIONS);
    for step in 0..THRESHOLD_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        let pt = spanning_point(model, mid, trials, seed, step as u64);
        if pt.spanning_fraction < 0.5 {
            lo = mid;
        } else {
            hi = mid;
        }
        points.push(pt);
    }
    PercolationEstimate::from_points(&points, Some(0.5 * (lo + hi)))
}

/// Bisection for the occupation at which half the trials span, on an
/// `L x L` wrapped lattice.
pub fn estimate_threshold(model: PercolationModel, l: usize, trials: usize, seed: u64) -> Result<PercolationEstimate> {
    check_threshold_args(l, trials)?;
    let h = build_honeycomb(l, l, Boundary::WrapHorizontal)?;
    Ok(match model {
        PercolationModel::TriangularSite => bisect(&contract_to_triangular(&h), model.bracket(), trials, seed),
        PercolationModel::HoneycombBond => bisect(&h, model.bracket(), trials, seed),
    })
}

pub fn estimate_site_threshold(l: usize, trials: usize, seed: u64) -> Result<PercolationEstimate> {
    estimate_threshold(PercolationModel::TriangularSite, l, trials, seed)
}

pub fn estimate_bond_threshold_honeycomb(l: usize, trials: usize, seed: u64) -> Result<PercolationEstimate> {
    estimate_threshold(PercolationModel::HoneycombBond, l, trials, seed)
}

/// Spanning fraction at each of `p_values`; point `k` uses RNG step `k`.
pub fn spanning_curve(
    model: PercolationModel,
    l: usize,
    trials: usize,
    seed: u64,
    boundary: Boundary,
    p_values: &[f64],
) -> Result<Vec<SpanningPoint>> {
    for &p in p_values {
        PercolationTrialConfig::new(p, l, trials, seed, boundary)?;
    }
    let h = build_honeycomb(l, l, boundary)?;
    let run = |m: &dyn Fn(f64, u64) -> SpanningPoint| -> Vec<SpanningPoint> {
        p_values.iter().enumerate().map(|(k, &p)| m(p, k as u64)).collect()
    };
    Ok(match model {
        PercolationModel::TriangularSite => {
            let g = contract_to_triangular(&h);
            run(&|p, k| spanning_point(&g, p, trials, seed, k))
        }
        PercolationModel::HoneycombBond => run(&|p, k| spanning_point(&h, p, trials, seed, k)),
    })
}

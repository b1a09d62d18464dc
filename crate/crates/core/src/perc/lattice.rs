use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Boundary handling of the lattice. Spanning is always tested between the
/// first and the last row; `WrapHorizontal` makes each row periodic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    WrapHorizontal,
    Open,
}

impl std::str::FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wrap-horizontal" | "wrap" => Ok(Boundary::WrapHorizontal),
            "open" => Ok(Boundary::Open),
            _ => Err(Error::domain(format!("unknown boundary '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sublattice {
    /// Performs the joint three-qubit measurement.
    Measured,
    Passive,
}

/// Brick-wall honeycomb of `rows x cols` unit cells.
///
/// Cell `(i, j)` holds a measured node `M(i, j)` at index `2(i·cols + j)` and
/// a passive node `P(i, j)` right after it. `M(i, j)` is bonded to
/// `P(i, j)`, `P(i, j−1)` and `P(i−1, j)`.
#[derive(Debug, Clone)]
pub struct HoneycombLattice {
    pub rows: usize,
    pub cols: usize,
    pub boundary: Boundary,
    pub sublattice: Vec<Sublattice>,
    /// Cell row of every node.
    pub node_row: Vec<usize>,
    pub bonds: Vec<(usize, usize)>,
}

impl HoneycombLattice {
    pub fn num_nodes(&self) -> usize {
        self.sublattice.len()
    }

    pub fn degree(&self, node: usize) -> usize {
        self.bonds
            .iter()
            .filter(|&&(a, b)| a == node || b == node)
            .count()
    }

    pub fn measured(&self, i: usize, j: usize) -> usize {
        2 * (i * self.cols + j)
    }

    pub fn passive(&self, i: usize, j: usize) -> usize {
        2 * (i * self.cols + j) + 1
    }
}

pub fn build_honeycomb(rows: usize, cols: usize, boundary: Boundary) -> Result<HoneycombLattice> {
    if rows < 2 || cols < 2 {
        return Err(Error::domain(format!(
            "honeycomb needs at least 2x2 cells, got {rows}x{cols}"
        )));
    }
    let n = 2 * rows * cols;
    let mut sublattice = Vec::with_capacity(n);
    let mut node_row = Vec::with_capacity(n);
    for i in 0..rows {
        for _ in 0..cols {
            sublattice.push(Sublattice::Measured);
            sublattice.push(Sublattice::Passive);
            node_row.push(i);
            node_row.push(i);
        }
    }
    let m = |i: usize, j: usize| 2 * (i * cols + j);
    let p = |i: usize, j: usize| 2 * (i * cols + j) + 1;
    let mut bonds = Vec::with_capacity(3 * rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            bonds.push((m(i, j), p(i, j)));
            if j > 0 {
                bonds.push((m(i, j), p(i, j - 1)));
            } else if boundary == Boundary::WrapHorizontal {
                bonds.push((m(i, j), p(i, cols - 1)));
            }
            if i > 0 {
                bonds.push((m(i, j), p(i - 1, j)));
            }
        }
    }
    Ok(HoneycombLattice {
        rows,
        cols,
        boundary,
        sublattice,
        node_row,
        bonds,
    })
}

/// Site graph left after every measured node has turned its three bonds
/// into a triangle.
#[derive(Debug, Clone)]
pub struct TriangularSiteGraph {
    pub rows: usize,
    pub cols: usize,
    /// Row of every site.
    pub site_row: Vec<usize>,
    /// Honeycomb node behind every site.
    pub site_node: Vec<usize>,
    /// Unordered adjacent pairs, `a < b`, sorted.
    pub adjacency: Vec<(usize, usize)>,
}

impl TriangularSiteGraph {
    pub fn num_sites(&self) -> usize {
        self.site_row.len()
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_sites()];
        for &(a, b) in &self.adjacency {
            out[a].push(b);
            out[b].push(a);
        }
        out
    }
}

/// One site per measured node; two sites are adjacent iff they share a
/// passive neighbor.
pub fn contract_to_triangular(h: &HoneycombLattice) -> TriangularSiteGraph {
    let mut site_of = vec![usize::MAX; h.num_nodes()];
    let mut site_row = Vec::new();
    let mut site_node = Vec::new();
    for (node, kind) in h.sublattice.iter().enumerate() {
        if *kind == Sublattice::Measured {
            site_of[node] = site_row.len();
            site_row.push(h.node_row[node]);
            site_node.push(node);
        }
    }
    let mut around: Vec<Vec<usize>> = vec![Vec::new(); h.num_nodes()];
    for &(a, b) in &h.bonds {
        let (measured, passive) = if h.sublattice[a] == Sublattice::Measured { (a, b) } else { (b, a) };
        around[passive].push(site_of[measured]);
    }
    let mut pairs = BTreeSet::new();
    for sites in &around {
        for (k, &x) in sites.iter().enumerate() {
            for &y in &sites[k + 1..] {
                if x != y {
                    pairs.insert((x.min(y), x.max(y)));
                }
            }
        }
    }
    TriangularSiteGraph {
        rows: h.rows,
        cols: h.cols,
        site_row,
        site_node,
        adjacency: pairs.into_iter().collect(),
    }
}

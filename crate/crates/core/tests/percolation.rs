use std::collections::VecDeque;

use iqconc_core::perc::{
    build_honeycomb, contract_to_triangular, estimate_site_threshold, p0_of_phi1, spanning_curve, spanning_point,
    trial_rng, Boundary, HoneycombLattice, PercolationModel, SpanningModel, TriangularSiteGraph,
    HONEYCOMB_BOND_THRESHOLD,
};
use iqconc_core::swap::yield_gw_closed;
use rand::Rng;

fn bfs_spans(n: usize, edges: &[(usize, usize)], row: &[usize], last: usize, usable: impl Fn(usize) -> bool) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| row[v] == 0 && usable(v)).collect();
    for &v in &queue {
        seen[v] = true;
    }
    while let Some(v) = queue.pop_front() {
        if row[v] == last {
            return true;
        }
        for &w in &adj[v] {
            if !seen[w] && usable(w) {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    false
}

fn bfs_sites(g: &TriangularSiteGraph, occ: &[bool]) -> bool {
    bfs_spans(g.num_sites(), &g.adjacency, &g.site_row, g.rows - 1, |v| occ[v])
}

fn bfs_bonds(h: &HoneycombLattice, open: &[bool]) -> bool {
    let edges: Vec<(usize, usize)> = h.bonds.iter().zip(open).filter(|(_, &o)| o).map(|(&e, _)| e).collect();
    bfs_spans(h.num_nodes(), &edges, &h.node_row, h.rows - 1, |_| true)
}

#[test]
fn union_find_agrees_with_bfs() {
    let mut spans = 0;
    let mut total = 0;
    for l in [4usize, 8, 16] {
        for boundary in [Boundary::WrapHorizontal, Boundary::Open] {
            let h = build_honeycomb(l, l, boundary).unwrap();
            let g = contract_to_triangular(&h);
            for t in 0..300u64 {
                let mut rng = trial_rng(99, l as u64, t);
                let p = rng.random_range(0.3..0.8);
                let occ = g.sample(p, &mut rng);
                let uf = g.spans(&occ);
                assert_eq!(uf, bfs_sites(&g, &occ), "site L={l} {boundary:?} trial {t}");
                let open = h.sample(p, &mut rng);
                assert_eq!(h.spans(&open), bfs_bonds(&h, &open), "bond L={l} {boundary:?} trial {t}");
                spans += uf as usize;
                total += 1;
            }
        }
    }
    // both outcomes must have been exercised
    assert!(spans > total / 10 && spans < total * 9 / 10, "{spans}/{total}");
}

#[test]
fn spanning_fraction_is_monotone() {
    let ps: Vec<f64> = (0..=16).map(|k| 0.3 + 0.025 * k as f64).collect();
    for model in [PercolationModel::TriangularSite, PercolationModel::HoneycombBond] {
        let pts = spanning_curve(model, 32, 400, 5, Boundary::WrapHorizontal, &ps).unwrap();
        for w in pts.windows(2) {
            let slack = 3.0 * (w[0].std_err.powi(2) + w[1].std_err.powi(2)).sqrt();
            assert!(w[1].spanning_fraction >= w[0].spanning_fraction - slack, "{model:?}: {w:?}");
        }
        assert!(pts[0].spanning_fraction <= pts[16].spanning_fraction);
    }
}

#[test]
fn larger_lattices_sit_closer_to_one_half() {
    let dev = |l: usize| -> f64 {
        (0..6u64)
            .map(|seed| (estimate_site_threshold(l, 200, seed).unwrap().p_c_estimate.unwrap() - 0.5).abs())
            .sum::<f64>()
            / 6.0
    };
    let (small, large) = (dev(16), dev(64));
    assert!(large < small, "L=16: {small}, L=64: {large}");
}

#[test]
fn estimates_are_reproducible_across_pool_sizes() {
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| estimate_site_threshold(16, 100, 3).unwrap())
    };
    let a = run(1);
    let b = run(4);
    assert_eq!(a, b);
    assert_eq!(a.p_c_estimate.unwrap().to_bits(), b.p_c_estimate.unwrap().to_bits());
    assert_eq!(a.p_values.len(), 12);
}

#[test]
fn gw_strategy_percolates_where_ghz_cannot() {
    let phi1 = 0.3;
    let p = p0_of_phi1(phi1).unwrap();
    let g = contract_to_triangular(&build_honeycomb(128, 128, Boundary::WrapHorizontal).unwrap());
    let pt = spanning_point(&g, p, 200, 42, 0);
    assert!(pt.spanning_fraction > 0.5, "p0 = {p}: {pt:?}");
    // the same bonds converted one by one succeed with probability 2 φ1
    assert!(2.0 * phi1 < HONEYCOMB_BOND_THRESHOLD);
}

#[test]
fn p0_is_the_gw_yield() {
    for k in 0..=500 {
        let x = k as f64 / 1000.0;
        assert!((p0_of_phi1(x).unwrap() - yield_gw_closed(x).unwrap()).abs() < 1e-14, "φ1={x}");
    }
}

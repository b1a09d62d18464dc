use iqconc_core::bases::{ghz_basis, gw_basis};
use iqconc_core::qcore::e2_pair;
use iqconc_core::swap::{gw_k, swap_measure, yield_ghz_closed, yield_gw_closed, TwoQubitPhi};

fn grid() -> impl Iterator<Item = f64> {
    (1..=50).map(|k| k as f64 / 100.0)
}

#[test]
fn ghz_simulation_matches_closed_form() {
    let basis = ghz_basis();
    for p1 in grid() {
        let out = swap_measure(&TwoQubitPhi::from_phi1(p1).unwrap(), &basis).unwrap();
        let total: f64 = out.iter().map(|o| o.probability).sum();
        assert!((total - 1.0).abs() < 1e-12);
        let y: f64 = out.iter().map(|o| o.probability * o.e2).sum();
        assert!((y - yield_ghz_closed(p1).unwrap()).abs() < 1e-9, "φ1={p1}");
    }
}

#[test]
fn gw_simulation_matches_closed_form() {
    let basis = gw_basis();
    for p1 in grid() {
        let p0 = 1.0 - p1;
        // independent of the library: φ0³ + φ1³ + 3φ0φ1²
        let k = p0.powi(3) + p1.powi(3) + 3.0 * p0 * p1 * p1;
        assert!((gw_k(p1) - k).abs() < 1e-15);
        let out = swap_measure(&TwoQubitPhi::from_phi1(p1).unwrap(), &basis).unwrap();
        for o in &out[..5] {
            assert!((o.probability - k / 5.0).abs() < 1e-12, "φ1={p1}");
        }
        for o in &out[5..] {
            assert!((o.probability - p0 * p0 * p1).abs() < 1e-12, "φ1={p1}");
        }
        let total: f64 = out.iter().map(|o| o.probability).sum();
        assert!((total - 1.0).abs() < 1e-12);
        let y: f64 = out.iter().map(|o| o.probability * o.e2).sum();
        assert!((y - yield_gw_closed(p1).unwrap()).abs() < 1e-9, "φ1={p1}");
    }
}

#[test]
fn gw_outcomes_are_party_symmetric() {
    for p1 in [0.1, 0.3, 0.5] {
        let out = swap_measure(&TwoQubitPhi::from_phi1(p1).unwrap(), &gw_basis()).unwrap();
        for o in out {
            let s = o.post_state.expect("GW outcomes all occur for φ1 > 0");
            let bc = e2_pair(&s, 0, 1).unwrap();
            let bd = e2_pair(&s, 0, 2).unwrap();
            let cd = e2_pair(&s, 1, 2).unwrap();
            assert!((bc - bd).abs() < 1e-10 && (bc - cd).abs() < 1e-10, "φ1={p1} outcome {}", o.index);
        }
    }
}

#[test]
fn product_pairs_give_nothing() {
    let phi = TwoQubitPhi::from_phi1(0.0).unwrap();
    for basis in [ghz_basis(), gw_basis()] {
        let y: f64 = swap_measure(&phi, &basis).unwrap().iter().map(|o| o.probability * o.e2).sum();
        assert!(y.abs() < 1e-12);
    }
}

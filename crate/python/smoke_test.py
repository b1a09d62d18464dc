"""Smoke test for the iqconc extension module.

Build the module first, e.g. ``maturin develop -m crates/py/Cargo.toml`` or
``cargo build --release -p iqconc-py --features extension-module`` and put
the resulting ``libiqconc.so`` on ``PYTHONPATH`` as ``iqconc.so``.
"""

import math

import iqconc


def close(a, b, tol):
    assert abs(a - b) < tol, (a, b)


def main():
    gw = iqconc.Basis("gw")
    ortho, compl, ok = gw.verify(1e-12)
    assert ok, (ortho, compl)
    close(gw.average_scp(), (7 - math.sqrt(5)) / 8, 1e-12)
    close(gw.average_roi(), 0.75, 1e-9)
    close(iqconc.Basis("ghz").average_scp(), 1.0, 1e-12)

    s = iqconc.CanonicalState([0.6, 0.3, 0.0, 0.0, math.sqrt(0.55)])
    hat = iqconc.Basis("hat")
    close(s.assisted_yield(0, hat), 2 * min(0.55, 0.45), 1e-9)
    _, _, best = s.optimize_basis(0)
    close(best, s.e2_pair(1, 2), 1e-6)

    close(iqconc.crossover_phi1(), 0.39493, 5e-4)
    phi1, adv = iqconc.max_advantage()
    close(phi1, 0.206, 1e-3)
    close(adv, 0.191, 1e-3)
    outcomes = iqconc.swap_outcomes(0.3, gw)
    close(sum(p for p, _ in outcomes), 1.0, 1e-12)
    close(sum(p * e for p, e in outcomes), iqconc.yield_gw(0.3), 1e-9)

    close(iqconc.phi1_percolation_threshold(), 0.252136, 1e-5)
    report = iqconc.strategy_report()
    close(report["bond_reduction_pct"], 22.7, 0.2)
    close(report["ebit_reduction_pct"], 10.6, 0.2)

    p_c, trace = iqconc.estimate_threshold("triangular-site", 32, 200, seed=1)
    assert len(trace) == 12 and abs(p_c - 0.5) < 0.05, p_c

    try:
        iqconc.yield_gw(0.9)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

    print("iqconc", iqconc.__version__, "smoke test passed")


if __name__ == "__main__":
    main()

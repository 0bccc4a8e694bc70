"""Acceptance criteria, one test each, printing a PASS/FAIL line with the measurements.

Run alone with ``pytest tests/test_acceptance.py -s`` or ``python tests/test_acceptance.py``.
"""

import csv
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES, dyadic_jump_flux, random_periodic_scenario  # noqa: E402
from jumpflux import (  # noqa: E402
    GridSolution,
    Parametrization,
    PLFunction,
    SchemeParams,
    WeightAssignment,
    build_parametrization,
    burgers_flux,
    entropy_residual,
    graphs_equivalent,
    hausdorff_distance,
    indicator_flux,
    run,
    step,
)
from jumpflux import oracles, suites  # noqa: E402
from jumpflux.cli import main, read_snapshots  # noqa: E402
from jumpflux.scheme import FluxTable, stable_dt  # noqa: E402


def report(number, ok, detail, elapsed, budget):
    ok = bool(ok and elapsed < budget)
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}  [{elapsed:.2f}s / {budget:g}s]"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return ok


def read_table(path):
    with open(path) as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    rows = list(csv.reader(lines))
    return rows[0], np.array(rows[1:], dtype=float)


@pytest.fixture(scope="module", autouse=True)
def warm_kernels():
    # compile the numba kernels once so the budgets measure the numerics
    s = GridSolution(0, 1, np.linspace(0, 1, 8))
    phi = burgers_flux((-1, 2), 5).pieces[0]
    flat = PLFunction(phi.x, phi.values[:, 0])
    for kind in ("godunov", "engquist_osher"):
        run(s, flat, SchemeParams(0.9, kind), 0.01)
        step(s, flat, SchemeParams(0.9, kind))


def test_criterion_01_parametrization_table(tmp_path):
    cfg = tmp_path / "heaviside.yaml"
    cfg.write_text("flux: {kind: heaviside, state_range: [-1, 2], point: 0.5}\n"
                   "parametrization: {weights: [1.0], theta: 0.5}\n")
    t0 = time.perf_counter()
    code = main(["parametrize", "--config", str(cfg), "--out", str(tmp_path)])
    header, rows = read_table(tmp_path / "parametrization.csv")
    elapsed = time.perf_counter() - t0
    v, b, g = rows.T
    b_ref = np.where(v < 0, v, np.where(v <= 1, 0.0, v - 1))
    g_ref = np.where(v < 0, 0.0, np.where(v <= 1, v, 1.0))
    breaks_ok = {0.0, 1.0} <= set(v)
    ok = code == 0 and header == ["v", "b", "g_1"] and breaks_ok \
        and np.array_equal(b, b_ref) and np.array_equal(g, g_ref)
    detail = f"max|b-b_ref|={np.max(np.abs(b - b_ref)):.1e} max|g-g_ref|={np.max(np.abs(g - g_ref)):.1e} (tol 0)"
    assert report(1, ok, detail, elapsed, 1.0)


def test_criterion_02_reparametrization_invariance():
    t0 = time.perf_counter()
    lo, hi = -1.0, 2.0
    f = indicator_flux((lo, hi), 0.0)
    p = build_parametrization(f, WeightAssignment((2.0,)), 0.5)
    q = build_parametrization(f, WeightAssignment((1.0,)), 0.3)
    # b = v+1 | 0 | v-1 and g = 1-|v| on [-1, 1], moved by +1 in v
    shift = 1.0
    table = Parametrization.from_tables(
        np.array([lo - 1, -1, 0, 1, hi + 1]) + shift, [lo, 0, 0, 0, hi], [0, 0, 1, 0, 0]
    )
    d_pq = hausdorff_distance(p, q)
    d_table = hausdorff_distance(p, table)
    elapsed = time.perf_counter() - t0
    ok = graphs_equivalent(p, q, 1e-10) and graphs_equivalent(p, table, 1e-12)
    assert report(2, ok, f"d(h=2,h=1)={d_pq:.1e} (tol 1e-10), d(h=2,table)={d_table:.1e} (tol 1e-12)",
                  elapsed, 1.0)


def test_criterion_03_structure_of_b():
    t0 = time.perf_counter()
    rng = np.random.default_rng(3)
    worst_slope_lo, worst_slope_hi, width_err, sandwich = 0.0, 1.0, 0.0, True
    for i in range(200):
        f, w = dyadic_jump_flux(rng, int(rng.integers(1, 7)), int(rng.integers(1, 3)))
        p = build_parametrization(f, w, 0.5)
        s = p.b.slopes()
        worst_slope_lo = min(worst_slope_lo, s.min())
        worst_slope_hi = max(worst_slope_hi, s.max())
        width_err = max(width_err, max(abs(pl.width - h) for pl, h in zip(p.plateaus, w.weights)))
        sandwich &= bool(np.all(p.v - w.total <= p.b.values) and np.all(p.b.values <= p.v))
    elapsed = time.perf_counter() - t0
    ok = worst_slope_lo >= 0 and worst_slope_hi <= 1 and width_err == 0 and sandwich
    assert report(3, ok, f"slopes in [{worst_slope_lo:g}, {worst_slope_hi:g}], max|width-h|={width_err:g}, "
                         f"sandwich={'ok' if sandwich else 'violated'} over 200 fluxes", elapsed, 10.0)


def test_criterion_04_burgers_riemann():
    t0 = time.perf_counter()
    piece = burgers_flux((-2, 2), 401).pieces[0]
    phi = PLFunction(piece.x, piece.values[:, 0])
    dx = 0.005
    shock0 = GridSolution.from_function(lambda x: np.where(x < 0, 1.0, 0.0), -1, 2, round(3 / dx), "constant")
    (shock,) = run(shock0, phi, SchemeParams(), 1.0)
    i = int(np.argmax(shock.u < 0.5))
    # interpolate the half-level crossing between the bracketing cells
    xs = shock.centers[i - 1] + dx * (shock.u[i - 1] - 0.5) / (shock.u[i - 1] - shock.u[i])
    fan0 = GridSolution.from_function(lambda x: np.where(x < 0, 0.0, 1.0), -2, 2, round(4 / dx), "constant")
    (fan,) = run(fan0, phi, SchemeParams(), 1.0)
    l1 = np.sum(np.abs(fan.u - np.clip(fan.centers, 0, 1))) * dx
    elapsed = time.perf_counter() - t0
    ok = abs(xs - 0.5) <= 2 * dx and l1 <= 0.05
    assert report(4, ok, f"|x_shock-0.5|={abs(xs - 0.5):.2e} (tol {2 * dx:g}), rarefaction L1={l1:.2e} (tol 0.05)",
                  elapsed, 30.0)


def test_criterion_05_example1_largest(tmp_path):
    cfg = tmp_path / "example1.yaml"
    cfg.write_text(
        "flux: {kind: heaviside, state_range: [-1, 2]}\n"
        "domain: {x_lo: -20, x_hi: 20, cells: 4000, boundary: constant}\n"
        "initial: {kind: example1}\n"
        "times: {t_end: 1.0}\n"
        "extremal: {r0: 64, window: [-10, 10], max_iter: 6}\n"
    )
    t0 = time.perf_counter()
    code = main(["extremal", "--config", str(cfg), "--which", "largest", "--out", str(tmp_path)])
    (final,) = read_snapshots(tmp_path / "extremal_largest.csv")[""]
    dist = oracles.score(final, oracles.EXAMPLE1_LARGEST, (-10, 10))
    elapsed = time.perf_counter() - t0
    ok = code == 0 and abs(final.dx - 0.01) < 1e-12 and final.t == 1.0 and dist <= 0.05
    assert report(5, ok, f"L1 on [-10,10] = {dist:.3e} (tol 0.05)", elapsed, 60.0)


def test_criterion_06_example1_smallest():
    t0 = time.perf_counter()
    window = (-40.0, 40.0)
    res = suites.example1_smallest(window=window)
    errs = {}
    for t in (1.0, 2.0, 3.0, 3.5):
        s = next(g for g in res.solutions if abs(g.t - t) < 1e-12)
        errs[t] = abs(oracles.window_mass(s, window) - oracles.example1_smallest_mass(t))
    s2 = next(g for g in res.solutions if abs(g.t - 2.0) < 1e-12)
    front_err = abs(oracles.detect_front(s2, window=window) - 0.4577)
    elapsed = time.perf_counter() - t0
    ok = max(errs.values()) <= 0.1 and front_err <= 0.2
    masses = ", ".join(f"t={t:g}: {e:.3f}" for t, e in errs.items())
    assert report(6, ok, f"|mass-(pi-t)+| {masses} (tol 0.1); |front-0.4577|={front_err:.3f} (tol 0.2); "
                         f"converged={res.converged}", elapsed, 90.0)


def test_criterion_07_example2():
    t0 = time.perf_counter()
    rep = suites.suite_example2(window=(-5.0, 5.0))
    elapsed = time.perf_counter() - t0
    c = {k.name: k for k in rep.checks}
    ok = (c["riemann_l1_vs_heaviside"].value <= 0.05 and c["single_valued_weak_residual"].value > 0.5
          and c["extended_weak_residual"].value <= 0.01)
    assert report(7, ok, f"L1 to H on [-5,5]={c['riemann_l1_vs_heaviside'].value:.1e} (tol 0.05), "
                         f"single-valued residual={c['single_valued_weak_residual'].value:.3f} (> 0.5), "
                         f"extended residual={c['extended_weak_residual'].value:.1e} (tol 0.01)", elapsed, 30.0)


def test_criterion_08_periodic_uniqueness():
    t0 = time.perf_counter()
    u0, big, small = suites.periodic_pair(cells=1000)
    gap = np.sum(np.abs(big.final.u - small.final.u)) * u0.dx
    tv = 4 * 0.4
    drift = max(abs(big.final.mass - u0.mass), abs(small.final.mass - u0.mass))
    elapsed = time.perf_counter() - t0
    ok = big.final.t == 1.0 and gap <= 3 * u0.dx * tv and drift <= 1e-10
    assert report(8, ok, f"L1(u+ - u-)={gap:.2e} (tol {3 * u0.dx * tv:.2e}), mean drift={drift:.1e} (tol 1e-10)",
                  elapsed, 60.0)


def test_criterion_09_monotone_scheme_properties():
    t0 = time.perf_counter()
    rng = np.random.default_rng(9)
    worst = {"max_principle": 0.0, "l1_growth": 0.0, "comparison": 0.0, "entropy": 0.0}
    for n in range(50):
        rf, u0, w0 = random_periodic_scenario(rng, cells=int(rng.choice([32, 48, 64])))
        params = SchemeParams(0.9, "godunov" if n % 2 == 0 else "engquist_osher")
        u, w = GridSolution(0, 1, u0), GridSolution(0, 1, w0)
        lo, hi = u0.min(), u0.max()
        table = FluxTable.of(rf)
        dt = min(stable_dt(u, table, 0.9), stable_dt(w, table, 0.9), u.dx)
        gap = np.sum(np.abs(u.u - w.u)) * u.dx
        for k_step in range(40):
            u1, w1 = step(u, rf, params, dt), step(w, rf, params, dt)
            worst["max_principle"] = max(worst["max_principle"], lo - u1.u.min(), u1.u.max() - hi)
            g1 = np.sum(np.abs(u1.u - w1.u)) * u.dx
            worst["l1_growth"] = max(worst["l1_growth"], g1 - gap)
            worst["comparison"] = max(worst["comparison"], float(np.max(u1.u - w1.u)))
            if k_step % 4 == 0:
                for k in rng.uniform(-1, 1, size=20):
                    worst["entropy"] = max(worst["entropy"], entropy_residual(u, u1, rf, k, params.flux))
            u, w, gap = u1, w1, g1
    elapsed = time.perf_counter() - t0
    # ordering is judged up to the rounding of the stored values (see notes)
    ok = (worst["max_principle"] <= 0 and worst["l1_growth"] <= 1e-12
          and worst["comparison"] <= 1e-15 and worst["entropy"] <= 1e-12)
    detail = ", ".join(f"{k}={v:.1e}" for k, v in worst.items())
    assert report(9, ok, detail + " (tol 0, 1e-12, 1e-15, 1e-12)", elapsed, 120.0)


def test_criterion_10_convergence_ladder(tmp_path):
    t0 = time.perf_counter()
    code = main(["convergence", "--refine", "4", "--jobs", "4", "--out", str(tmp_path)])
    header, rows = read_table(tmp_path / "convergence.csv")
    elapsed = time.perf_counter() - t0
    dx, cells, err = rows.T
    ok = (code == 0 and np.allclose(dx, [0.08, 0.04, 0.02, 0.01], rtol=0, atol=1e-15)
          and np.all(np.diff(err) <= 0) and err[-1] <= 0.5 * err[0])
    ladder = " ".join(f"{e:.2e}" for e in err)
    assert report(10, ok, f"errors {ladder}; final/initial={err[-1] / err[0]:.3f} (tol 0.5)", elapsed, 120.0)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))

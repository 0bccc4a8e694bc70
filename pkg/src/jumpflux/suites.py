"""Bundled verification scenarios scored against the closed-form references.

Each suite runs its scenarios and returns a :class:`SuiteReport` of named
checks with measured values and thresholds.  The command line ``verify``
subcommand and the acceptance tests both go through these functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import oracles
from .extremal import ExtremalParams, ExtremalResult, solve_largest, solve_smallest
from .flux import JumpFlux, heaviside_flux, indicator_flux
from .parametrize import build_parametrization
from .regularize import regularize
from .scheme import GridSolution, SchemeParams, run

FRONT_TIME = 2.0
MASS_TIMES = (1.0, 2.0, 3.0, 3.5)


@dataclass
class Check:
    name: str
    value: float
    threshold: float
    passed: bool

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag} {self.name}: measured {self.value:.6g} (threshold {self.threshold:.6g})"


@dataclass
class SuiteReport:
    suite: str
    checks: list[Check] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, value: float, threshold: float, passed: bool | None = None):
        ok = value <= threshold if passed is None else passed
        self.checks.append(Check(name, float(value), float(threshold), bool(ok)))

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [c.__dict__ for c in self.checks],
            "info": self.info,
        }


# ---- example1: Heaviside flux, u0 = 1/(1+x^2) ------------------------------


def example1_largest(cells: int = 4000, x_lo: float = -20.0, x_hi: float = 20.0, t_end: float = 1.0,
                     times=(), r0: float = 64.0, window=(-10.0, 10.0)) -> ExtremalResult:
    f = heaviside_flux()
    u0 = GridSolution.from_function(oracles.example1_initial, x_lo, x_hi, cells, "constant")
    params = ExtremalParams(r0=r0, sup_bound=1.0, inf_bound=0.0, window=window, eps_stop=1e-3, max_iter=6)
    return solve_largest(f, u0, params, t_end, times)


def example1_smallest(cells: int = 3200, x_lo: float = -80.0, x_hi: float = 80.0,
                      times=MASS_TIMES + (1.9, 2.1), r0: float = 500.0,
                      window=(-40.0, 40.0)) -> ExtremalResult:
    # the front at t = 3.5 has already swept the window; a wide domain keeps
    # the mass of the tail x > 40 (about 0.025) inside the tolerance
    f = heaviside_flux()
    u0 = GridSolution.from_function(oracles.example1_initial, x_lo, x_hi, cells, "constant")
    params = ExtremalParams(r0=r0, sup_bound=1.0, inf_bound=0.0, window=window, eps_stop=0.04, max_iter=3)
    return solve_smallest(f, u0, params, max(times), [t for t in times if t < max(times)])


def _at(result: ExtremalResult, t: float) -> GridSolution:
    for s in result.solutions:
        if math.isclose(s.t, t, rel_tol=0, abs_tol=1e-12):
            return s
    raise KeyError(t)


def suite_example1(largest_window=(-10.0, 10.0), smallest_window=(-40.0, 40.0)) -> SuiteReport:
    rep = SuiteReport("example1")
    big = example1_largest(window=largest_window)
    rep.add("largest_l1_vs_stationary", oracles.score(big.final, oracles.EXAMPLE1_LARGEST, largest_window), 0.05)
    rep.info["largest"] = big.report()

    small = example1_smallest(window=smallest_window)
    for t in MASS_TIMES:
        s = _at(small, t)
        err = abs(oracles.window_mass(s, smallest_window) - oracles.example1_smallest_mass(t))
        rep.add(f"smallest_mass_t={t:g}", err, 0.1)
    s2 = _at(small, FRONT_TIME)
    front = oracles.detect_front(s2, window=smallest_window)
    rep.add(f"smallest_front_t={FRONT_TIME:g}", abs(front - oracles.example1_front(FRONT_TIME)), 0.2)
    # shock-speed diagnostic along the v = 0 branch (not scored)
    xa = oracles.detect_front(_at(small, 1.9), window=smallest_window)
    xb = oracles.detect_front(_at(small, 2.1), window=smallest_window)
    rep.info["front_speed_measured"] = (xb - xa) / 0.2
    rep.info["front_speed_expected"] = float(oracles.example1_front_speed(front))
    rep.info["smallest"] = small.report()
    return rep


# ---- example2: indicator flux, Heaviside data ------------------------------


def example2_run(cells: int = 2000, x_lo: float = -10.0, x_hi: float = 10.0, r: float = 64.0,
                 t_end: float = 1.0, frames: int = 40):
    f = indicator_flux((-0.5, 1.5), 0.0)
    rf = regularize(build_parametrization(f), r, cover=f.state_range)
    u0 = GridSolution.from_function(lambda x: oracles.example2_solution(0.0, x), x_lo, x_hi, cells,
                                    "constant", (0.0, 1.0))
    times = np.linspace(0.0, t_end, frames + 1)
    sols = [u0] + run(u0, rf, SchemeParams(), t_end, list(times[1:-1]))
    return f, rf, sols


def suite_example2(window=(-5.0, 5.0)) -> SuiteReport:
    rep = SuiteReport("example2")
    f, rf, sols = example2_run()
    final = sols[-1]
    rep.add("riemann_l1_vs_heaviside", oracles.score(final, oracles.EXAMPLE2, window), 0.05)

    times = np.array([s.t for s in sols])
    x = final.centers
    u = np.stack([s.u for s in sols])
    extended = oracles.weak_residual(times, x, u, rf.phi_r(u.ravel()).reshape(u.shape), final.dx)
    rep.add("extended_weak_residual", extended, 0.01)

    h = np.broadcast_to(oracles.example2_solution(0.0, x), u.shape)
    single = np.asarray(f(h))[..., 0]
    candidate = oracles.weak_residual(times, x, h, single, final.dx)
    rep.add("single_valued_weak_residual", candidate, 0.5, passed=candidate > 0.5)
    return rep


# ---- periodic data: largest and smallest coincide ---------------------------


def periodic_pair(cells: int = 1000, t_end: float = 1.0, f: JumpFlux | None = None):
    f = f or heaviside_flux()
    u0 = GridSolution.from_function(lambda x: 0.5 + 0.4 * np.sin(2 * np.pi * x), 0.0, 1.0, cells, "periodic")
    params = ExtremalParams(r0=16.0, sup_bound=0.9, inf_bound=0.1, window=(0.0, 1.0), eps_stop=1e-8, max_iter=4)
    return u0, solve_largest(f, u0, params, t_end), solve_smallest(f, u0, params, t_end)


def suite_periodic() -> SuiteReport:
    rep = SuiteReport("periodic")
    u0, big, small = periodic_pair()
    tv = float(np.sum(np.abs(np.diff(np.append(u0.u, u0.u[0])))))
    gap = float(np.sum(np.abs(big.final.u - small.final.u)) * u0.dx)
    rep.add("largest_minus_smallest_l1", gap, 3 * u0.dx * tv)
    for name, res in (("largest", big), ("smallest", small)):
        drift = abs(res.final.mass - u0.mass)
        rep.add(f"{name}_mean_drift", drift, 1e-10)
    rep.info["largest"] = big.report()
    rep.info["smallest"] = small.report()
    return rep


# ---- refinement ladder ------------------------------------------------------


def convergence_ladder(cells=(500, 1000, 2000, 4000), window=(-10.0, 10.0), jobs: int = 1):
    """``(dx, cells, l1_error)`` of the example1 largest solution at ``t = 1``."""
    from concurrent.futures import ThreadPoolExecutor

    def one(n):
        res = example1_largest(cells=n, window=window)
        return res.final.dx, n, oracles.score(res.final, oracles.EXAMPLE1_LARGEST, window)

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        return list(pool.map(one, cells))


SUITES = {"example1": suite_example1, "example2": suite_example2, "periodic": suite_periodic}

"""Largest and smallest entropy solutions by monotone approximation from above.

Iterate ``m`` replaces the data outside the truncation radius (and the far
field) by ``d_m = d + d_offset * 2**-m`` where ``d`` bounds the data from
above, regularizes the flux with index ``r_m``, and solves.  Iterates are
compared on an analysis window; the loop stops once the L1 increment between
successive iterates drops below ``eps_stop``.  The smallest solution is the
negated largest solution of the mirrored problem ``u_t - phi(-u)_x = 0``.
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass, field

import numpy as np

from .flux import JumpFlux
from .parametrize import WeightAssignment, build_parametrization
from .regularize import regularize
from .scheme import GridSolution, SchemeParams, run

log = logging.getLogger(__name__)


class MonotonicityError(RuntimeError):
    pass


class StateRangeError(ValueError):
    pass


@dataclass(frozen=True)
class ExtremalParams:
    r0: float = 16.0
    r_growth: float = 2.0
    r_max: float | None = None
    d_offset: float = 1.0
    sup_bound: float | None = None
    inf_bound: float | None = None
    radius: float | None = None
    eps_stop: float = 1e-3
    max_iter: int = 8
    min_iter: int = 2
    window: tuple[float, float] | None = None
    weights: tuple[float, ...] | None = None
    theta: float = 0.5
    scheme: SchemeParams = field(default_factory=SchemeParams)
    monotone_slack: float = 1e-10

    def __post_init__(self):
        if not self.eps_stop > 0:
            raise ValueError("eps_stop must be positive")
        if not self.r0 >= 1:
            raise ValueError("r0 must be >= 1")
        if not self.r_growth > 1:
            raise ValueError("r_growth must exceed 1 so that r_m increases")
        if not self.d_offset > 0:
            raise ValueError("d_offset must be positive")
        if self.max_iter < 1 or self.min_iter < 1:
            raise ValueError("iteration counts must be positive")

    def r_at(self, m: int) -> float:
        r = self.r0 * self.r_growth ** (m - 1)
        return r if self.r_max is None else min(r, self.r_max)

    def d_at(self, d: float, m: int) -> float:
        return d + self.d_offset * 2.0 ** -m


@dataclass
class ExtremalResult:
    solutions: list[GridSolution]
    iterations: int
    increments: list[float]
    converged: bool
    r_values: list[float] = field(default_factory=list)
    d_values: list[float] = field(default_factory=list)
    violations: list[float] = field(default_factory=list)

    @property
    def final(self) -> GridSolution:
        return self.solutions[-1]

    def report(self) -> dict:
        return {
            "iterations": self.iterations,
            "converged": self.converged,
            "increments": [float(s) for s in self.increments],
            "r_values": [float(s) for s in self.r_values],
            "d_values": [float(s) for s in self.d_values],
            "monotonicity_violations": [float(s) for s in self.violations],
            "times": [float(s.t) for s in self.solutions],
        }


def default_window(s: GridSolution) -> tuple[float, float]:
    mid = 0.5 * (s.x_lo + s.x_hi)
    quarter = 0.25 * (s.x_hi - s.x_lo)
    return mid - quarter, mid + quarter


def truncated_data(u0: GridSolution, d_m: float, radius: float | None) -> GridSolution:
    if u0.boundary == "periodic":
        return u0
    u = np.array(u0.u)
    if radius is not None:
        mid = 0.5 * (u0.x_lo + u0.x_hi)
        u[np.abs(u0.centers - mid) > radius] = d_m
    return GridSolution(u0.x_lo, u0.x_hi, u, u0.t, "constant", (d_m, d_m))


def solve_largest(
    f: JumpFlux,
    u0: GridSolution,
    params: ExtremalParams = ExtremalParams(),
    t_end: float = 1.0,
    times=(),
) -> ExtremalResult:
    lo, hi = f.state_range
    d = float(u0.u.max()) if params.sup_bound is None else float(params.sup_bound)
    if u0.u.min() < lo or u0.u.max() > hi:
        raise StateRangeError("initial data leave the flux state range")
    window = params.window or default_window(u0)
    mask = (u0.centers >= window[0]) & (u0.centers <= window[1])
    weights = None if params.weights is None else WeightAssignment(params.weights)
    par = build_parametrization(f, weights, params.theta)

    prev = None
    increments, violations, r_vals, d_vals = [], [], [], []
    converged = False
    m = 0
    for m in range(1, params.max_iter + 1):
        r_m = params.r_at(m)
        d_m = params.d_at(d, m)
        if u0.boundary != "periodic" and d_m > hi:
            raise StateRangeError(f"d_{m}={d_m!r} exceeds the flux state range [{lo}, {hi}]")
        rf = regularize(par, r_m, cover=f.state_range)
        sols = run(truncated_data(u0, d_m, params.radius), rf, params.scheme, t_end, times)
        r_vals.append(r_m)
        d_vals.append(d_m)
        if prev is not None:
            diffs = [s.u[mask] - q.u[mask] for s, q in zip(sols, prev)]
            inc = max(float(np.sum(np.abs(dd)) * u0.dx) for dd in diffs)
            viol = max(float(dd.max(initial=0.0)) for dd in diffs)
            increments.append(inc)
            violations.append(max(viol, 0.0))
            log.info("iterate %d: r=%g d=%g increment=%.3e", m, r_m, d_m, inc)
            # only iterates sharing the regularized flux are ordered by comparison
            if r_vals[-1] == r_vals[-2] and viol > params.monotone_slack:
                raise MonotonicityError(
                    f"iterate {m} exceeds iterate {m - 1} by {viol:.3e} on the analysis window"
                )
            if inc <= params.eps_stop and m >= params.min_iter:
                prev = sols
                converged = True
                break
        prev = sols
    return ExtremalResult(prev, m, increments, converged, r_vals, d_vals, violations)


def mirror_problem(f: JumpFlux, u0: GridSolution) -> tuple[JumpFlux, GridSolution]:
    """``(u -> -phi(-u), -u0)``: ``-u`` solves ``u_t - phi(-u)_x = 0`` on the same grid."""
    return f.mirrored(), _negated(u0)


def _negated(s: GridSolution) -> GridSolution:
    far = None if s.far_field is None else (-s.far_field[0], -s.far_field[1])
    return GridSolution(s.x_lo, s.x_hi, -s.u, s.t, s.boundary, far)


def solve_smallest(
    f: JumpFlux,
    u0: GridSolution,
    params: ExtremalParams = ExtremalParams(),
    t_end: float = 1.0,
    times=(),
) -> ExtremalResult:
    fm, um = mirror_problem(f, u0)
    mparams = dataclasses.replace(
        params,
        sup_bound=None if params.inf_bound is None else -params.inf_bound,
        inf_bound=None if params.sup_bound is None else -params.sup_bound,
    )
    res = solve_largest(fm, um, mparams, t_end, times)
    res.solutions = [_negated(s) for s in res.solutions]
    return res

"""Closed-form reference solutions for the Heaviside and indicator-flux problems.

For ``u_t + H(u)_x = 0`` with ``u_0 = 1/(1+x^2)`` the largest entropy
solution is stationary, while the smallest one is cut off behind the front
``x = tan(t - pi/2)`` (which sweeps the whole line by ``t = pi``) and carries
mass ``(pi - t)^+``.  For the indicator flux ``chi_0`` with Heaviside initial
data the solution under the multivalued extension is ``H(x)`` itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .scheme import GridSolution


@dataclass(frozen=True)
class OracleField:
    name: str
    func: Callable
    t_min: float = 0.0
    t_max: float = np.inf

    def __call__(self, t, x):
        if not self.t_min <= t <= self.t_max:
            raise ValueError(f"{self.name} is not valid at t={t!r}")
        return self.func(t, x)


def _u0(x):
    x = np.asarray(x, dtype=float)
    return 1.0 / (1.0 + x * x)


def example1_initial(x):
    return _u0(x)


def example1_largest(t, x):
    return _u0(x)


def example1_front(t: float) -> float:
    """Position of the cut-off front of the smallest solution; ``+inf`` once ``t >= pi``."""
    if t >= np.pi:
        return np.inf
    return float(np.tan(t - np.pi / 2))


def example1_smallest(t, x):
    x = np.asarray(x, dtype=float)
    if t >= np.pi:
        return np.zeros_like(x)[()]
    out = np.where(x > example1_front(t), _u0(x), 0.0)
    return out[()]


def example1_smallest_mass(t: float) -> float:
    return max(np.pi - t, 0.0)


def example1_front_speed(x):
    """Shock speed ``(1 + x^2)(1 - v)`` along the front for the ``v = 0`` branch."""
    x = np.asarray(x, dtype=float)
    return 1.0 + x * x


def example2_solution(t, x):
    # H(0) pinned to 1 (right-continuous) so sampled output is deterministic
    x = np.asarray(x, dtype=float)
    return np.where(x >= 0.0, 1.0, 0.0)[()]


EXAMPLE1_LARGEST = OracleField("example1_largest", example1_largest)
EXAMPLE1_SMALLEST = OracleField("example1_smallest", example1_smallest, t_min=0.0)
EXAMPLE2 = OracleField("example2", example2_solution)

ORACLES = {f.name: f for f in (EXAMPLE1_LARGEST, EXAMPLE1_SMALLEST, EXAMPLE2)}


def window_mask(s: GridSolution, window) -> np.ndarray:
    lo, hi = window
    if lo < s.x_lo - 1e-12 or hi > s.x_hi + 1e-12 or not lo < hi:
        raise ValueError(f"window {window!r} is not inside [{s.x_lo}, {s.x_hi}]")
    x = s.centers
    return (x >= lo) & (x <= hi)


def score(numerical: GridSolution, oracle: OracleField | Callable, window) -> float:
    """L1 distance ``sum |u_j - oracle(t, x_j)| dx`` over cells centred in ``window``."""
    mask = window_mask(numerical, window)
    x = numerical.centers[mask]
    ref = np.asarray(oracle(numerical.t, x), dtype=float)
    return float(np.sum(np.abs(numerical.u[mask] - ref)) * numerical.dx)


def window_mass(s: GridSolution, window) -> float:
    mask = window_mask(s, window)
    return float(np.sum(s.u[mask]) * s.dx)


def detect_front(s: GridSolution, profile: Callable = example1_initial, level: float = 0.5, window=None) -> float:
    """Leftmost cell centre where ``u`` reaches ``level * profile(x)``.

    Linear interpolation between the bracketing cells refines the crossing.
    Returns ``-inf`` when the first cell already exceeds the level and
    ``+inf`` when no cell does.
    """
    x = s.centers
    mask = np.ones(x.size, dtype=bool) if window is None else window_mask(s, window)
    x, u = x[mask], s.u[mask]
    gap = u - level * np.asarray(profile(x), dtype=float)
    hit = np.flatnonzero(gap >= 0)
    if hit.size == 0:
        return np.inf
    i = hit[0]
    if i == 0:
        return -np.inf
    g0, g1 = gap[i - 1], gap[i]
    return float(x[i - 1] + (x[i] - x[i - 1]) * (-g0) / (g1 - g0))


def plateau_bump(t, t0: float = 0.0, t1: float = 1.0, ramp: float = 0.2):
    """C^1 time profile: 0 outside ``(t0, t1)``, 1 on the middle, smoothstep ramps."""
    t = np.asarray(t, dtype=float)
    w = ramp * (t1 - t0)
    up = np.clip((t - t0) / w, 0.0, 1.0)
    down = np.clip((t1 - t) / w, 0.0, 1.0)
    s = lambda z: z * z * (3.0 - 2.0 * z)  # noqa: E731
    return s(up) * s(down)


def cosine_bump(x, half_width: float = 1.0):
    """``cos^2(pi x / (2 half_width))`` on ``|x| <= half_width``, zero outside."""
    x = np.asarray(x, dtype=float)
    return np.where(np.abs(x) <= half_width, np.cos(np.pi * x / (2.0 * half_width)) ** 2, 0.0)


def cosine_bump_dx(x, half_width: float = 1.0):
    """Derivative of ``cos^2(pi x / (2 half_width))`` on ``|x| <= half_width``, zero outside."""
    x = np.asarray(x, dtype=float)
    k = np.pi / (2.0 * half_width)
    return np.where(np.abs(x) <= half_width, -k * np.sin(2.0 * k * x), 0.0)


def weak_residual(times, x, u, flux_values, dx: float, p=plateau_bump, q=cosine_bump, q_x=cosine_bump_dx) -> float:
    """``|int int u f_t + F f_x dx dt|`` for the test function ``f = p(t) q(x)``.

    ``u`` and ``flux_values`` are arrays of shape ``(len(times), len(x))``
    holding the field and its flux at cell centres.  ``p`` must vanish at the
    first and last time so no boundary terms arise; then ``int u p' q`` is
    replaced by the equivalent ``-int p u_t q`` via summation by parts in
    time, which keeps the discrete estimate exact for stationary fields.
    """
    times = np.asarray(times, dtype=float)
    u = np.asarray(u, dtype=float)
    F = np.asarray(flux_values, dtype=float)
    qx = q_x(x)
    pt = p(times)
    U = u @ q(x) * dx
    time_term = -np.sum(0.5 * (pt[1:] + pt[:-1]) * np.diff(U))
    G = F @ qx * dx
    flux_term = np.sum(0.5 * (pt[1:] * G[1:] + pt[:-1] * G[:-1]) * np.diff(times))
    return float(abs(time_term + flux_term))

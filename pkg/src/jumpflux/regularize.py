"""Strictly monotone regularization ``b_r(v) = b(v) + v / r``.

Its inverse turns the parametrized flux into the single-valued continuous
flux ``phi_r(u) = g(b_r^{-1}(u))`` on which the finite-volume solver runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .parametrize import Parametrization
from .pl import PLFunction


@dataclass(frozen=True, eq=False)
class RegularizedFlux:
    r: float
    b_r: PLFunction
    phi_r: PLFunction
    lipschitz: float
    source: Parametrization

    @property
    def u_range(self) -> tuple[float, float]:
        """Range of ``b_r``, where the inverse is defined."""
        return float(self.b_r.values[0]), float(self.b_r.values[-1])


def regularize(p: Parametrization, r: float, cover=None) -> RegularizedFlux:
    """Build ``b_r`` and ``phi_r`` on the pushed-forward breakpoints ``u_j = b_r(v_j)``.

    ``cover`` optionally names a state interval ``(lo, hi)`` that ``phi_r``
    must be defined on.  ``b_r`` maps the v-range onto an interval shifted by
    ``v / r``, so its image can fall short of the flux state range near an
    end; the gap (of width at most ``|v_end| / r``) is bridged by continuing
    the end value of ``g`` as a constant.
    """
    if not r >= 1:
        raise ValueError(f"regularization index must be >= 1, got {r!r}")
    v = p.v
    u = p.b.values + v / r
    if np.any(np.diff(u) <= 0):
        raise ValueError("b_r is not strictly increasing in floating point; reduce r")
    b_r = PLFunction(v, u)
    g = p.g.values
    if g.ndim == 2 and g.shape[1] == 1:
        g = g[:, 0]
    nodes, vals = u, g
    if cover is not None:
        lo, hi = cover
        if lo < nodes[0]:
            nodes = np.concatenate([[lo], nodes])
            vals = np.concatenate([vals[:1], vals])
        if hi > nodes[-1]:
            nodes = np.concatenate([nodes, [hi]])
            vals = np.concatenate([vals, vals[-1:]])
    phi_r = PLFunction(nodes, vals)
    return RegularizedFlux(float(r), b_r, phi_r, phi_r.lipschitz(), p)


def invert_br(rf: RegularizedFlux, u):
    """Exact inverse of ``b_r``: segment lookup and one linear solve."""
    u_arr = np.asarray(u, dtype=float)
    nodes, v = rf.b_r.values, rf.b_r.x
    if np.any(u_arr < nodes[0]) or np.any(u_arr > nodes[-1]):
        raise ValueError(f"u outside the range [{nodes[0]!r}, {nodes[-1]!r}] of b_r")
    k = np.clip(np.searchsorted(nodes, u_arr, side="right") - 1, 0, nodes.size - 2)
    exact = nodes[k] == u_arr
    frac = (u_arr - nodes[k]) / (nodes[k + 1] - nodes[k])
    out = np.where(exact, v[k], v[k] + frac * (v[k + 1] - v[k]))
    out = np.where(u_arr == nodes[-1], v[-1], out)
    return out[()] if out.ndim == 0 else out


def lipschitz_bound(rf: RegularizedFlux) -> float:
    return rf.lipschitz

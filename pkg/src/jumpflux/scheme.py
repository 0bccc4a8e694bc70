"""First-order monotone finite-volume solver for ``u_t + phi(u)_x = 0``.

The flux is a scalar :class:`~jumpflux.pl.PLFunction` (typically the
regularized flux).  Interval extrema in the Godunov flux are taken over the
breakpoints inside ``[uL, uR]`` plus the end points, so they carry no
sampling error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import _kernels as K
from .pl import PLFunction
from .regularize import RegularizedFlux

FLUX_KINDS = {"godunov": K.GODUNOV, "engquist_osher": K.ENGQUIST_OSHER}


class CFLError(ValueError):
    pass


@dataclass(frozen=True)
class SchemeParams:
    cfl: float = 0.9
    flux: str = "godunov"

    def __post_init__(self):
        if not 0.0 < self.cfl <= 1.0:
            raise ValueError(f"cfl must lie in (0, 1], got {self.cfl!r}")
        if self.flux not in FLUX_KINDS:
            raise ValueError(f"unknown flux kind {self.flux!r}; use one of {sorted(FLUX_KINDS)}")


@dataclass(frozen=True, eq=False)
class GridSolution:
    """Cell averages on a uniform grid of ``[x_lo, x_hi]`` at time ``t``.

    ``boundary`` is ``"periodic"`` or ``"constant"``; in the latter case
    ghost cells hold ``far_field = (left, right)``.
    """

    x_lo: float
    x_hi: float
    u: np.ndarray
    t: float = 0.0
    boundary: str = "periodic"
    far_field: tuple[float, float] | None = None

    def __post_init__(self):
        u = np.array(self.u, dtype=float)
        u.setflags(write=False)
        object.__setattr__(self, "u", u)
        if u.ndim != 1 or u.size < 2:
            raise ValueError("a grid needs at least two cells")
        if not self.x_hi > self.x_lo:
            raise ValueError("x_hi must exceed x_lo")
        if not np.all(np.isfinite(u)):
            raise ValueError("cell values must be finite")
        if self.boundary == "constant":
            if self.far_field is None:
                object.__setattr__(self, "far_field", (float(u[0]), float(u[-1])))
            else:
                object.__setattr__(self, "far_field", tuple(float(s) for s in self.far_field))
        elif self.boundary == "periodic":
            object.__setattr__(self, "far_field", None)
        else:
            raise ValueError(f"boundary must be 'periodic' or 'constant', got {self.boundary!r}")

    @property
    def cells(self) -> int:
        return self.u.size

    @property
    def dx(self) -> float:
        return (self.x_hi - self.x_lo) / self.u.size

    @property
    def centers(self) -> np.ndarray:
        return self.x_lo + (np.arange(self.u.size) + 0.5) * self.dx

    @property
    def mass(self) -> float:
        return float(np.sum(self.u) * self.dx)

    def replace(self, u=None, t=None, far_field=None) -> GridSolution:
        return GridSolution(
            self.x_lo,
            self.x_hi,
            self.u if u is None else u,
            self.t if t is None else t,
            self.boundary,
            self.far_field if far_field is None else far_field,
        )

    def value_range(self) -> tuple[float, float]:
        lo, hi = float(self.u.min()), float(self.u.max())
        if self.far_field is not None:
            lo = min(lo, *self.far_field)
            hi = max(hi, *self.far_field)
        return lo, hi

    @classmethod
    def from_function(
        cls,
        func: Callable,
        x_lo: float,
        x_hi: float,
        cells: int,
        boundary: str = "periodic",
        far_field=None,
        quad_points: int = 4,
    ) -> GridSolution:
        """Cell averages of ``func`` by Gauss-Legendre quadrature per cell."""
        nodes, weights = np.polynomial.legendre.leggauss(quad_points)
        dx = (x_hi - x_lo) / cells
        centers = x_lo + (np.arange(cells) + 0.5) * dx
        pts = centers[:, None] + 0.5 * dx * nodes[None, :]
        vals = np.asarray(func(pts), dtype=float)
        return cls(x_lo, x_hi, 0.5 * vals @ weights, 0.0, boundary, far_field)


@dataclass(frozen=True, eq=False)
class FluxTable:
    """Arrays consumed by the compiled kernels."""

    p: np.ndarray
    fp: np.ndarray
    slope: np.ndarray
    pos: np.ndarray
    neg: np.ndarray
    pl: PLFunction = field(repr=False)

    @classmethod
    def of(cls, phi) -> FluxTable:
        if isinstance(phi, FluxTable):
            return phi
        if isinstance(phi, RegularizedFlux):
            phi = phi.phi_r
        if not phi.is_scalar:
            raise ValueError("the solver needs a scalar flux")
        p = np.ascontiguousarray(phi.x, dtype=float)
        fp = np.ascontiguousarray(phi.values, dtype=float)
        if p.size < 2:
            raise ValueError("flux table needs at least two breakpoints")
        slope = np.diff(fp) / np.diff(p)
        dp = np.diff(p)
        pos = np.concatenate([[0.0], np.cumsum(np.maximum(slope, 0.0) * dp)])
        neg = np.concatenate([[0.0], np.cumsum(np.minimum(slope, 0.0) * dp)])
        return cls(p, fp, slope, pos, neg, phi)

    @property
    def domain(self) -> tuple[float, float]:
        return float(self.p[0]), float(self.p[-1])

    def lipschitz_on(self, lo: float, hi: float) -> float:
        """Largest ``|slope|`` over segments meeting ``[lo, hi]``."""
        left = np.maximum(self.p[:-1], lo)
        right = np.minimum(self.p[1:], hi)
        hit = left <= right
        return float(np.max(np.abs(self.slope[hit]), initial=0.0))

    def args(self):
        return self.p, self.fp, self.slope, self.pos, self.neg

    def check_range(self, lo: float, hi: float):
        a, b = self.domain
        if lo < a or hi > b:
            raise ValueError(f"states [{lo!r}, {hi!r}] leave the flux range [{a!r}, {b!r}]")


def numerical_flux(phi, uL, uR, kind: str = "godunov"):
    """Two-point monotone flux ``F(uL, uR)``; vectorised over the states."""
    table = FluxTable.of(phi)
    uL_a = np.atleast_1d(np.asarray(uL, dtype=float))
    uR_a = np.atleast_1d(np.asarray(uR, dtype=float))
    uL_a, uR_a = np.broadcast_arrays(uL_a, uR_a)
    table.check_range(float(min(uL_a.min(), uR_a.min())), float(max(uL_a.max(), uR_a.max())))
    out = K.flux_pairs(
        np.ascontiguousarray(uL_a.ravel()), np.ascontiguousarray(uR_a.ravel()),
        FLUX_KINDS[kind], *table.args()
    ).reshape(uL_a.shape)
    if np.ndim(uL) == 0 and np.ndim(uR) == 0:
        return float(out[0])
    return out


def stable_dt(s: GridSolution, table: FluxTable, cfl: float) -> float:
    """CFL step from the flux's Lipschitz constant on the states present.

    Monotone schemes keep the data inside its initial range, so the bound on
    ``[min u, max u]`` (far-field values included) stays valid for the run.
    Returns ``inf`` when the flux is constant there.
    """
    lip = table.lipschitz_on(*s.value_range())
    return math.inf if lip == 0.0 else cfl * s.dx / lip


def _advance(s: GridSolution, table: FluxTable, kind: str, nsteps: int, dt: float) -> np.ndarray:
    u = np.array(s.u, dtype=float)
    periodic = s.boundary == "periodic"
    gl, gr = (0.0, 0.0) if periodic else s.far_field
    return K.advance(u, nsteps, dt / s.dx, FLUX_KINDS[kind], periodic, gl, gr, *table.args())


def step(s: GridSolution, phi, params: SchemeParams = SchemeParams(), dt: float | None = None) -> GridSolution:
    """One forward-Euler conservative update; refuses steps violating the CFL bound."""
    table = FluxTable.of(phi)
    table.check_range(*s.value_range())
    lip = table.lipschitz_on(*s.value_range())
    if dt is None:
        dt = params.cfl * s.dx / lip if lip > 0 else s.dx
    if not dt > 0:
        raise ValueError("time step must be positive")
    if lip * dt > s.dx * (1.0 + 1e-12):
        raise CFLError(f"CFL number {lip * dt / s.dx:.6g} exceeds 1")
    return s.replace(u=_advance(s, table, params.flux, 1, dt), t=s.t + dt)


def run(
    s0: GridSolution,
    phi,
    params: SchemeParams = SchemeParams(),
    t_end: float | None = None,
    snapshot_times: Sequence[float] = (),
) -> list[GridSolution]:
    """Integrate to ``t_end`` landing exactly on every snapshot time.

    Returns the states at the sorted snapshot times followed by ``t_end``.
    """
    if t_end is None:
        raise ValueError("t_end is required")
    if t_end < s0.t:
        raise ValueError(f"t_end={t_end!r} precedes the initial time {s0.t!r}")
    if t_end == s0.t:
        return [s0]
    targets = sorted({float(t) for t in snapshot_times} | {float(t_end)})
    if targets[0] <= s0.t or targets[-1] > t_end:
        raise ValueError("snapshot times must lie in (t0, t_end]")
    table = FluxTable.of(phi)
    table.check_range(*s0.value_range())
    dt_max = stable_dt(s0, table, params.cfl)
    out, s = [], s0
    for target in targets:
        span = target - s.t
        n = 1 if math.isinf(dt_max) else max(1, math.ceil(span / dt_max * (1 - 1e-14)))
        dt = span / n
        u = _advance(s, table, params.flux, n, dt)
        s = s.replace(u=u, t=target)
        out.append(s)
    return out


def entropy_residual(
    prev: GridSolution,
    nxt: GridSolution,
    phi,
    k: float,
    kind: str | Callable = "godunov",
) -> float:
    """Largest positive cell residual of the discrete Kruzhkov inequality.

    Uses the numerical entropy flux ``Q(a, b) = F(a v k, b v k) - F(a ^ k, b ^ k)``.
    ``kind`` may be a vectorised callable ``F(uL, uR)`` to audit other schemes.
    """
    if prev.cells != nxt.cells or prev.x_lo != nxt.x_lo or prev.x_hi != nxt.x_hi:
        raise ValueError("grids do not match")
    dt = nxt.t - prev.t
    if not dt > 0:
        raise ValueError("next must be later than prev")
    u = prev.u
    if prev.boundary == "periodic":
        ext = np.concatenate([u[-1:], u, u[:1]])
    else:
        ext = np.concatenate([[prev.far_field[0]], u, [prev.far_field[1]]])
    a, b = ext[:-1], ext[1:]
    if callable(kind):
        F = kind
    else:
        F = lambda x, y: numerical_flux(phi, x, y, kind)  # noqa: E731
    Q = F(np.maximum(a, k), np.maximum(b, k)) - F(np.minimum(a, k), np.minimum(b, k))
    res = (np.abs(nxt.u - k) - np.abs(u - k)) / dt + (Q[1:] - Q[:-1]) / prev.dx
    return float(max(0.0, res.max()))

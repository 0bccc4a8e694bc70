"""Continuous parametrization ``u = b(v)``, ``g(v)`` of a multivalued jump flux.

At a jump ``u_k`` the flux graph is completed by the segment chain
``[phi(u_k-), phi(u_k)] U [phi(u_k), phi(u_k+)]``.  The parameter ``v`` is
obtained from the strictly increasing map ``alpha(u) = u + sum_{u_j < u} h_j``;
``b`` is its maximal monotone inverse, constant on the plateau
``[alpha(u_k-), alpha(u_k+)]`` of width ``h_k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .flux import JumpFlux
from .pl import PLFunction


@dataclass(frozen=True)
class WeightAssignment:
    """Positive plateau widths ``h_k``, one per jump in location order."""

    weights: tuple[float, ...]

    def __post_init__(self):
        w = tuple(float(h) for h in self.weights)
        if any(not (h > 0 and np.isfinite(h)) for h in w):
            raise ValueError("plateau weights must be positive and finite")
        object.__setattr__(self, "weights", w)

    @classmethod
    def default(cls, count: int) -> WeightAssignment:
        return cls(tuple(2.0 ** -(k + 1) for k in range(count)))

    @property
    def total(self) -> float:
        return float(sum(self.weights))

    def offsets(self) -> np.ndarray:
        """Cumulative weights ``C_0 = 0, C_k = h_1 + ... + h_k``."""
        return np.concatenate([[0.0], np.cumsum(self.weights)])


@dataclass(frozen=True)
class Alpha:
    """``alpha(u) = u + mu((-inf, u))`` with its jump bookkeeping.

    ``nodes[k] = (u_k, alpha(u_k-), alpha(u_k+))``.
    """

    locations: np.ndarray
    offsets: np.ndarray
    nodes: tuple[tuple[float, float, float], ...]

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        k = np.searchsorted(self.locations, u, side="left")
        out = u + self.offsets[k]
        return out[()] if out.ndim == 0 else out

    def limits(self, u: float) -> tuple[float, float]:
        """``(alpha(u-), alpha(u+))``."""
        lo = np.searchsorted(self.locations, u, side="left")
        hi = np.searchsorted(self.locations, u, side="right")
        return u + self.offsets[lo], u + self.offsets[hi]


def _check_weights(f: JumpFlux, w: WeightAssignment | None) -> WeightAssignment:
    if w is None:
        return WeightAssignment.default(len(f.jumps))
    if len(w.weights) != len(f.jumps):
        raise ValueError(
            f"flux has {len(f.jumps)} jumps but {len(w.weights)} weights were given"
        )
    return w


def build_alpha(f: JumpFlux, w: WeightAssignment | None = None) -> Alpha:
    w = _check_weights(f, w)
    locs = f.locations
    off = w.offsets()
    nodes = tuple(
        (float(u), float(u + off[k]), float(u + off[k + 1])) for k, u in enumerate(locs)
    )
    return Alpha(locs, off, nodes)


@dataclass(frozen=True)
class Plateau:
    location: float
    a: float
    c: float
    b: float

    @property
    def width(self) -> float:
        return self.b - self.a


@dataclass(frozen=True, eq=False)
class Parametrization:
    """PL pair ``(b, g)`` sharing one breakpoint grid in ``v``."""

    b: PLFunction
    g: PLFunction
    plateaus: tuple[Plateau, ...]
    weights: WeightAssignment | None = None

    def __post_init__(self):
        if not np.array_equal(self.b.x, self.g.x):
            raise ValueError("b and g must share their breakpoints")
        if not self.b.is_scalar:
            raise ValueError("b must be scalar valued")
        if np.any(np.diff(self.b.values) < 0):
            raise ValueError("b must be non-decreasing")

    @property
    def v(self) -> np.ndarray:
        return self.b.x

    @property
    def v_range(self) -> tuple[float, float]:
        return self.b.domain

    @property
    def dim(self) -> int:
        return self.g.dim

    def curve(self) -> np.ndarray:
        """Vertices ``(b(v_j), g(v_j))`` of the graph, shape ``(K, 1 + n)``."""
        g = self.g.values if self.g.values.ndim == 2 else self.g.values[:, None]
        return np.column_stack([self.b.values, g])

    @classmethod
    def from_tables(cls, v, b, g) -> Parametrization:
        """Wrap explicit tables; plateaus are the maximal runs where ``b`` is constant."""
        v = np.asarray(v, dtype=float)
        b = np.asarray(b, dtype=float)
        g = np.asarray(g, dtype=float)
        if g.ndim == 1:
            g = g[:, None]
        plateaus = []
        i = 0
        while i < v.size - 1:
            j = i
            while j < v.size - 1 and b[j + 1] == b[i]:
                j += 1
            if j > i:
                mid = 0.5 * (v[i] + v[j])
                plateaus.append(Plateau(float(b[i]), float(v[i]), float(mid), float(v[j])))
                i = j
            else:
                i += 1
        return cls(PLFunction(v, b), PLFunction(v, g), tuple(plateaus))


def build_parametrization(
    f: JumpFlux, w: WeightAssignment | None = None, theta: float = 0.5
) -> Parametrization:
    """Parametrize the completed graph of ``f``.

    ``theta`` places the node carrying ``phi(u_k)`` at ``a_k + theta * h_k``.
    """
    if not 0.0 < theta < 1.0:
        raise ValueError("theta must lie strictly between 0 and 1")
    w = _check_weights(f, w)
    off = w.offsets()
    vs, bs, gs = [], [], []
    plateaus = []
    for i, piece in enumerate(f.pieces):
        start = 0 if i == 0 else 1  # first node coincides with the previous plateau's right end
        if i > 0:
            jump = f.jumps[i - 1]
            a = jump.location + off[i - 1]
            bk = jump.location + off[i]
            c = a + theta * (bk - a)
            vs.extend([c, bk])
            bs.extend([jump.location, jump.location])
            gs.extend([jump.point, jump.right])
            plateaus.append(Plateau(jump.location, float(a), float(c), float(bk)))
        vs.extend(piece.x[start:] + off[i])
        bs.extend(piece.x[start:])
        gs.extend(piece.values[start:])
    v = np.asarray(vs, dtype=float)
    return Parametrization(
        PLFunction(v, np.asarray(bs, dtype=float)),
        PLFunction(v, np.asarray(gs, dtype=float)),
        tuple(plateaus),
        w,
    )


def _point_segment_distance(p: np.ndarray, s0: np.ndarray, s1: np.ndarray) -> np.ndarray:
    """Distances from points ``p`` (m, d) to segments ``s0 -> s1`` (k, d); returns (m,)."""
    d = s1 - s0
    dd = np.einsum("kd,kd->k", d, d)
    rel = p[:, None, :] - s0[None, :, :]
    with np.errstate(invalid="ignore", divide="ignore"):
        tpar = np.einsum("mkd,kd->mk", rel, d) / dd
    tpar = np.where(dd > 0, np.clip(tpar, 0.0, 1.0), 0.0)
    proj = s0[None, :, :] + tpar[..., None] * d[None, :, :]
    dist = np.linalg.norm(p[:, None, :] - proj, axis=-1)
    return dist.min(axis=1)


def _directed_hausdorff(a: np.ndarray, bcurve: np.ndarray, per_segment: int) -> float:
    ts = np.linspace(0.0, 1.0, per_segment + 1)
    pts = (a[:-1, None, :] * (1 - ts)[None, :, None] + a[1:, None, :] * ts[None, :, None])
    pts = np.concatenate([pts.reshape(-1, a.shape[1]), a])
    if bcurve.shape[0] == 1:
        return float(np.linalg.norm(pts - bcurve[0], axis=1).max())
    worst = 0.0
    for chunk in np.array_split(pts, max(1, pts.shape[0] // 2048)):
        worst = max(worst, float(_point_segment_distance(chunk, bcurve[:-1], bcurve[1:]).max()))
    return worst


def hausdorff_distance(p: Parametrization, q: Parametrization, per_segment: int = 16) -> float:
    """Symmetric Hausdorff distance between the two graphs in ``R^(1+n)``.

    Each segment is sampled at ``per_segment`` sub-intervals and every sample
    is measured against the other polyline exactly.
    """
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {q.dim}")
    a, b = p.curve(), q.curve()
    return max(_directed_hausdorff(a, b, per_segment), _directed_hausdorff(b, a, per_segment))


def graphs_equivalent(p: Parametrization, q: Parametrization, tol: float) -> bool:
    return hausdorff_distance(p, q) <= tol


def plateau_mask(p: Parametrization, v: Sequence[float]) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    mask = np.zeros(v.shape, dtype=bool)
    for pl in p.plateaus:
        mask |= (v >= pl.a) & (v <= pl.b)
    return mask

"""Jump-continuous flux functions with a finite discontinuity set."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .pl import PLFunction

SIDES = ("left", "point", "right")


def _vec(value, n: int | None = None) -> np.ndarray:
    a = np.atleast_1d(np.asarray(value, dtype=float)).copy()
    if a.ndim != 1:
        raise ValueError("flux values must be scalars or 1-D vectors")
    if n is not None and a.size != n:
        raise ValueError(f"flux value has dimension {a.size}, expected {n}")
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class JumpPoint:
    """A discontinuity at ``location`` with its one-sided and point values."""

    location: float
    left: np.ndarray
    point: np.ndarray
    right: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "location", float(self.location))
        left = _vec(self.left)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "point", _vec(self.point, left.size))
        object.__setattr__(self, "right", _vec(self.right, left.size))

    @property
    def is_degenerate(self) -> bool:
        return bool(
            np.array_equal(self.left, self.point)
            and np.array_equal(self.point, self.right)
        )

    def side(self, which: str) -> np.ndarray:
        return getattr(self, which)


class FluxError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class JumpFlux:
    """Flux ``phi: [u_min, u_max] -> R^n`` continuous off a finite set of jumps.

    ``pieces[i]`` samples the continuous part on the closed interval between
    consecutive entries of ``(u_min, *jump locations, u_max)``; its end values
    are the one-sided limits at the adjacent jumps. Build through
    :func:`make_jump_flux`.
    """

    dimension: int
    state_range: tuple[float, float]
    jumps: tuple[JumpPoint, ...]
    pieces: tuple[PLFunction, ...]
    dropped: tuple[float, ...] = field(default=())

    @property
    def locations(self) -> np.ndarray:
        return np.array([j.location for j in self.jumps], dtype=float)

    def piece_index(self, u: float) -> int:
        """Index of the piece whose open interval (or end point) contains ``u``."""
        return int(np.searchsorted(self.locations, u, side="right"))

    def __call__(self, u):
        """Point values ``phi(u)``; vectorised over ``u``, returns ``(..., n)``."""
        u = np.asarray(u, dtype=float)
        flat = u.ravel()
        out = np.empty((flat.size, self.dimension))
        for i, s in enumerate(flat):
            out[i] = eval_sided(self, float(s), "point")
        return out.reshape(u.shape + (self.dimension,))

    def mirrored(self) -> JumpFlux:
        """The flux ``u -> -phi(-u)`` on the reflected state range."""
        lo, hi = self.state_range
        jumps = tuple(
            JumpPoint(-j.location, -j.right, -j.point, -j.left)
            for j in reversed(self.jumps)
        )
        pieces = tuple(p.negated_mirror() for p in reversed(self.pieces))
        return JumpFlux(self.dimension, (-hi, -lo), jumps, pieces, self.dropped)


def make_jump_flux(
    dimension: int,
    state_range: Sequence[float],
    jumps: Sequence[JumpPoint],
    pieces: Sequence[PLFunction],
) -> JumpFlux:
    """Validate and assemble a :class:`JumpFlux`.

    Degenerate jumps (all three values equal) are removed with a warning and
    the neighbouring pieces merged.
    """
    if int(dimension) != dimension or dimension < 1:
        raise FluxError("dimension must be a positive integer")
    dimension = int(dimension)
    lo, hi = (float(s) for s in state_range)
    if not lo < hi:
        raise FluxError("state_range must satisfy u_min < u_max")
    jumps = list(jumps)
    pieces = [_as_vector_piece(p, dimension) for p in pieces]
    if len(pieces) != len(jumps) + 1:
        raise FluxError(
            f"{len(jumps)} jumps need {len(jumps) + 1} pieces, got {len(pieces)}"
        )
    locs = [j.location for j in jumps]
    for a, b in zip(locs, locs[1:]):
        if not a < b:
            raise FluxError(f"jump locations must be strictly increasing ({a}, {b})")
    for j in jumps:
        if j.left.size != dimension:
            raise FluxError(
                f"jump at {j.location} has dimension {j.left.size}, expected {dimension}"
            )
        if not lo < j.location < hi:
            raise FluxError(f"jump at {j.location} is not inside the state range")

    ends = [lo, *locs, hi]
    for i, p in enumerate(pieces):
        a, b = ends[i], ends[i + 1]
        if p.x[0] != a or p.x[-1] != b:
            raise FluxError(
                f"piece {i} spans [{p.x[0]}, {p.x[-1]}], expected [{a}, {b}]"
            )
    for i, j in enumerate(jumps):
        if not np.array_equal(pieces[i].values[-1], j.left):
            raise FluxError(f"piece {i} ends at {pieces[i].values[-1]}, jump left is {j.left}")
        if not np.array_equal(pieces[i + 1].values[0], j.right):
            raise FluxError(
                f"piece {i + 1} starts at {pieces[i + 1].values[0]}, jump right is {j.right}"
            )

    dropped = []
    kept_jumps, kept_pieces = [], [pieces[0]]
    for j, nxt in zip(jumps, pieces[1:]):
        if j.is_degenerate:
            dropped.append(j.location)
            prev = kept_pieces.pop()
            merged = PLFunction(
                np.concatenate([prev.x, nxt.x[1:]]),
                np.concatenate([prev.values, nxt.values[1:]]),
            )
            kept_pieces.append(merged)
        else:
            kept_jumps.append(j)
            kept_pieces.append(nxt)
    if dropped:
        warnings.warn(f"dropped degenerate jumps at {dropped}", stacklevel=2)
    return JumpFlux(dimension, (lo, hi), tuple(kept_jumps), tuple(kept_pieces), tuple(dropped))


def _as_vector_piece(p: PLFunction, n: int) -> PLFunction:
    vals = p.values if p.values.ndim == 2 else p.values[:, None]
    if vals.shape[1] != n:
        raise FluxError(f"piece has dimension {vals.shape[1]}, expected {n}")
    return PLFunction(p.x, vals)


def eval_sided(f: JumpFlux, u: float, side: str = "point") -> np.ndarray:
    """``phi(u-)``, ``phi(u)`` or ``phi(u+)`` as a vector of length ``n``."""
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}, got {side!r}")
    lo, hi = f.state_range
    if not lo <= u <= hi:
        raise ValueError(f"u={u!r} outside the state range [{lo}, {hi}]")
    locs = f.locations
    k = int(np.searchsorted(locs, u))
    if k < locs.size and locs[k] == u:
        return f.jumps[k].side(side).copy()
    return np.asarray(f.pieces[k](u), dtype=float).reshape(f.dimension)


def discontinuity_set(f: JumpFlux) -> np.ndarray:
    return f.locations


# ---- closed-form fluxes used throughout the examples ----------------------


def _const_piece(a: float, b: float, value: float) -> PLFunction:
    return PLFunction([a, b], [value, value])


def heaviside_flux(state_range=(-1.0, 2.0), point: float = 0.5) -> JumpFlux:
    """``H(u) = sign^+ u`` with ``H(0) = point``."""
    lo, hi = state_range
    jump = JumpPoint(0.0, 0.0, point, 1.0)
    return make_jump_flux(1, state_range, [jump], [_const_piece(lo, 0.0, 0.0), _const_piece(0.0, hi, 1.0)])


def indicator_flux(state_range=(-1.0, 2.0), location: float = 0.0) -> JumpFlux:
    """Indicator of the singleton ``{location}``."""
    lo, hi = state_range
    jump = JumpPoint(location, 0.0, 1.0, 0.0)
    pieces = [_const_piece(lo, location, 0.0), _const_piece(location, hi, 0.0)]
    return make_jump_flux(1, state_range, [jump], pieces)


def continuous_flux(func, state_range, samples: int = 401) -> JumpFlux:
    """Sample a continuous scalar closed form as a flux with empty ``D``."""
    lo, hi = state_range
    x = np.linspace(lo, hi, samples)
    y = np.array([func(s) for s in x], dtype=float)
    return make_jump_flux(1, state_range, [], [PLFunction(x, y)])


def burgers_flux(state_range=(-2.0, 2.0), samples: int = 401) -> JumpFlux:
    return continuous_flux(lambda s: 0.5 * s * s, state_range, samples)


def linear_flux(speed: float = 1.0, state_range=(-2.0, 2.0)) -> JumpFlux:
    lo, hi = state_range
    return make_jump_flux(1, state_range, [], [PLFunction([lo, hi], [speed * lo, speed * hi])])


def sampled_flux(func, state_range, jumps: Sequence[JumpPoint], samples_per_piece: int = 65) -> JumpFlux:
    """Jump flux whose continuous pieces sample ``func`` between the jumps.

    The one-sided values stored on each :class:`JumpPoint` override the
    closed form at the piece ends so that the limits agree exactly.
    """
    lo, hi = state_range
    ends = [lo, *(j.location for j in jumps), hi]
    pieces = []
    for i in range(len(ends) - 1):
        x = np.linspace(ends[i], ends[i + 1], samples_per_piece)
        y = np.array([np.atleast_1d(func(s)) for s in x], dtype=float)
        if i > 0:
            y[0] = jumps[i - 1].right
        if i < len(jumps):
            y[-1] = jumps[i].left
        pieces.append(PLFunction(x, y))
    n = pieces[0].values.shape[1] if pieces[0].values.ndim == 2 else 1
    return make_jump_flux(n, state_range, jumps, pieces)

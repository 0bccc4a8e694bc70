"""Piecewise-linear functions on a strictly increasing breakpoint grid."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PLFunction:
    """Piecewise-linear map ``R -> R^n`` given by breakpoints and node values.

    ``values`` is either 1-D (scalar function) or 2-D with shape ``(K, n)``.
    Evaluation outside ``[x[0], x[-1]]`` raises unless ``extrapolate`` is set,
    in which case the end values are continued as constants.
    """

    x: np.ndarray
    values: np.ndarray
    extrapolate: bool = False

    def __post_init__(self):
        x = _frozen(self.x)
        v = _frozen(self.values)
        if x.ndim != 1 or x.size < 1:
            raise ValueError("breakpoints must be a non-empty 1-D sequence")
        if v.ndim not in (1, 2) or v.shape[0] != x.size:
            raise ValueError(
                f"values must have leading length {x.size}, got shape {v.shape}"
            )
        if not np.all(np.isfinite(x)) or not np.all(np.isfinite(v)):
            raise ValueError("breakpoints and values must be finite")
        if np.any(np.diff(x) <= 0):
            raise ValueError("breakpoints must be strictly increasing")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "values", v)

    @property
    def dim(self) -> int:
        return 1 if self.values.ndim == 1 else self.values.shape[1]

    @property
    def is_scalar(self) -> bool:
        return self.values.ndim == 1

    @property
    def domain(self) -> tuple[float, float]:
        return float(self.x[0]), float(self.x[-1])

    def _columns(self) -> np.ndarray:
        return self.values if self.values.ndim == 2 else self.values[:, None]

    def __call__(self, s):
        s_arr = np.asarray(s, dtype=float)
        lo, hi = self.domain
        if not self.extrapolate and (np.any(s_arr < lo) or np.any(s_arr > hi)):
            raise ValueError(f"evaluation point outside [{lo!r}, {hi!r}]")
        cols = self._columns()
        out = np.stack(
            [np.interp(s_arr, self.x, cols[:, i]) for i in range(cols.shape[1])],
            axis=-1,
        )
        if self.is_scalar:
            out = out[..., 0]
        return out[()] if out.ndim == 0 else out

    def slopes(self) -> np.ndarray:
        """Per-segment slopes, shape ``(K-1,)`` or ``(K-1, n)``."""
        dx = np.diff(self.x)
        if self.is_scalar:
            return np.diff(self.values) / dx
        return np.diff(self.values, axis=0) / dx[:, None]

    def lipschitz(self) -> float:
        if self.x.size < 2:
            return 0.0
        return float(np.max(np.abs(self.slopes())))

    def is_nondecreasing(self) -> bool:
        return bool(self.is_scalar and np.all(np.diff(self.values) >= 0))

    def extreme_on(self, a: float, b: float) -> tuple[float, float]:
        """Exact ``(min, max)`` of a scalar PL function over ``[a, b]``."""
        if not self.is_scalar:
            raise ValueError("extreme_on needs a scalar function")
        if a > b:
            a, b = b, a
        inner = self.values[(self.x > a) & (self.x < b)]
        ends = np.asarray(self([a, b]))
        cand = np.concatenate([ends, inner])
        return float(cand.min()), float(cand.max())

    def restrict(self, a: float, b: float) -> PLFunction:
        """Copy restricted to ``[a, b]`` with the end points as breakpoints."""
        inner = (self.x > a) & (self.x < b)
        x = np.concatenate([[a], self.x[inner], [b]])
        vals = self(x)
        return PLFunction(x, vals, self.extrapolate)

    def negated_mirror(self) -> PLFunction:
        """The function ``s -> -f(-s)``."""
        return PLFunction(-self.x[::-1], -self.values[::-1], self.extrapolate)

    def same_as(self, other: PLFunction) -> bool:
        return (
            self.x.shape == other.x.shape
            and self.values.shape == other.values.shape
            and bool(np.array_equal(self.x, other.x))
            and bool(np.array_equal(self.values, other.values))
        )


def sample(func, a: float, b: float, num: int = 201) -> PLFunction:
    """Sample a closed-form scalar or vector function on ``num`` equispaced nodes."""
    if num < 2:
        raise ValueError("need at least two sample nodes")
    x = np.linspace(a, b, num)
    vals = np.asarray([func(s) for s in x], dtype=float)
    return PLFunction(x, vals)

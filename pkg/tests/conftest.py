import numpy as np
import pytest
from hypothesis import settings

from jumpflux import JumpPoint, PLFunction, WeightAssignment, make_jump_flux

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def dyadic_jump_flux(rng, n_jumps, dimension=1, lo=-4.0, hi=4.0):
    """Random jump flux whose locations, breakpoints and values are dyadic.

    Sums and differences of such numbers are exact in binary floating point,
    so structural identities can be checked with zero tolerance.
    """
    grid = np.arange(lo + 0.25, hi, 0.25)
    locs = np.sort(rng.choice(grid, size=n_jumps, replace=False))
    ends = [lo, *locs, hi]
    pieces = []
    for a, b in zip(ends[:-1], ends[1:]):
        inner = np.arange(a, b, 1 / 32)[1:]
        k = rng.integers(0, min(4, inner.size) + 1)
        x = np.concatenate([[a], np.sort(rng.choice(inner, size=k, replace=False)), [b]])
        vals = rng.integers(-16, 17, size=(x.size, dimension)) / 8.0
        pieces.append(PLFunction(x, vals if dimension > 1 else vals[:, 0]))
    jumps = []
    for i, u in enumerate(locs):
        left = np.atleast_1d(pieces[i].values[-1])
        right = np.atleast_1d(pieces[i + 1].values[0])
        point = rng.integers(-16, 17, size=dimension) / 8.0
        if np.array_equal(left, right) and np.array_equal(point, left):
            point = point + 0.125
        jumps.append(JumpPoint(u, left, point, right))
    flux = make_jump_flux(dimension, (lo, hi), jumps, pieces)
    weights = WeightAssignment(tuple(rng.integers(1, 17, size=n_jumps) / 8.0))
    return flux, weights


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_periodic_scenario(rng, cells=64):
    """Regularized random jump flux on [-1, 1] and ordered periodic data ``u0 <= w0``.

    Flux values stay in [-1/2, 1/2] and r <= 2, which keeps the Lipschitz
    constant (and hence 1/dt) moderate: the cell entropy residual is only
    resolvable down to about eps * |u| / dt.
    """
    from jumpflux import build_parametrization, regularize

    n_jumps = int(rng.integers(0, 4))
    locs = np.sort(rng.choice(np.arange(-0.75, 1.0, 0.25), size=n_jumps, replace=False))
    ends = [-1.0, *locs, 1.0]
    pieces, jumps = [], []
    for a, b in zip(ends[:-1], ends[1:]):
        x = np.arange(a, b + 1e-12, 0.25)
        pieces.append(PLFunction(x, rng.integers(-8, 9, size=x.size) / 16.0))
    for i, u in enumerate(locs):
        left, right = pieces[i].values[-1], pieces[i + 1].values[0]
        point = rng.integers(-8, 9) / 16.0
        if left == right == point:
            point += 0.0625
        jumps.append(JumpPoint(u, left, point, right))
    f = make_jump_flux(1, (-1.0, 1.0), jumps, pieces)
    r = float(rng.choice([1.0, 2.0]))
    rf = regularize(build_parametrization(f), r, cover=f.state_range)
    x = (np.arange(cells) + 0.5) / cells
    if rng.random() < 0.5:
        u0 = sum(rng.uniform(-0.3, 0.3) * np.sin(2 * np.pi * (k + 1) * x + rng.uniform(0, 6)) for k in range(3))
    else:
        u0 = rng.uniform(-0.9, 0.9, size=cells)
    u0 = np.clip(u0, -0.9, 0.9)
    w0 = np.minimum(u0 + rng.uniform(0, 0.3, size=cells), 0.95)
    return rf, u0, w0


ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])

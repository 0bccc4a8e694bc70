import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import dyadic_jump_flux
from jumpflux import (
    WeightAssignment,
    build_parametrization,
    burgers_flux,
    heaviside_flux,
    indicator_flux,
    invert_br,
    linear_flux,
    lipschitz_bound,
    regularize,
)


@pytest.fixture
def heaviside_par():
    return build_parametrization(heaviside_flux(point=0.5), WeightAssignment((1.0,)), 0.5)


def test_heaviside_r1_by_hand(heaviside_par):
    rf = regularize(heaviside_par, 1)
    v = heaviside_par.v
    expected = np.where(v < 0, 2 * v, np.where(v <= 1, v, 2 * v - 1))
    np.testing.assert_array_equal(rf.b_r.values, expected)
    assert invert_br(rf, 0.5) == 0.5
    assert lipschitz_bound(rf) == 1.0


def test_heaviside_r10_plateau_slope(heaviside_par):
    assert lipschitz_bound(regularize(heaviside_par, 10)) == pytest.approx(10.0)


def test_linear_flux_lipschitz():
    rf = regularize(build_parametrization(linear_flux(2.0, (-1, 1))), 1e6)
    assert lipschitz_bound(rf) == pytest.approx(2.0, rel=1e-5)


def test_distance_to_b_is_max_abs_v_over_r(heaviside_par):
    for r in (1, 7, 100):
        rf = regularize(heaviside_par, r)
        gap = np.max(np.abs(rf.b_r.values - heaviside_par.b.values))
        assert gap == pytest.approx(np.max(np.abs(heaviside_par.v)) / r, rel=1e-15)


def test_breakpoint_inversion_is_exact(heaviside_par):
    rf = regularize(heaviside_par, 3)
    np.testing.assert_array_equal(invert_br(rf, rf.b_r.values), heaviside_par.v)


def test_inversion_outside_range_rejected(heaviside_par):
    rf = regularize(heaviside_par, 3)
    with pytest.raises(ValueError):
        invert_br(rf, rf.u_range[0] - 1e-9)


def test_r_below_one_rejected(heaviside_par):
    with pytest.raises(ValueError):
        regularize(heaviside_par, 0.5)


def test_burgers_regularization_converges():
    par = build_parametrization(burgers_flux((-2, 2), 401))
    errs = []
    for r in (10, 100, 1000):
        rf = regularize(par, r, cover=(-2, 2))
        u = np.linspace(-1.9, 1.9, 301)
        errs.append(np.max(np.abs(rf.phi_r(u) - 0.5 * u * u)))
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 5e-3


def test_cover_extends_with_end_values():
    # v starts at 1 here, so b_r(v_min) = 1 + 1/r lies above the state range
    f = indicator_flux((1.0, 3.0), 2.0)
    par = build_parametrization(f)
    rf = regularize(par, 4, cover=f.state_range)
    assert rf.u_range[0] == 1.25
    assert rf.phi_r.domain[0] == 1.0
    assert rf.phi_r(1.0) == rf.phi_r(1.25) == 0.0


@given(st.integers(0, 2**32 - 1), st.integers(1, 4), st.sampled_from([1, 2, 8, 64, 1000]))
def test_invariants(seed, n_jumps, r):
    rng = np.random.default_rng(seed)
    f, w = dyadic_jump_flux(rng, n_jumps)
    par = build_parametrization(f, w)
    rf = regularize(par, r)
    s = rf.b_r.slopes()
    # slopes are ratios of rounded differences, hence the relative slack
    assert np.all(s >= 1 / r * (1 - 1e-9)) and np.all(s <= (1 + 1 / r) * (1 + 1e-9))
    assert np.all(np.diff(rf.phi_r.x) > 0)
    # phi_r(b_r(v_j)) = g(v_j)
    np.testing.assert_array_equal(rf.phi_r(rf.b_r.values), par.g.values[:, 0])
    assert rf.lipschitz <= r * par.g.lipschitz() * (1 + 1e-12)

    u1, u2 = np.sort(rng.uniform(*rf.u_range, size=2))
    if u1 < u2:
        assert invert_br(rf, u1) < invert_br(rf, u2)
    u = rng.uniform(*rf.u_range, size=50)
    np.testing.assert_allclose(rf.b_r(invert_br(rf, u)), u, rtol=1e-13, atol=1e-13)


@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
def test_lipschitz_grows_with_r(seed, n_jumps):
    f, w = dyadic_jump_flux(np.random.default_rng(seed), n_jumps)
    par = build_parametrization(f, w)
    bounds = [lipschitz_bound(regularize(par, r)) for r in (1, 2, 4, 16, 128)]
    assert all(a <= b * (1 + 1e-12) for a, b in zip(bounds, bounds[1:]))

import warnings

import numpy as np
import pytest

from jumpflux import (
    FluxError,
    JumpPoint,
    PLFunction,
    burgers_flux,
    discontinuity_set,
    eval_sided,
    heaviside_flux,
    indicator_flux,
    make_jump_flux,
)


def const(a, b, c):
    return PLFunction([a, b], [c, c])


def test_heaviside_with_unit_point_value():
    f = make_jump_flux(1, (-1, 2), [JumpPoint(0, 0, 1, 1)], [const(-1, 0, 0), const(0, 2, 1)])
    assert eval_sided(f, 0.0, "left")[0] == 0.0
    assert eval_sided(f, 0.0, "point")[0] == 1.0
    assert eval_sided(f, 0.0, "right")[0] == 1.0
    assert list(discontinuity_set(f)) == [0.0]


@pytest.mark.parametrize("side", ["left", "point", "right"])
def test_sides_agree_off_the_jump_set(side):
    f = heaviside_flux()
    assert eval_sided(f, 0.5, side)[0] == 1.0


def test_indicator_sides():
    f = indicator_flux()
    assert [eval_sided(f, 0.0, s)[0] for s in ("left", "point", "right")] == [0.0, 1.0, 0.0]


def test_burgers_has_empty_jump_set():
    f = burgers_flux((-2, 2), 401)
    assert discontinuity_set(f).size == 0
    assert eval_sided(f, 1.0)[0] == pytest.approx(0.5)


def test_two_jumps_at_the_same_location_rejected():
    jumps = [JumpPoint(0, 0, 1, 1), JumpPoint(0, 1, 2, 2)]
    pieces = [const(-1, 0, 0), const(0, 0.5, 1), const(0, 2, 2)]
    with pytest.raises(FluxError):
        make_jump_flux(1, (-1, 2), jumps, pieces)


def test_piece_endpoint_must_match_one_sided_value():
    with pytest.raises(FluxError):
        make_jump_flux(1, (-1, 2), [JumpPoint(0, 0.1, 1, 1)], [const(-1, 0, 0), const(0, 2, 1)])


def test_dimension_mismatch_rejected():
    with pytest.raises(FluxError):
        make_jump_flux(2, (-1, 2), [JumpPoint(0, 0, 1, 1)], [const(-1, 0, 0), const(0, 2, 1)])


def test_jump_outside_range_rejected():
    with pytest.raises(FluxError):
        make_jump_flux(1, (-1, 2), [JumpPoint(2, 0, 1, 1)], [const(-1, 2, 0), const(2, 3, 1)])


def test_degenerate_jump_dropped_with_warning():
    jumps = [JumpPoint(-1, 0, 0, 0), JumpPoint(1, 0, 1, 1)]
    pieces = [const(-2, -1, 0), const(-1, 1, 0), const(1, 2, 1)]
    with warnings.catch_warnings(record=True) as rec:
        warnings.simplefilter("always")
        f = make_jump_flux(1, (-2, 2), jumps, pieces)
    assert rec and "degenerate" in str(rec[0].message)
    assert list(discontinuity_set(f)) == [1.0]
    assert f.dropped == (-1.0,)
    assert eval_sided(f, -1.0)[0] == 0.0


def test_jumps_echoed_in_order():
    jumps = [JumpPoint(-1, 0, 1, 1), JumpPoint(2, 1, 0, 2)]
    pieces = [const(-3, -1, 0), const(-1, 2, 1), const(2, 3, 2)]
    f = make_jump_flux(1, (-3, 3), jumps, pieces)
    assert list(discontinuity_set(f)) == [-1.0, 2.0]


def test_evaluation_outside_range_rejected():
    with pytest.raises(ValueError):
        eval_sided(heaviside_flux((-1, 2)), 2.5)


def test_evaluation_is_deterministic():
    f = burgers_flux()
    u = np.linspace(-2, 2, 37)
    assert np.array_equal(f(u), f(u))


def test_mirrored_heaviside():
    m = heaviside_flux(point=1.0).mirrored()
    j = m.jumps[0]
    assert (j.location, j.left[0], j.point[0], j.right[0]) == (0.0, -1.0, -1.0, 0.0)
    assert eval_sided(m, -0.5)[0] == -1.0 and eval_sided(m, 0.5)[0] == 0.0


def test_mirrored_burgers_is_negated():
    m = burgers_flux().mirrored()
    u = np.linspace(-2, 2, 9)
    np.testing.assert_allclose(m(u)[:, 0], -0.5 * u * u, atol=1e-15)


def test_mirror_twice_restores_the_flux(rng):
    from conftest import dyadic_jump_flux

    f, _ = dyadic_jump_flux(rng, 3)
    g = f.mirrored().mirrored()
    assert g.state_range == f.state_range
    for a, b in zip(f.jumps, g.jumps):
        assert a.location == b.location
        assert all(np.array_equal(a.side(s), b.side(s)) for s in ("left", "point", "right"))
    assert all(p.same_as(q) for p, q in zip(f.pieces, g.pieces))

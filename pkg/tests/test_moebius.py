from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from hexapod_liaison import moebius as mb

coord = st.fractions(min_value=-6, max_value=6, max_denominator=5)
point = st.tuples(coord, coord, coord)
six_points = st.lists(point, min_size=6, max_size=6, unique=True)


def _proj_close(x, y, tol):
    k = max(range(5), key=lambda i: abs(x[i]))
    if abs(y[k]) == 0:
        return False
    return max(abs(a / x[k] - b / y[k]) for a, b in zip(x, y)) < tol


@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(six_points)
def test_segre_containment(pts):
    tup = mb.SixTuple(pts)
    assert mb.segre_check(mb.raw_components(tup))


@settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(six_points, st.floats(-3, 3), st.floats(-3, 3))
def test_sigma_equivariance(pts, re, im):
    tup = mb.SixTuple(pts)
    phi = mb.raw_components(tup)
    if any(p.is_zero() for p in phi):
        return
    with mpmath.workprec(128):
        t = mpmath.mpc(re, im)
        if abs(t) < 0.05:
            return
        a = [p(t) for p in phi]
        b = [mpmath.conj(p(mb.sigma(t))) for p in phi]
        if max(abs(c) for c in a) < 1e-10:
            return
        assert _proj_close(a, b, mpmath.mpf(2) ** -90)


def test_sigma_swaps_zero_and_infinity():
    assert mb.sigma(0) == mb.INF
    assert mb.sigma(mb.INF) == 0
    t = mpmath.mpc(2, -1)
    assert abs(mb.sigma(mb.sigma(t)) - t) < 1e-12
    # no fixed points: the conic has no real points
    assert mb.sigma(mpmath.mpc(0, 1)) == mpmath.mpc(0, -1)


def test_fixture_classification(base):
    m = mb.photographic_map(base)
    assert m.tag == "birational-6"
    assert m.image_degree * m.map_degree == 6
    assert mb.quadric_pencil(m).dimension == 2


def test_t_plane_incidence(base):
    m = mb.photographic_map(base)
    # H_ij divides exactly the raw components whose triple contains ij
    raw = mb.raw_components(base, segre_order=False)
    for trip_idx, trip in enumerate(mb.COMPONENTS):
        i, j = trip[0]
        with mpmath.workprec(256):
            for t in mb.t_plane_roots(m, i, j):
                vals = [p(t) if t != mb.INF else p.reverse(m.degree)(mpmath.mpc(0)) for p in raw]
                scale = max(abs(v) for v in vals)
                assert abs(vals[trip_idx]) <= scale * mpmath.mpf(2) ** -100


def test_planar_tuple_is_two_to_one():
    tup = mb.SixTuple([(0, 0, 0), (1, 0, 0), (0, 1, 0), (2, 3, 0), (3, 1, 0), (5, 2, 0)])
    m = mb.photographic_map(tup)
    assert m.map_degree == 2
    assert m.tag.startswith("planar-2:1")


def test_degenerate_tuple_not_general():
    # four collinear points
    tup = mb.SixTuple([(0, 0, 0), (1, 0, 0), (2, 0, 0), (3, 0, 0), (0, 1, 2), (1, 3, 1)])
    rep = mb.moebius_general_test(tup)
    assert not rep.passed


def test_sixtuple_validation():
    with pytest.raises(ValueError):
        mb.SixTuple([(0, 0, 0)] * 6)
    with pytest.raises(ValueError):
        mb.SixTuple([(0, 0, 0), (1, 0, 0)])
    with pytest.raises(TypeError):
        mb.SixTuple([(0.5, 0, 0), (1, 0, 0), (2, 1, 0), (0, 1, 1), (1, 1, 1), (3, 2, 1)])


def test_h_form_antisymmetric(base):
    for i in range(1, 7):
        for j in range(1, 7):
            if i != j:
                assert mb.h_form(base, i, j) == tuple(-c for c in mb.h_form(base, j, i))


def test_rotation_invariance_of_map(base):
    # a rational rotation changes the projections by a rotation of the conic
    R = [[Fraction(3, 5), Fraction(-4, 5), 0], [Fraction(4, 5), Fraction(3, 5), 0], [0, 0, 1]]
    moved = mb.SixTuple([tuple(sum(R[a][b] * p[b] for b in range(3)) for a in range(3)) for p in base.points])
    m = mb.photographic_map(moved)
    assert m.tag == "birational-6"
    assert mb.quadric_pencil(m).dimension == 2

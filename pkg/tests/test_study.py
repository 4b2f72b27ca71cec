from __future__ import annotations

import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hexapod_liaison import study
from hexapod_liaison.exactalg import mpoly_deg_in, mpoly_total_degree, to_fmpq
from hexapod_liaison.moebius import SixTuple

coord = st.fractions(min_value=-4, max_value=4, max_denominator=5)
vec3 = st.tuples(coord, coord, coord)


def _unit_quaternion(a, b, c):
    """Inverse stereographic projection: a rational point of S^3."""
    s = a * a + b * b + c * c
    return [(1 - s) / (1 + s), 2 * a / (1 + s), 2 * b / (1 + s), 2 * c / (1 + s)]


@settings(max_examples=40, deadline=None)
@given(vec3, vec3, vec3, vec3, coord)
def test_lambda_contract(q, f, p, P, d2):
    e = _unit_quaternion(*q)
    f = [Fraction(0)] + list(f)
    psi = sum(a * b for a, b in zip(e, f))
    f = [b - psi * a for a, b in zip(e, f)]
    lam = study.spherical_quadric(P, p, d2)
    val = lam(*[to_fmpq(x) for x in e + f])
    moved = study.Pose(tuple(e), tuple(f)).apply(p)
    want = sum((moved[c] - P[c]) ** 2 for c in range(3)) - d2
    assert Fraction(int(val.p), int(val.q)) == want


def _random_hexapod(rng):
    def pt():
        return tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(3))

    while True:
        try:
            return SixTuple([pt() for _ in range(6)]), SixTuple([pt() for _ in range(6)]), \
                [Fraction(rng.randint(1, 50)) for _ in range(6)]
        except ValueError:
            continue


@pytest.mark.parametrize("seed", range(5))
def test_alternating_sum_random(seed):
    base, plat, legs = _random_hexapod(random.Random(seed))
    omegas, gs = study.omega_and_g(study.build_system(base, plat, legs))
    assert study.alternating_sum(gs).is_zero()
    for k, g in gs.items():
        assert g * study.N_FORM == omegas[k]
        assert mpoly_total_degree(g) <= 4


def test_generic_random_hexapod_is_rigid():
    base, plat, legs = _random_hexapod(random.Random(11))
    curve = study.motion_curve(base, plat, legs)
    assert curve.L is None
    assert not curve.movable
    with pytest.raises(study.StudyError):
        study.sample_motion(curve, 5)


def test_special_curve_structure(special_curve):
    d = special_curve.degrees()
    assert set(d["G"].values()) == {4}
    assert d["S"] == 3 and d["S_e0"] == 1
    assert all(v == 8 for v in d["E"].values())
    assert all(v <= 6 for v in d["E_e0"].values())
    assert d["J"] == 10
    assert special_curve.vertex == (1, 0, 0, 0)


def test_j_divides_every_f(special_curve, generic_curve):
    for curve in (special_curve, generic_curve):
        for F in curve.F.values():
            _, r = divmod(F, curve.J)
            assert r.is_zero()


def test_f_degree_generic(generic_curve):
    assert all(v == 22 for v in generic_curve.degrees()["F"].values())
    assert generic_curve.j_degree == 12


def test_f_degree_special(special_curve):
    # S is linear in e0 here, so Res_e0(S, E) has degree 3*5 + 8*1 - 5 = 18
    assert all(v == 18 for v in special_curve.degrees()["F"].values())


@pytest.mark.xfail(strict=True, reason="F has degree 18 when S is linear in e0; 22 is the generic-leg value")
def test_f_degree_22_literal_on_special_legs(special_curve):
    assert all(v == 22 for v in special_curve.degrees()["F"].values())


def test_other_index_pairs_give_same_j(base, platform, special_legs, special_curve):
    curve = study.motion_curve(base, platform, special_legs, pairs=((1, 2), (2, 3), (1, 3)))
    q, r = divmod(curve.J, special_curve.J)
    assert r.is_zero() and mpoly_total_degree(q) == 0


def test_cramer_degenerate_choice_raises(special_curve):
    with pytest.raises(study.StudyError):
        study.f_cramer(special_curve.system, 0, 1, 1, 2)


def test_sampled_poses_satisfy_all_legs(special_curve):
    s = study.sample_motion(special_curve, 12)
    assert len(s.poses) > 0
    sysm = special_curve.system
    with mpmath.workprec(256):
        for pose in s.poses:
            assert abs(sum(c * c for c in pose.e) - 1) < mpmath.mpf(10) ** -60
            assert abs(sum(a * b for a, b in zip(pose.e, pose.f))) < mpmath.mpf(10) ** -40
            assert max(abs(r) for r in pose.leg_residuals(sysm.base, sysm.platform, sysm.legs2)) < 1e-20


def test_sampling_charts_agree_on_degree(special_curve):
    for chart in ("e1", "e2"):
        s = study.sample_motion(special_curve, 6, chart=chart)
        assert s.chart == chart
        assert s.max_residual < 1e-20


def test_csv_output(special_curve, tmp_path):
    s = study.sample_motion(special_curve, 4)
    path = tmp_path / "m.csv"
    s.write_csv(path, special_curve.system.platform)
    lines = path.read_text().splitlines()
    assert lines[0].startswith("sample,e0,e1,e2,e3")
    assert len(lines) == len(s.poses) + 1
    assert len(lines[1].split(",")) == 30


def test_rotation_of_is_orthogonal():
    R = study.rotation_of([1, 2, 3, 4])
    for a in range(3):
        for b in range(3):
            assert sum(R[a][k] * R[b][k] for k in range(3)) == (a == b)


def test_projectivity_absent_for_random_pair():
    base, plat, _ = _random_hexapod(random.Random(3))
    assert study.projectivity(base, plat) is None


def test_observations_on_fixture(special_curve, generic_legs):
    rep = study.observation_checks(special_curve, generic_legs)
    assert rep.passed == {"I": True, "II": True, "III": True, "V": True}
    assert rep.difference_rank == 2

from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest

from hexapod_liaison import liaison as lia
from hexapod_liaison import moebius as mb


@pytest.fixture(scope="module")
def tang3(base, platform, bonds):
    return lia.tang3_solve(base, platform, 1, bonds=bonds)


def _proj_gap(a, b):
    k = max(range(len(a)), key=lambda i: abs(a[i]))
    return max(abs(x / a[k] - y / b[k]) for x, y in zip(a, b))


def test_hexapod_validation(base, platform):
    with pytest.raises(ValueError):
        lia.Hexapod(base, platform, 0)
    with pytest.raises(ValueError):
        lia.Hexapod(base, platform, 1, (1, 2, 3))
    h = lia.Hexapod(base, platform, "1", (1, 2, 3, 4, 5, -1))
    assert not h.realizable()


def test_bonds_come_in_conjugate_pairs(bonds):
    with mpmath.workprec(256):
        keys = [(b.u, b.s) for b in bonds]
        for u, s in keys:
            su, ss = mb.sigma(u), mb.sigma(s)

            def close(a, b):
                if a == mb.INF or b == mb.INF:
                    return a == b
                return abs(a - b) < mpmath.mpf(2) ** -100 * max(1, abs(a))

            assert any(close(su, u2) and close(ss, s2) for u2, s2 in keys)


def test_c1_independent_of_legs(bonds, base, platform, special_legs, generic_legs):
    with mpmath.workprec(256):
        for b in bonds[:4]:
            ref, _ = lia.tangent_direction(b, base, platform, 1)
            for legs in (special_legs, generic_legs):
                c1, _ = lia.tangent_direction(b, base, platform, 1, legs)
                assert _proj_gap(ref, c1) < mpmath.mpf(2) ** -150


def test_tang2_scale_invariance(base, platform):
    """Dilating base and platform together keeps gamma = 1."""
    r = lia.tang2_solve(base.scaled(Fraction(3, 2)), platform.scaled(Fraction(3, 2)))
    assert r.gammas == [Fraction(1)]


def test_tang2_unconstrained_bonds_flagged(bonds, base, platform):
    r = lia.tang2_solve(base, platform, bonds=bonds)
    assert all(rs is not None for rs in r.per_bond_roots)
    assert r.linear_in_gamma


def test_tang3_contains_fixture_legs(tang3, special_legs, generic_legs):
    assert tang3.dimension == 3
    assert tang3.contains(special_legs)
    assert tang3.contains(generic_legs)
    assert not tang3.contains([special_legs[0] + 1] + list(special_legs[1:]))
    assert tang3.verified


def test_tang3_offset_and_basis(tang3):
    offset, basis = tang3.offset_and_basis()
    assert tang3.contains(offset)
    for v in basis:
        assert tang3.contains([a + b for a, b in zip(offset, v)])
    legs = tang3.complete([5, 7, 11])
    assert tang3.contains(legs)


def test_certificate_refuses_perturbed_leg(base, platform, bonds, special_legs):
    legs = list(special_legs)
    legs[0] += Fraction(1, 10)
    cert = lia.movability_certificate(lia.Hexapod(base, platform, 1, legs), bonds=bonds)
    assert not cert.issued
    assert cert.failing_bond is not None
    assert cert.summary.startswith("refused at bond")


def test_certificate_refuses_wrong_gamma(base, platform, bonds, special_legs):
    cert = lia.movability_certificate(lia.Hexapod(base, platform, 2, special_legs), bonds=bonds)
    assert not cert.issued
    assert cert.tang2_ok[-1] is False


def test_certificate_issued_on_fixture(base, platform, bonds, special_legs):
    cert = lia.movability_certificate(lia.Hexapod(base, platform, 1, special_legs), bonds=bonds)
    assert cert.issued
    assert cert.intersection_count == 42 > cert.bound


def test_verify_rejects_wrong_partner(base):
    other = mb.SixTuple([(0, 0, 0), (1, 0, 0), (0, 2, 1), (3, 1, 2), (1, 3, 3), (2, 2, 0)])
    rep = lia.verify_residual_platform(base, other)
    assert not rep.passed
    assert not rep.pencil_contains_platform


def test_verify_rejects_non_general_base(platform):
    bad = mb.SixTuple([(0, 0, 0), (1, 0, 0), (2, 0, 0), (3, 0, 0), (0, 1, 2), (1, 3, 1)])
    with pytest.raises(lia.LiaisonError):
        lia.verify_residual_platform(bad, platform)


def test_verify_rejects_identical_platform(base):
    rep = lia.verify_residual_platform(base, base)
    assert not rep.distinct

from __future__ import annotations

from fractions import Fraction

import flint
import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hexapod_liaison.exactalg import (
    GaussRat,
    GPoly,
    det_bareiss,
    mpf_to_fraction,
    mpoly_gcd,
    poly_ring,
    rat,
    rat_kernel,
    rat_str,
    rational_reconstruct,
    roots_complex,
    sylvester_resultant,
    upoly_gcd,
)

small = st.integers(-20, 20)
fracs = st.fractions(min_value=-50, max_value=50, max_denominator=40)


def test_rat_parsing():
    assert rat("3/4") == Fraction(3, 4)
    assert rat(5) == Fraction(5)
    assert rat(flint.fmpq(-2, 7)) == Fraction(-2, 7)
    with pytest.raises(TypeError):
        rat(0.5)
    with pytest.raises(ValueError):
        rat("1/x")
    assert rat_str(Fraction(-6, 4)) == "-3/2"


@given(fracs)
def test_mpf_to_fraction_keeps_sign(q):
    with mpmath.workprec(300):
        x = mpmath.mpf(q.numerator) / q.denominator
        back = mpf_to_fraction(x)
    assert abs(back - q) < Fraction(1, 2**250)
    assert (back < 0) == (q < 0)


@settings(max_examples=40, deadline=None)
@given(st.lists(small, min_size=2, max_size=5), st.lists(small, min_size=2, max_size=5),
       st.lists(small, min_size=2, max_size=4))
def test_upoly_gcd_contains_common_factor(a, b, c):
    pa, pb, pc = flint.fmpq_poly(a), flint.fmpq_poly(b), flint.fmpq_poly(c)
    if pa.is_zero() or pb.is_zero() or pc.degree() < 1:
        return
    g = upoly_gcd(pa * pc, pb * pc)
    assert (g % (pc / pc.leading_coefficient())).is_zero()


def test_gaussian_gcd():
    t = GPoly.gen()
    i = GPoly.const(GaussRat(0, 1))
    a = (t - i) * (t + 2)
    b = (t - i) * (t - 3)
    assert upoly_gcd(a, b) == t - i


def test_resultant_detects_common_root():
    R = poly_ring(("x", "y"))
    x, y = R.gens()
    a = (x - y) * (x + 1)
    b = (x - 2 * y) * (x - 3)
    r = sylvester_resultant(a, b, "x")
    assert not r.is_zero()
    # common root x = y when y = 0 or y = 3, and x = -1 = 2y
    assert r.subs({"y": 0}).is_zero()
    assert r.subs({"y": 3}).is_zero()
    assert not r.subs({"y": 1}).is_zero()


def test_resultant_methods_agree():
    R = poly_ring(("x", "y"))
    x, y = R.gens()
    a = x**3 + y * x + 2
    b = 3 * x**2 - y**2 * x + y
    assert sylvester_resultant(a, b, 0, "flint") == sylvester_resultant(a, b, 0, "bareiss")


def test_resultant_formal_degree():
    R = poly_ring(("x", "y"))
    x, y = R.gens()
    a = y * x + 1
    b = x**2 + y
    r1 = sylvester_resultant(a, b, 0, "bareiss", formal=(2, 2))
    r2 = sylvester_resultant(a, b, 0, "flint", formal=(2, 2))
    assert r1 == r2


def test_roots_with_multiplicity():
    t = GPoly.gen()
    p = (t - 1) ** 2 * (t + GPoly.const(GaussRat(0, 1))) * (t - Fraction(1, 3))
    roots = roots_complex(p, 128)
    assert sum(k for _, k in roots) == 4
    assert [k for _, k in roots].count(2) == 1
    with mpmath.workprec(128):
        prod = [mpmath.mpc(1)]
        for z, k in roots:
            for _ in range(k):
                prod = [a - z * b for a, b in zip([0] + prod, prod + [0])]
        want = p.mp_coeffs()
        assert all(abs(a - b) < mpmath.mpf(2) ** -100 for a, b in zip(prod, want))


@given(fracs)
def test_rational_reconstruct_roundtrip(q):
    with mpmath.workprec(160):
        x = mpmath.mpf(q.numerator) / q.denominator
        assert rational_reconstruct(x, 10**6, 160) == q


def test_rational_reconstruct_rejects_irrational():
    with mpmath.workprec(200):
        assert rational_reconstruct(mpmath.sqrt(2), 10**12, 200) is None


def test_bareiss_and_kernel():
    m = [[Fraction(2), Fraction(1), Fraction(0)], [Fraction(1), Fraction(3), Fraction(1)],
         [Fraction(0), Fraction(1), Fraction(4)]]
    assert det_bareiss(m) == 18
    k = rat_kernel([[1, 2, 3], [2, 4, 6]], 3)
    assert len(k) == 2


def test_mpoly_gcd():
    R = poly_ring(("x", "y"))
    x, y = R.gens()
    g = mpoly_gcd((x + y) * (x - 1), (x + y) * (y + 2))
    assert g == x + y or g == -(x + y)

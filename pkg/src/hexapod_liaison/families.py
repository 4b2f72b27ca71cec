"""Two closed-form families of movable liaison hexapods.

Lines family: P_{2k} = mu_k P_{2k-1} on three lines through the origin, the
platform is the base with the points of each pair swapped, scaled by -1.

Order-3 family: base and platform are exchanged by the cyclic coordinate
shift (x, y, z) -> (y, z, x), an isometry of order three.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .exactalg import rat
from .liaison import Hexapod
from .moebius import SixTuple


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class LinesFamilyParams:
    A1: Fraction
    mu1: Fraction
    A3: Fraction
    B3: Fraction
    mu3: Fraction
    A5: Fraction
    B5: Fraction
    C5: Fraction
    d1: Fraction  # squared legs
    d3: Fraction
    d5: Fraction
    mu5: Fraction = Fraction(-1)

    def __post_init__(self):
        for name in self.__dataclass_fields__:
            object.__setattr__(self, name, rat(getattr(self, name)))


def lines_base(p: LinesFamilyParams) -> list[tuple]:
    P1 = (p.A1, Fraction(0), Fraction(0))
    P3 = (p.A3, p.B3, Fraction(0))
    P5 = (p.A5, p.B5, p.C5)

    def sc(m, q):
        return tuple(m * c for c in q)

    return [P1, sc(p.mu1, P1), P3, sc(p.mu3, P3), P5, sc(p.mu5, P5)]


def make_family_lines(params: LinesFamilyParams) -> Hexapod:
    for m in (params.mu1, params.mu3, params.mu5):
        if m == 1:
            raise FamilyError("mu = 1 makes two base points coincide")
    P = lines_base(params)
    if any(all(c == 0 for c in q) for q in P):
        raise FamilyError("a base point lies at the origin")
    try:
        base = SixTuple(P)
    except ValueError as exc:
        raise FamilyError(str(exc)) from exc
    # pairs swapped; gamma = -1 turns them into -P_2, -P_1, ...
    plat = SixTuple([P[1], P[0], P[3], P[2], P[5], P[4]])
    legs = (params.d1, params.d1, params.d3, params.d3, params.d5, params.d5)
    return Hexapod(base, plat, Fraction(-1), legs)


def lines_concurrent(h: Hexapod) -> bool:
    """Lines P1P2, P3P4, P5P6 all pass through the origin."""
    P = h.base.points
    for i in (0, 2, 4):
        a, b = P[i], P[i + 1]
        cross = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])
        if any(cross):
            return False
    return True


@dataclass(frozen=True)
class Order3FamilyParams:
    a: Fraction
    b: Fraction
    c: Fraction
    A: Fraction
    B: Fraction
    C: Fraction
    d1: Fraction  # squared legs
    d2: Fraction
    d3: Fraction

    def __post_init__(self):
        for name in self.__dataclass_fields__:
            object.__setattr__(self, name, rat(getattr(self, name)))

    @property
    def k(self) -> Fraction:
        a, b, c = self.a, self.b, self.c
        return a * a + b * b + c * c - a * b - a * c - b * c

    @property
    def K(self) -> Fraction:
        A, B, C = self.A, self.B, self.C
        return A * A + B * B + C * C - A * B - A * C - B * C

    def uvw(self) -> tuple[Fraction, Fraction, Fraction]:
        a, b, c, A, B, C = self.a, self.b, self.c, self.A, self.B, self.C
        U = A * a - A * b + B * b - B * c - C * a + C * c
        V = A * a - A * c - B * a + B * b - C * b + C * c
        W = A * b - A * c - B * a + B * c + C * a - C * b
        return U, V, W

    def legs(self) -> tuple[Fraction, ...]:
        U, V, W = self.uvw()
        kK = self.k * self.K
        d1, e2, e3 = self.d1, self.d2 - self.d1, self.d3 - self.d1
        d4 = -(U * W * e2 - V * W * e3) / kK + d1
        d5 = (U * V * e2 - U * W * e3) / kK + d1
        d6 = (V * W * e2 + U * V * e3) / kK + d1
        return (self.d1, self.d2, self.d3, d4, d5, d6)


def cyclic_shift(q):
    return (q[1], q[2], q[0])


def order3_tuples(p: Order3FamilyParams) -> tuple[list, list]:
    p1 = (p.a, p.b, p.c)
    p4 = (p.A, p.B, p.C)
    p2, p3 = cyclic_shift(p1), cyclic_shift(cyclic_shift(p1))
    p5, p6 = cyclic_shift(p4), cyclic_shift(cyclic_shift(p4))
    plat = [p1, p2, p3, p4, p5, p6]
    base = [p4, p6, p5, p1, p3, p2]
    return base, plat


@dataclass
class Order3Instance:
    hexapod: Hexapod
    congruent: bool


def make_family_order3(params: Order3FamilyParams) -> Order3Instance:
    if params.k == 0 or params.K == 0:
        raise FamilyError("degenerate parameters: k K = 0")
    base, plat = order3_tuples(params)
    try:
        h = Hexapod(SixTuple(base), SixTuple(plat), Fraction(1), params.legs())
    except ValueError as exc:
        raise FamilyError(str(exc)) from exc
    return Order3Instance(h, params.k == params.K)


def order3_symmetry_ok(h: Hexapod) -> bool:
    """sigma: (P1..P6) -> (P2, P3, P1, P5, P6, P4) is realized by a cyclic shift.

    In the adapted frame sigma is the inverse shift on the base and the shift
    itself on the platform."""
    def permuted(tup):
        return [tup[1], tup[2], tup[0], tup[4], tup[5], tup[3]]

    base, plat = h.base.points, h.platform.points
    inv = [cyclic_shift(cyclic_shift(q)) for q in base]
    return inv == permuted(base) and [cyclic_shift(q) for q in plat] == permuted(plat)


# ------------------------------------------------------------ randomizers


def _r(rng: random.Random, lo=-9, hi=9, den=5, nonzero=True) -> Fraction:
    while True:
        q = Fraction(rng.randint(lo * den, hi * den), rng.randint(1, den))
        if q != 0 or not nonzero:
            return q


def random_lines_params(rng: random.Random) -> LinesFamilyParams:
    while True:
        mus = [_r(rng) for _ in range(3)]
        if any(m in (1, -1) for m in mus) or len(set(mus)) < 3:
            continue
        legs = [Fraction(rng.randint(20, 90)) for _ in range(3)]
        return LinesFamilyParams(_r(rng), mus[0], _r(rng), _r(rng), mus[1], _r(rng), _r(rng), _r(rng),
                                 *legs, mu5=mus[2])


def random_order3_params(rng: random.Random) -> Order3FamilyParams:
    while True:
        vals = [_r(rng) for _ in range(6)]
        p = Order3FamilyParams(*vals, *[Fraction(rng.randint(20, 90)) for _ in range(3)])
        if p.k != 0 and p.K != 0 and p.k != p.K:
            return p


def random_rigid_motion(rng: random.Random, h: Hexapod, which: str = "base") -> Hexapod:
    """Apply a random rational rotation and translation to base or platform."""
    e = [Fraction(rng.randint(-5, 5)) for _ in range(4)]
    while not any(e):
        e = [Fraction(rng.randint(-5, 5)) for _ in range(4)]
    from .study import rotation_of

    R = rotation_of(e)
    t = [_r(rng) for _ in range(3)]

    def move(q):
        return tuple(sum(q[r] * R[r][c] for r in range(3)) + t[c] for c in range(3))

    if which == "base":
        return Hexapod(SixTuple([move(q) for q in h.base.points]), h.platform, h.gamma, h.legs2)
    return Hexapod(h.base, SixTuple([move(q) for q in h.platform.points]), h.gamma, h.legs2)


def congruent_point(params: Order3FamilyParams, m, C) -> Order3FamilyParams:
    """Parameters with the same (a, b, c) and legs but K = k.

    With x = A - C, y = B - C the condition reads x^2 - xy + y^2 = k, a conic
    through (a - c, b - c); the line of slope m through that point meets it
    once more."""
    m, C = rat(m), rat(C)
    x0, y0 = params.a - params.c, params.b - params.c
    den = 1 - m + m * m
    lam = -(2 * x0 - y0 + m * (2 * y0 - x0)) / den
    x, y = x0 + lam, y0 + m * lam
    return Order3FamilyParams(params.a, params.b, params.c, C + x, C + y, C,
                              params.d1, params.d2, params.d3)


def kK_factor_check(params: Order3FamilyParams, rng: random.Random, samples: int = 2) -> dict:
    """Exhibit k - K as a factor of every G_k.

    G_k is nonzero at the given parameters and vanishes identically at random
    rational points of the congruence locus k = K.  As k - K is irreducible,
    vanishing on a dense set of that locus means divisibility."""
    from .study import build_system, omega_and_g

    def gs_of(p):
        h = make_family_order3(p).hexapod
        return omega_and_g(build_system(h.base, h.scaled_platform, h.legs2))[1]

    nonzero = all(not g.is_zero() for g in gs_of(params).values())
    vanish = []
    for _ in range(samples):
        while True:
            q = congruent_point(params, _r(rng), _r(rng, nonzero=False))
            if q.K != 0 and q.K == q.k:
                try:
                    gs = gs_of(q)
                    break
                except (FamilyError, ValueError):
                    continue
        vanish.append(all(g.is_zero() for g in gs.values()))
    return {"nonzero_at_params": nonzero, "vanish_on_locus": all(vanish), "samples": samples}

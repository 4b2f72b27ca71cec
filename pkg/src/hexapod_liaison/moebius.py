"""Photographic maps of 6-tuples into the Segre cubic.

A direction in R^3 up to scaling is a point of the conic C: x^2+y^2+z^2 = 0,
parametrized by c(t) = (2t, i(1+t^2), 1-t^2).  Projecting six points along a
direction and taking the Moebius class of the projected 6-tuple gives a map
C -> M6, the Segre cubic in P^4.  Its components are products of the forms
H_ij(x, y, z) = (A_i - A_j) . (x, y, z).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .exactalg import (
    GaussRat,
    GPoly,
    gpoly_gcd,
    gpoly_resultant_rows,
    gpoly_to_mpoly,
    mpoly_to_gpoly,
    poly_ring,
    sylvester_resultant,
    rat,
    rat_kernel,
    roots_complex,
    upoly_gcd_many,
)

Point = tuple[Fraction, Fraction, Fraction]

# index triples (1-based) of the H-factors of the five displayed products f_0..f_4
COMPONENTS = (
    ((1, 2), (3, 6), (4, 5)),
    ((1, 4), (2, 3), (5, 6)),
    ((1, 6), (2, 5), (3, 4)),
    ((1, 6), (2, 3), (4, 5)),
    ((1, 2), (3, 4), (5, 6)),
)

# The printed cubic x0 x1 (x0+..+x4) - x2 x3 x4 holds for the coordinates
# (f_3, f_4, f_0, f_1, f_2); the displayed order satisfies f3 f4 (sum) - f0 f1 f2.
SEGRE_ORDER = (3, 4, 0, 1, 2)

INF = math.inf  # the parameter of c_inf = (0 : i : -1)


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class SixTuple:
    points: tuple

    def __post_init__(self):
        pts = tuple(tuple(rat(c) for c in p) for p in self.points)
        if len(pts) != 6 or any(len(p) != 3 for p in pts):
            raise ValueError("a six-tuple needs 6 points with 3 coordinates each")
        if len(set(pts)) != 6:
            raise ValueError("points of a six-tuple must be pairwise distinct")
        object.__setattr__(self, "points", pts)

    def __getitem__(self, i: int) -> Point:
        """1-based access, matching the indices of H_ij."""
        return self.points[i - 1]

    def scaled(self, g) -> "SixTuple":
        g = rat(g)
        return SixTuple(tuple(tuple(g * c for c in p) for p in self.points))

    def is_planar(self) -> bool:
        d = [_sub(p, self.points[0]) for p in self.points[1:]]
        return all(_dot(_cross(d[a], d[b]), d[c]) == 0
                   for a, b, c in itertools.combinations(range(5), 3))

    def _collinear(self, idx) -> bool:
        p0 = self.points[idx[0]]
        d = [_sub(self.points[k], p0) for k in idx[1:]]
        return all(_cross(d[0], e) == (0, 0, 0) for e in d[1:])

    def has_collinear_triple(self) -> bool:
        return any(self._collinear(c) for c in itertools.combinations(range(6), 3))

    def has_four_collinear(self) -> bool:
        return any(self._collinear(c) for c in itertools.combinations(range(6), 4))

    def is_non_parallel(self) -> bool:
        """No two disjoint index pairs have parallel connecting lines."""
        for (a, b), (c, d) in itertools.combinations(itertools.combinations(range(6), 2), 2):
            if len({a, b, c, d}) < 4:
                continue
            u = _sub(self.points[a], self.points[b])
            v = _sub(self.points[c], self.points[d])
            if _cross(u, v) == (0, 0, 0):
                return False
        return True


def h_form(tup: SixTuple, i: int, j: int) -> Point:
    """Coefficients of H_ij = (A_i - A_j) . (x, y, z)."""
    if i == j:
        raise ValueError("h_form needs two distinct indices")
    return _sub(tup[i], tup[j])


# --------------------------------------------------------------------- conic

T = GPoly.gen()
CONIC = (T.scale(2), (T * T + 1).scale(GaussRat(0, 1)), 1 - T * T)
CONIC_DERIV = tuple(c.derivative() for c in CONIC)
C_INF = (GaussRat(0), GaussRat(0, 1), GaussRat(-1))


def conic_point(t):
    """c(t) as mpc numbers (GaussRat for exact t); t = INF gives c_inf."""
    if t == INF:
        return tuple(c.to_mpc() for c in C_INF)
    return tuple(c(t) for c in CONIC)


def conic_deriv(t):
    return tuple(c(t) for c in CONIC_DERIV)


def sigma(t):
    """Real structure of C: sigma(t) = -1/conj(t); swaps 0 and infinity."""
    if t == INF:
        return mpmath.mpc(0)
    if t == 0:
        return INF
    return -1 / mpmath.conj(mpmath.mpc(t))


def restrict_linear(coeffs) -> GPoly:
    """A linear form in (x, y, z) restricted to c(t)."""
    out = GPoly()
    for c, ct in zip(coeffs, CONIC):
        out = out + ct.scale(c)
    return out


def raw_components(tup: SixTuple, segre_order: bool = True) -> list[GPoly]:
    """The five products restricted to c(t), as P^4 coordinates."""
    hs = {}
    for trip in COMPONENTS:
        for ij in trip:
            if ij not in hs:
                hs[ij] = restrict_linear(h_form(tup, *ij))
    f = [hs[a] * hs[b] * hs[c] for a, b, c in COMPONENTS]
    return [f[k] for k in SEGRE_ORDER] if segre_order else f


@dataclass
class MoebiusMap:
    source: SixTuple
    phi: list  # five GPolys
    removed: GPoly
    degree: int  # projective degree after common-factor removal
    map_degree: int  # generic fiber size
    tag: str

    @property
    def image_degree(self) -> int:
        return self.degree // self.map_degree if self.map_degree else 0

    def at(self, t) -> list:
        """Numeric image point; t = INF uses the reversed chart."""
        if t == INF:
            return [p.reverse(self.degree)(mpmath.mpc(0)) for p in self.phi]
        return [p(t) for p in self.phi]

    def reversed(self) -> list[GPoly]:
        return [p.reverse(self.degree) for p in self.phi]


def _fiber_degree(phi: Sequence[GPoly], degree: int, t0: GaussRat) -> int:
    """Number of parameters (with infinity) mapping to the image of t0."""
    v = [p(t0) for p in phi]
    minors = []
    rminors = []
    rev = [p.reverse(degree) for p in phi]
    for a, b in itertools.combinations(range(5), 2):
        minors.append(phi[a].scale(v[b]) - phi[b].scale(v[a]))
        rminors.append(rev[a].scale(v[b]) - rev[b].scale(v[a]))
    g = upoly_gcd_many(minors)
    gr = upoly_gcd_many(rminors)
    at_inf = 0 if gr.is_zero() else (gr.order_at_zero() if gr.degree() > 0 else 0)
    return g.degree() + at_inf


def photographic_map(tup: SixTuple) -> MoebiusMap:
    raw = raw_components(tup)
    if all(p.is_zero() for p in raw):
        raise ValueError("degenerate tuple: all components vanish identically")
    g = upoly_gcd_many([p for p in raw if not p.is_zero()])
    phi = [p.exact_div(g) for p in raw]
    degree = max(p.degree() for p in phi)
    # a generic Gaussian parameter; fixed for determinism
    e = _fiber_degree(phi, degree, GaussRat(Fraction(3, 7), Fraction(5, 11)))
    if e == 1 and degree in (6, 4):
        tag = f"birational-{degree}"
    elif e == 2 and degree // 2 in (3, 2, 1):
        tag = f"planar-2:1-deg-{degree // 2}"
    else:
        tag = "degenerate"
    return MoebiusMap(tup, phi, g, degree, e, tag)


def segre_cubic(x):
    return x[0] * x[1] * (x[0] + x[1] + x[2] + x[3] + x[4]) - x[2] * x[3] * x[4]


def segre_gradient(x):
    s = x[0] + x[1] + x[2] + x[3] + x[4]
    return [
        x[1] * s + x[0] * x[1],
        x[0] * s + x[0] * x[1],
        x[0] * x[1] - x[3] * x[4],
        x[0] * x[1] - x[2] * x[4],
        x[0] * x[1] - x[2] * x[3],
    ]


def segre_check(m: MoebiusMap | Sequence[GPoly]) -> bool:
    phi = m.phi if isinstance(m, MoebiusMap) else list(m)
    return segre_cubic(phi).is_zero()


def t_plane_roots(m: MoebiusMap, i: int, j: int, precision: int = 256) -> list:
    """The two parameters whose directions are orthogonal to A_i - A_j."""
    h = restrict_linear(h_form(m.source, i, j))
    if h.is_zero():
        raise ValueError(f"H_{i}{j} vanishes identically on the conic")
    with mpmath.workprec(precision):
        roots = [z for z, k in roots_complex(h, precision) for _ in range(k)]
    return roots + [INF] * (2 - h.degree())


# ------------------------------------------------------------------ quadrics

QUAD_MONOMIALS = [(a, b) for a in range(5) for b in range(a, 5)]


@dataclass
class QuadricPencil:
    basis: list  # each a list of 15 Fractions over QUAD_MONOMIALS

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def evaluate(self, k: int, x):
        return sum(c * x[a] * x[b] for c, (a, b) in zip(self.basis[k], QUAD_MONOMIALS) if c)

    def gradient(self, k: int, x):
        g = [0] * 5
        for c, (a, b) in zip(self.basis[k], QUAD_MONOMIALS):
            if c:
                g[a] = g[a] + c * x[b]
                g[b] = g[b] + c * x[a]
        return g


def quadric_pencil(m: MoebiusMap) -> QuadricPencil:
    if m.tag != "birational-6":
        raise ValueError(f"quadric pencil needs a birational sextic, got {m.tag}")
    cols = [m.phi[a] * m.phi[b] for a, b in QUAD_MONOMIALS]
    n = 2 * m.degree + 1
    rows = []
    for k in range(n):
        rows.append([c.coeff(k).re for c in cols])
        rows.append([c.coeff(k).im for c in cols])
    return QuadricPencil(rat_kernel(rows, len(QUAD_MONOMIALS)))


def pencil_vanishes_on(pencil: QuadricPencil, m: MoebiusMap) -> list[bool]:
    return [pencil.evaluate(k, m.phi).is_zero() for k in range(pencil.dimension)]


# ---------------------------------------------------- matched directions


class EquiformError(ValueError):
    pass


@dataclass
class MatchedPair:
    u: object  # base parameter (mpc or INF)
    s: object  # platform parameter
    multiplicity: int
    node: bool  # image point is a node of the Segre cubic
    residual: object = None


def _coeff_matrix(phi_u: Sequence[GPoly], degree: int):
    """Each component as its list of constant coefficients (length degree+1)."""
    return [[p.coeff(k) if k <= p.degree() else GaussRat(0) for k in range(degree + 1)]
            for p in phi_u]


def _minor_u_coeffs(cu, phi_s: Sequence[GPoly], a: int, b: int) -> list[GPoly]:
    """Coefficients in u of phi^A_a(u) phi^B_b(s) - phi^A_b(u) phi^B_a(s)."""
    return [phi_s[b].scale(cu[a][k]) - phi_s[a].scale(cu[b][k]) for k in range(len(cu[a]))]


# pairs of minors sharing one index, with different shared indices
MINOR_PAIRS = (((0, 1), (0, 2)), ((1, 2), (1, 3)), ((2, 3), (2, 4)), ((3, 4), (3, 0)),
               ((4, 0), (4, 1)))


_UVI = poly_ring(("u", "s", "I"))


def _eliminant(phi_a, deg_a, phi_b, pairs, method: str = "flint") -> GPoly:
    """gcd over the minor pairs of Res_u(minor, minor'), a GPoly in s."""
    res = []
    if method == "flint":
        pa = [gpoly_to_mpoly(p, _UVI, 0, 2) for p in phi_a]
        pb = [gpoly_to_mpoly(p, _UVI, 1, 2) for p in phi_b]
        for (a, b), (c, d) in pairs:
            m1 = pa[a] * pb[b] - pa[b] * pb[a]
            m2 = pa[c] * pb[d] - pa[d] * pb[c]
            if m1.is_zero() or m2.is_zero():
                res.append(GPoly())
                continue
            r = sylvester_resultant(m1, m2, 0, method="flint", formal=(deg_a, deg_a))
            res.append(mpoly_to_gpoly(r, 1, 2))
    else:
        cu = _coeff_matrix(phi_a, deg_a)
        for (a, b), (c, d) in pairs:
            res.append(gpoly_resultant_rows(_minor_u_coeffs(cu, phi_b, a, b),
                                            _minor_u_coeffs(cu, phi_b, c, d)))
    if all(r.is_zero() for r in res):
        raise EquiformError("equiform: intersection not finite")
    return upoly_gcd_many([r for r in res if not r.is_zero()])


def _proj_dist(x, y) -> mpmath.mpf:
    """Sine-type distance between two points of P^4."""
    nx = mpmath.sqrt(sum(abs(c) ** 2 for c in x))
    ny = mpmath.sqrt(sum(abs(c) ** 2 for c in y))
    m = max(abs(x[a] * y[b] - x[b] * y[a]) for a, b in itertools.combinations(range(5), 2))
    return m / (nx * ny)


def is_node(x, tol) -> bool:
    g = segre_gradient(x)
    n = max(abs(c) for c in x)
    return max(abs(c) for c in g) <= tol * n * n


def matched_directions(base: SixTuple | MoebiusMap, platform: SixTuple | MoebiusMap,
                       precision: int = 256, pairs=MINOR_PAIRS[:4],
                       method: str = "flint") -> list[MatchedPair]:
    """Parameter pairs (u, s) with f_base(c(u)) = f_platform(c(s)) in P^4."""
    ma = base if isinstance(base, MoebiusMap) else photographic_map(base)
    mb = platform if isinstance(platform, MoebiusMap) else photographic_map(platform)
    da, db = ma.degree, mb.degree
    g = _eliminant(ma.phi, da, mb.phi, pairs, method)
    # chart s = 1/s' for platform parameters at infinity
    g_inf = _eliminant(ma.phi, da, mb.reversed(), pairs, method)
    ord_inf = g_inf.order_at_zero() if not g_inf.is_zero() else 0
    out: list[MatchedPair] = []
    with mpmath.workprec(precision):
        tol = mpmath.mpf(2) ** (-precision // 3)
        s_roots = roots_complex(g, precision) if g.degree() > 0 else []
        if ord_inf:
            s_roots.append((INF, ord_inf))
        for s, mult in s_roots:
            w = mb.at(s)
            u, resid = _best_partner(ma, w, precision)
            node = is_node(w, tol)
            if resid > tol:
                continue  # spurious factor of the eliminant
            out.append(MatchedPair(u, s, mult, node, resid))
    out.sort(key=_pair_key)
    return out


def _pair_key(p: MatchedPair):
    def k(z):
        return (1, 0.0, 0.0) if z == INF else (0, float(mpmath.re(z)), float(mpmath.im(z)))
    return k(p.s) + k(p.u)


def _best_partner(ma: MoebiusMap, w, precision):
    """Base parameter u whose image is projectively closest to w."""
    # use the minor pairing the two largest coordinates of w
    order = sorted(range(5), key=lambda k: -abs(w[k]))
    a, b = order[0], order[1]
    cands = []
    poly_coeffs = []
    for k in range(ma.degree + 1):
        ca = ma.phi[a].coeff(k).to_mpc() if k <= ma.phi[a].degree() else 0
        cb = ma.phi[b].coeff(k).to_mpc() if k <= ma.phi[b].degree() else 0
        poly_coeffs.append(ca * w[b] - cb * w[a])
    top = max(abs(c) for c in poly_coeffs)
    while poly_coeffs and abs(poly_coeffs[-1]) <= top * mpmath.mpf(2) ** (-precision // 2):
        poly_coeffs.pop()
    if len(poly_coeffs) > 1:
        cands = list(mpmath.polyroots(poly_coeffs[::-1], maxsteps=400, extraprec=precision))
    cands.append(INF)
    best, bres = None, None
    for u in cands:
        x = ma.at(u)
        if max(abs(c) for c in x) == 0:
            continue
        r = _proj_dist(x, w)
        if bres is None or r < bres:
            best, bres = u, r
    if best is not None and best != INF:
        best = _polish_partner(ma, w, best, a, b, precision)
        bres = _proj_dist(ma.at(best), w)
    return best, bres


def _polish_partner(ma, w, u, a, b, precision):
    # exact-coefficient Newton on phi_a(u) w_b - phi_b(u) w_a
    def val(z):
        return ma.phi[a](z) * w[b] - ma.phi[b](z) * w[a]
    da, db = ma.phi[a].derivative(), ma.phi[b].derivative()
    for _ in range(100):
        d = da(u) * w[b] - db(u) * w[a]
        if d == 0:
            break
        step = val(u) / d
        u = u - step
        if abs(step) <= mpmath.mpf(2) ** (-precision) * max(1, abs(u)):
            break
    return u


def total_multiplicity(pairs: Sequence[MatchedPair]) -> int:
    return sum(p.multiplicity for p in pairs)


# ------------------------------------------------- residual intersection


class SmoothnessError(ValueError):
    pass


def _jacobian_minor_gcd(phi: Sequence[GPoly], pencil: QuadricPencil):
    rows = [pencil.gradient(0, phi), pencil.gradient(1, phi), segre_gradient(phi)]
    minors = []
    for cols in itertools.combinations(range(5), 3):
        a, b, c = cols
        m = (rows[0][a] * (rows[1][b] * rows[2][c] - rows[1][c] * rows[2][b])
             - rows[0][b] * (rows[1][a] * rows[2][c] - rows[1][c] * rows[2][a])
             + rows[0][c] * (rows[1][a] * rows[2][b] - rows[1][b] * rows[2][a]))
        minors.append(m)
    nz = [m for m in minors if not m.is_zero()]
    return upoly_gcd_many(nz) if nz else GPoly()


def singular_locus(m: MoebiusMap) -> tuple[GPoly, GPoly]:
    """(immersion failures, double points) of t -> phi(t) in the affine chart."""
    d = [p.derivative() for p in m.phi]
    imm = upoly_gcd_many([m.phi[a] * d[b] - m.phi[b] * d[a]
                          for a, b in itertools.combinations(range(5), 2)])
    return imm, double_point_poly(m)


def double_point_poly(m: MoebiusMap) -> GPoly:
    """Polynomial in t vanishing where phi(t) = phi(t') for some t' != t.

    Uses divided differences (phi_a(t)phi_b(t') - phi_b(t)phi_a(t'))/(t - t')
    and resultants in t' over several minor pairs.
    """
    n = m.degree
    cs = _coeff_matrix(m.phi, n)

    def divided(a, b):
        # coefficient of t'^l in the divided difference, as a GPoly in t
        # (phi_a(t)phi_b(t') - phi_b(t)phi_a(t')) / (t - t') with
        # sum_k,l (a_k b_l - b_k a_l) t^k t'^l / (t - t')
        full = [[cs[a][k] * cs[b][l] - cs[b][k] * cs[a][l] for l in range(n + 1)] for k in range(n + 1)]
        # divide the bivariate antisymmetric polynomial by (t - t') via synthetic division in t
        # q(t,t') with full = (t - t') q: process by degree in t from the top
        q = [[GaussRat(0)] * (n + 1) for _ in range(n)]
        rem = [row[:] for row in full]
        for k in range(n, 0, -1):
            for l in range(n + 1):
                c = rem[k][l]
                if c.is_zero():
                    continue
                q[k - 1][l] = q[k - 1][l] + c
                rem[k][l] = rem[k][l] - c
                if l + 1 <= n:
                    rem[k - 1][l + 1] = rem[k - 1][l + 1] + c
                else:
                    raise ArithmeticError("divided difference overflow")
        return [GPoly.from_coeffs([q[k][l] for k in range(n)]) for l in range(n + 1)][:n]

    res = []
    for (a, b), (c, d) in MINOR_PAIRS:
        r = gpoly_resultant_rows(divided(a, b), divided(c, d))
        if not r.is_zero():
            res.append(r)
    return upoly_gcd_many(res) if res else GPoly()


def residual_intersection_count(m: MoebiusMap, pencil: QuadricPencil | None = None,
                                check_smooth: bool = True) -> int:
    """Length of the singular scheme of Q1 & Q2 & M6 along the curve."""
    pencil = pencil or quadric_pencil(m)
    if pencil.dimension != 2:
        raise ValueError(f"pencil dimension {pencil.dimension}, expected 2")
    g = _jacobian_minor_gcd(m.phi, pencil)
    grev = _jacobian_minor_gcd(m.reversed(), pencil)
    if g.is_zero():
        raise SmoothnessError("Jacobian rank drops identically along the curve")
    if check_smooth and g.degree() > 0:
        imm, dbl = singular_locus(m)
        for bad, name in ((imm, "non-immersive"), (dbl, "double")):
            if bad.degree() > 0 and gpoly_gcd(g, bad).degree() > 0:
                raise SmoothnessError(f"curve has {name} points inside the residual locus")
    return g.degree() + (grev.order_at_zero() if grev.degree() > 0 else 0)


@dataclass
class MoebiusReport:
    tag: str
    degree_six: bool
    injective: bool
    immersive: bool
    pencil_dimension: int
    pencil_two: bool
    residual_count: int | None
    residual_fourteen: bool
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.degree_six and self.injective and self.immersive and self.pencil_two
                and self.residual_fourteen)


def moebius_general_test(tup: SixTuple) -> MoebiusReport:
    m = photographic_map(tup)
    notes = ["smoothness of the residual curve is not certified"]
    deg6 = m.tag == "birational-6"
    if not deg6:
        return MoebiusReport(m.tag, False, m.map_degree == 1, False, 0, False, None, False, notes)
    imm, dbl = singular_locus(m)
    # chart at infinity for immersion
    rv = m.reversed()
    drv = [p.derivative() for p in rv]
    imm_inf = upoly_gcd_many([rv[a] * drv[b] - rv[b] * drv[a]
                              for a, b in itertools.combinations(range(5), 2)])
    immersive = imm.degree() == 0 and (imm_inf.degree() == 0 or imm_inf.coeff(0) != GaussRat(0))
    injective = dbl.degree() == 0
    pen = quadric_pencil(m)
    count = None
    if pen.dimension == 2:
        try:
            count = residual_intersection_count(m, pen)
        except SmoothnessError as exc:
            notes.append(str(exc))
    return MoebiusReport(m.tag, deg6, injective, immersive, pen.dimension, pen.dimension == 2,
                         count, count == 14, notes)

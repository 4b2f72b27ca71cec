"""Liaison hexapods: partner verification, the tangency conditions, certificates.

For a base P and a platform p whose Moebius curves meet in 14 points, every
intersection gives a bond of (P, gamma p, d) for all gamma and d.  Tang2 picks
gamma so that the pseudo-spherical hyperplanes meet the tangent space of X at
each bond in a line; Tang3 picks the squared legs so that a 2-jet of X at each
bond lies in the spherical hyperplanes.  Both are computed per bond in high
precision and the result is recovered as exact rationals.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from . import moebius as mb
from .conformal import (
    Bond,
    apply_form,
    bond_solve,
    jacobian,
    pseudo_residuals,
    spherical_form,
    tangent_rows,
    x_defining_quadrics,
)
from .exactalg import mp_det, mp_kernel, mp_svd, rat, rational_reconstruct
from .moebius import SixTuple, conic_deriv, conic_point


@dataclass
class Hexapod:
    base: SixTuple
    platform: SixTuple
    gamma: Fraction
    legs2: tuple | None = None

    def __post_init__(self):
        self.gamma = rat(self.gamma)
        if self.gamma == 0:
            raise ValueError("gamma must be nonzero")
        if self.legs2 is not None:
            self.legs2 = tuple(rat(d) for d in self.legs2)
            if len(self.legs2) != 6:
                raise ValueError("six squared leg lengths expected")

    @property
    def scaled_platform(self) -> SixTuple:
        return self.platform.scaled(self.gamma)

    def realizable(self) -> bool:
        return self.legs2 is not None and all(d > 0 for d in self.legs2)


class LiaisonError(ValueError):
    pass


# ------------------------------------------------------------ verification


@dataclass
class VerifyReport:
    base_general: bool
    pencil_contains_platform: bool
    distinct: bool
    total_multiplicity: int
    node_pairs: list
    pairs: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.pencil_contains_platform and self.distinct and self.total_multiplicity == 14
                and not self.node_pairs)


def verify_residual_platform(base: SixTuple, platform: SixTuple, precision: int = 256,
                             check_base: bool = True) -> VerifyReport:
    if check_base:
        rep = mb.moebius_general_test(base)
        if not rep.passed:
            raise LiaisonError(f"base is not Moebius-general ({rep.tag}, pencil {rep.pencil_dimension})")
    ma = mb.photographic_map(base)
    mp_ = mb.photographic_map(platform)
    pen = mb.quadric_pencil(ma)
    on = all(mb.pencil_vanishes_on(pen, mp_)) if mp_.degree == ma.degree else False
    distinct = not all((ma.phi[a] * mp_.phi[b] - ma.phi[b] * mp_.phi[a]).is_zero()
                       for a, b in itertools.combinations(range(5), 2))
    if not on or not distinct:
        return VerifyReport(True, on, distinct, 0, [])
    try:
        pairs = mb.matched_directions(ma, mp_, precision)
    except mb.EquiformError:
        return VerifyReport(True, on, False, 0, [])
    nodes = [k for k, p in enumerate(pairs) if p.node]
    return VerifyReport(True, on, distinct, mb.total_multiplicity(pairs), nodes, pairs)


def compute_bonds(base: SixTuple, platform: SixTuple, pairs=None, precision: int = 256) -> list[Bond]:
    if pairs is None:
        pairs = mb.matched_directions(base, platform, precision)
    return [bond_solve(base, platform, p.u, p.s, conic_point, precision) for p in pairs]


def _pmap(fn, items, workers: int):
    """Map fn over items, in worker processes when workers > 1."""
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


# --------------------------------------------------------------------- Tang2


def eta_matrix(bond: Bond, base: SixTuple, platform: SixTuple, gamma) -> list[list]:
    """Pseudo-spherical forms of (P, gamma p) applied to the tangent rows."""
    rows = tangent_rows(bond, gamma, conic_deriv)
    forms = [spherical_form([gamma * c for c in p], P) for P, p in zip(base.points, platform.points)]
    return [[apply_form(f, t) for t in rows] for f in forms]


def _interpolate(nodes, values):
    V = mpmath.matrix([[x ** k for k in range(len(nodes))] for x in nodes])
    c = mpmath.lu_solve(V, mpmath.matrix(values))
    return [c[k] for k in range(len(nodes))]


def tang2_minor_polys(bond: Bond, base, platform) -> tuple[list[list], object]:
    """All 6x6 minors of eta(gamma) as ascending coefficient lists (degree <= 6).

    Also returns a Hadamard bound for the minors over the interpolation nodes,
    the natural scale against which a minor counts as zero."""
    nodes = [mpmath.mpf(k) for k in range(2, 9)]
    mats = [eta_matrix(bond, base, platform, g) for g in nodes]
    hadamard = max(mpmath.fprod(mpmath.sqrt(sum(abs(x) ** 2 for x in r)) for r in M) for M in mats)
    polys = []
    for drop in range(7):
        vals = [mp_det([[r[j] for j in range(7) if j != drop] for r in M]) for M in mats]
        polys.append(_interpolate(nodes, vals))
    return polys, hadamard


def _trim(poly, tol, scale):
    """Drop coefficients below tol*scale and the gamma^k factor; None if nothing is left."""
    c = [x if abs(x) > tol * scale else 0 for x in poly]
    while c and c[-1] == 0:
        c.pop()
    if not c:
        return None
    k = 0
    while c[k] == 0:
        k += 1
    return c[k:]


def _common_roots(polys, tol, ref_scale) -> list:
    """Roots of the lowest-degree polynomial at which all others vanish."""
    polys = [p for p in polys if p is not None]
    if not polys:
        return []
    polys.sort(key=len)
    first = polys[0]
    if len(first) == 1:
        return []
    cands = mpmath.polyroots(first[::-1], maxsteps=400, extraprec=mpmath.mp.prec)
    if not isinstance(cands, list):
        cands = [cands]
    out = []
    for z in cands:
        ok = True
        for p in polys[1:]:
            val = mpmath.polyval(p[::-1], z)
            scale = sum(abs(c) * max(1, abs(z)) ** k for k, c in enumerate(p))
            if abs(val) > ref_scale * scale:
                ok = False
                break
        if ok:
            out.append(z)
    return out


@dataclass
class Tang2Result:
    per_bond_roots: list
    gammas: list  # Fractions
    residual: object  # max normalized minor value at the returned gammas
    linear_in_gamma: bool


def _minors_job(args):
    bond, base, platform, precision = args
    with mpmath.workprec(precision):
        return tang2_minor_polys(bond, base, platform)


def _minor_residual(polys, scale, gamma) -> mpmath.mpf:
    """Largest minor value at gamma relative to the Hadamard scale."""
    w = max(1, abs(gamma)) ** 6
    return max(abs(mpmath.polyval(p[::-1], gamma)) for p in polys) / (scale * w)


def tang2_solve(base: SixTuple, platform: SixTuple, precision: int = 256, den_bound: int = 10**12,
                bonds: Sequence[Bond] | None = None, workers: int = 1) -> Tang2Result:
    """Common gamma roots of the 6x6 minors of eta over all bonds.

    Bonds at which eta has rank <= 5 for every gamma put no condition on gamma
    and show up as None in per_bond_roots."""
    with mpmath.workprec(precision):
        bonds = bonds if bonds is not None else compute_bonds(base, platform, precision=precision)
        tol = mpmath.mpf(2) ** (-precision // 2)
        per = _pmap(_minors_job, [(b, base, platform, precision) for b in bonds], workers)
        per_roots = []
        linear = True
        for polys, scale in per:
            trimmed = [_trim(p, tol, scale) for p in polys]
            linear = linear and all(t is None or len(t) <= 2 for t in trimmed)
            per_roots.append(None if all(t is None for t in trimmed)
                             else _common_roots(trimmed, tol, tol))
        constrained = [rs for rs in per_roots if rs is not None]
        if not constrained:
            raise LiaisonError("Tang2 holds for every gamma at every bond")
        common = []
        for z in constrained[0]:
            if all(any(abs(z - w) <= tol * max(1, abs(z)) for w in rs) for rs in constrained[1:]):
                common.append(z)
        gammas = []
        for z in common:
            q = rational_reconstruct(z, den_bound, precision - 32)
            if q is not None and q != 0 and q not in gammas:
                gammas.append(q)
        if not gammas:
            raise LiaisonError("no Tang2 scaling exists")
        gammas.sort()
        resid = max(_minor_residual(polys, scale, mpmath.mpf(g.numerator) / g.denominator)
                    for polys, scale in per for g in gammas)
        return Tang2Result(per_roots, gammas, resid, linear)


# --------------------------------------------------------------------- Tang3


def _pinv_solve(A, rhs, tol):
    """Minimum-norm least-squares solution via SVD; returns (x, residual)."""
    A = mpmath.matrix(A)
    m, n = A.rows, A.cols
    U, S, V = mpmath.svd_c(A, full_matrices=False)
    smax = max(S[i] for i in range(len(S)))
    x = [mpmath.mpc(0)] * n
    for i in range(len(S)):
        if S[i] > tol * smax:
            coef = sum(mpmath.conj(U[k, i]) * rhs[k] for k in range(m)) / S[i]
            for j in range(n):
                x[j] += mpmath.conj(V[i, j]) * coef
    res = max(abs(sum(A[i, j] * x[j] for j in range(n)) - rhs[i]) for i in range(m))
    return x, res


def _normalized(v):
    n = mpmath.sqrt(sum(abs(c) ** 2 for c in v))
    return [c / n for c in v]


def tangent_direction(bond: Bond, base, platform, gamma, legs2=None, tol=None):
    """c1: a tangent vector of X at the bond inside the hyperplanes, not parallel
    to the bond.  With legs2 given the full spherical forms are used."""
    tol = tol or mpmath.mpf(2) ** (-mpmath.mp.prec // 2)
    T = tangent_rows(bond, gamma, conic_deriv)
    forms = [spherical_form([gamma * c for c in p], P, None if legs2 is None else legs2[i])
             for i, (P, p) in enumerate(zip(base.points, platform.points))]
    eta = [[apply_form(f, t) for t in T] for f in forms]
    ker, _ = mp_kernel(eta, tol)
    c0 = _normalized(bond.point(gamma).vector())
    vecs = [[sum(k[j] * T[j][c] for j in range(7)) for c in range(17)] for k in ker]
    if len(vecs) < 2:
        return None, eta
    # remove the bond direction and keep the largest remainder
    best = None
    for v in vecs:
        proj = sum(mpmath.conj(a) * b for a, b in zip(c0, v))
        rem = [b - proj * a for a, b in zip(c0, v)]
        n = mpmath.sqrt(sum(abs(c) ** 2 for c in rem))
        if best is None or n > best[0]:
            best = (n, rem)
    return best[1], eta


@dataclass
class BondJet:
    coeffs: list  # coefficient of d_i^2 in the solvability condition
    const: object
    h2: object
    jet_residual: object


def bond_jet_condition(bond: Bond, base, platform, gamma, quadrics, tol) -> BondJet:
    """Affine condition sum_i a_i d_i^2 + b = 0 for a 2-jet through the bond."""
    c0 = bond.point(gamma).vector()
    c1, eta = tangent_direction(bond, base, platform, gamma, tol=tol)
    if c1 is None:
        raise LiaisonError("Tang2 fails at this bond (tangent intersection is a point)")
    J = jacobian(quadrics, c0)
    rhs = [-q(c1) for q in quadrics]
    c2, res = _pinv_solve(J, rhs, tol)
    etaT = [[eta[i][j] for i in range(6)] for j in range(7)]
    ys, _ = mp_kernel(etaT, tol)
    if len(ys) != 1:
        raise LiaisonError(f"left kernel of eta has dimension {len(ys)}, expected 1")
    y = ys[0]
    h2 = c2[0]
    coeffs, const = [], mpmath.mpc(0)
    for i, (P, p) in enumerate(zip(base.points, platform.points)):
        gp = [gamma * c for c in p]
        pseudo = apply_form(spherical_form(gp, P), c2)
        const += y[i] * (pseudo + h2 * (sum(c * c for c in gp) + sum(c * c for c in P)))
        coeffs.append(-y[i] * h2)
    scale = max(abs(c) for c in coeffs + [const])
    return BondJet([c / scale for c in coeffs], const / scale, h2, res)


@dataclass
class Tang3Result:
    rows: list  # complex (coeffs, const) per bond
    singular_values: list
    dimension: int
    pivots: tuple  # unknowns (0-based) solved for
    relations: dict  # pivot index -> (coeffs over free unknowns as {idx: Fraction}, const)
    free: tuple
    verified: bool
    verify_residual: object

    def offset_and_basis(self):
        """A point of the subspace and a basis of its direction space."""
        offset = [Fraction(0)] * 6
        for p, (_, c) in self.relations.items():
            offset[p] = c
        basis = []
        for f in self.free:
            v = [Fraction(0)] * 6
            v[f] = Fraction(1)
            for p, (cs, _) in self.relations.items():
                v[p] = cs.get(f, Fraction(0))
            basis.append(v)
        return offset, basis

    def contains(self, legs2) -> bool:
        legs2 = [rat(d) for d in legs2]
        for p, (cs, c) in self.relations.items():
            if legs2[p] != c + sum(cs[f] * legs2[f] for f in cs):
                return False
        return True

    def complete(self, free_values) -> list[Fraction]:
        """Fill the pivot legs from values of the free legs."""
        legs = [None] * 6
        for f, v in zip(self.free, free_values):
            legs[f] = rat(v)
        for p, (cs, c) in self.relations.items():
            legs[p] = c + sum(cs[f] * legs[f] for f in cs)
        return legs


def _jet_job(args):
    bond, base, platform, gamma, precision = args
    with mpmath.workprec(precision):
        tol = mpmath.mpf(2) ** (-precision // 2)
        g = mpmath.mpf(gamma.numerator) / gamma.denominator
        return bond_jet_condition(bond, base, platform, g, x_defining_quadrics(), tol)


def _jet_rows(base, platform, gamma, bonds, precision, workers=1):
    return _pmap(_jet_job, [(b, base, platform, gamma, precision) for b in bonds], workers)


def _real_system(jets):
    R = []
    for j in jets:
        row = list(j.coeffs) + [j.const]
        R.append([mpmath.re(c) for c in row])
        R.append([mpmath.im(c) for c in row])
    return R


def tang3_solve(base: SixTuple, platform: SixTuple, gamma, precision: int = 256,
                den_bound: int = 10**12, bonds: Sequence[Bond] | None = None,
                verify: bool = True, workers: int = 1) -> Tang3Result:
    gamma = rat(gamma)
    bonds = bonds if bonds is not None else compute_bonds(base, platform, precision=precision)
    jets = _jet_rows(base, platform, gamma, bonds, precision, workers)
    with mpmath.workprec(precision):
        tol = mpmath.mpf(2) ** (-precision // 2)
        R = _real_system(jets)
        S, V = mp_svd([r[:6] for r in R])
        sv = sorted((S[i] for i in range(6)), reverse=True)
        rank = sum(1 for s in sv if s > tol * sv[0])
        Sf, Vf = mp_svd(R)
        svf = sorted((Sf[i] for i in range(7)), reverse=True)
        rank_aug = sum(1 for s in svf if s > tol * svf[0])
        if rank_aug > rank:
            raise LiaisonError("no Tang3 legs exist (inconsistent system)")
        # row space of the augmented system
        order = sorted(range(7), key=lambda i: -Sf[i])
        rows = [[Vf[i, j] for j in range(7)] for i in order[:rank]]
        pivots = _choose_pivots(rows, rank)
        Bm = mpmath.matrix([[r[j] for j in pivots] for r in rows])
        full = (Bm ** -1) * mpmath.matrix(rows)
        free = tuple(j for j in range(6) if j not in pivots)
        relations = {}
        for k, p in enumerate(pivots):
            cs = {}
            for f in free:
                q = rational_reconstruct(-full[k, f], den_bound, precision - 48)
                if q is None:
                    raise LiaisonError("Tang3 coefficient not recognized as a rational")
                cs[f] = q
            c = rational_reconstruct(-full[k, 6], den_bound, precision - 48)
            if c is None:
                raise LiaisonError("Tang3 offset not recognized as a rational")
            relations[p] = (cs, c)
    result = Tang3Result(jets, sv, 6 - rank, tuple(pivots), relations, free, False, None)
    if verify:
        hi = 2 * precision
        hj = _jet_rows(base, platform, gamma, compute_bonds(base, platform, precision=hi), hi, workers)
        resid = _subspace_residual(result, hj, hi)
        result.verified = resid < mpmath.mpf(2) ** (56 - precision)
        result.verify_residual = resid
    return result


def _choose_pivots(rows, rank):
    """Pivot unknowns for the exact relations: the last unknowns if possible."""
    best, best_det = None, mpmath.mpf(0)
    combos = list(itertools.combinations(range(6), rank))[::-1]
    dets = []
    for c in combos:
        d = abs(mp_det([[r[j] for j in c] for r in rows])) if rank else mpmath.mpf(1)
        dets.append(d)
        if d > best_det:
            best, best_det = c, d
    for c, d in zip(combos, dets):
        if d > best_det / 1000:
            return list(c)
    return list(best)


def _subspace_residual(res: Tang3Result, jets, precision):
    offset, basis = res.offset_and_basis()
    with mpmath.workprec(precision):
        worst = mpmath.mpf(0)
        for j in jets:
            val = sum(c * (mpmath.mpf(o.numerator) / o.denominator) for c, o in zip(j.coeffs, offset)) + j.const
            worst = max(worst, abs(val))
            for v in basis:
                worst = max(worst, abs(sum(c * (mpmath.mpf(x.numerator) / x.denominator)
                                           for c, x in zip(j.coeffs, v))))
        return worst


# ------------------------------------------------------------- certificate


@dataclass
class Certificate:
    issued: bool
    bonds: int
    tang2_ok: list
    tang3_residuals: list
    failing_bond: int | None
    intersection_count: int
    bound: int = 40
    motion_degree: int | None = None
    notes: list = field(default_factory=list)

    @property
    def summary(self) -> str:
        if not self.issued:
            return f"refused at bond {self.failing_bond}"
        return f"{self.bonds} bonds x multiplicity 3 = {self.intersection_count} > {self.bound}"


def movability_certificate(hexapod: Hexapod, precision: int = 256, bonds=None,
                           with_motion: bool = False) -> Certificate:
    if hexapod.legs2 is None:
        raise ValueError("certificate needs squared leg lengths")
    base, plat, gamma = hexapod.base, hexapod.platform, hexapod.gamma
    bonds = bonds if bonds is not None else compute_bonds(base, plat, precision=precision)
    quadrics = x_defining_quadrics()
    ok2, res3 = [], []
    failing = None
    with mpmath.workprec(precision):
        tol = mpmath.mpf(2) ** (-precision // 2)
        accept = mpmath.mpf(2) ** (-precision // 3)
        g = mpmath.mpf(gamma.numerator) / gamma.denominator
        legs = [mpmath.mpf(d.numerator) / d.denominator for d in hexapod.legs2]
        for k, b in enumerate(bonds):
            pr = max(abs(x) for x in pseudo_residuals(b, base, plat, g))
            eta = eta_matrix(b, base, plat, g)
            S, _ = mp_svd(eta)
            svals = sorted((S[i] for i in range(7)), reverse=True)
            t2 = svals[5] <= tol * svals[0] and pr <= accept
            ok2.append(bool(t2))
            if not t2:
                failing = k
                res3.append(None)
                break
            jet = bond_jet_condition(b, base, plat, g, quadrics, tol)
            val = abs(sum(c * d for c, d in zip(jet.coeffs, legs)) + jet.const)
            res3.append(val)
            if val > accept or jet.jet_residual > accept:
                failing = k
                break
    issued = failing is None and len(bonds) == 14
    notes = []
    if len(bonds) != 14:
        notes.append(f"{len(bonds)} bonds instead of 14")
    cert = Certificate(issued, len(bonds), ok2, res3, failing, 3 * len(bonds), 40, None, notes)
    if with_motion and issued:
        from .study import motion_curve

        curve = motion_curve(base, plat.scaled(gamma), hexapod.legs2)
        cert.motion_degree = curve.j_degree
    return cert

"""Forward kinematics in Study parameters and extraction of self-motions.

A pose is a point (e0:e1:e2:e3:f0:f1:f2:f3) on the Study quadric Psi = 0 with
N = e0^2+e1^2+e2^2+e3^2 != 0.  Points are row vectors and move as
x -> x R + t, with R and t the usual quadratic expressions in e and f
divided by N.
"""
from __future__ import annotations

import csv
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .exactalg import (
    det_bareiss,
    mpoly_deg_in,
    mpoly_gcd_many,
    mpoly_primitive,
    mpoly_total_degree,
    poly_ring,
    rat,
    rat_kernel,
    rat_rank,
    rat_solve,
    to_fmpq,
)
from .moebius import SixTuple

STUDY = poly_ring(("e0", "e1", "e2", "e3", "f0", "f1", "f2", "f3"))
E0, E1, E2, E3, F0, F1, F2, F3 = STUDY.gens()
EVARS = (E0, E1, E2, E3)
FVARS = (F0, F1, F2, F3)
N_FORM = E0**2 + E1**2 + E2**2 + E3**2
PSI = E0 * F0 + E1 * F1 + E2 * F2 + E3 * F3
ZERO = STUDY.from_dict({})


def rotation_forms() -> list[list]:
    """Homogeneous rotation matrix (N times a rotation when N != 0)."""
    e0, e1, e2, e3 = EVARS
    return [
        [e0**2 + e1**2 - e2**2 - e3**2, 2 * (e1 * e2 + e0 * e3), 2 * (e1 * e3 - e0 * e2)],
        [2 * (e1 * e2 - e0 * e3), e0**2 - e1**2 + e2**2 - e3**2, 2 * (e2 * e3 + e0 * e1)],
        [2 * (e1 * e3 + e0 * e2), 2 * (e2 * e3 - e0 * e1), e0**2 - e1**2 - e2**2 + e3**2],
    ]


def translation_forms() -> list:
    e0, e1, e2, e3 = EVARS
    f0, f1, f2, f3 = FVARS
    return [
        2 * (e0 * f1 - e1 * f0 + e2 * f3 - e3 * f2),
        2 * (e0 * f2 - e2 * f0 + e3 * f1 - e1 * f3),
        2 * (e0 * f3 - e3 * f0 + e1 * f2 - e2 * f1),
    ]


def _monomials(deg: int, n: int = 8) -> list[tuple]:
    out = []
    for c in itertools.combinations_with_replacement(range(n), deg):
        ex = [0] * n
        for i in c:
            ex[i] += 1
        out.append(tuple(ex))
    return out


_M2 = _monomials(2)
_M4 = _monomials(4)
_M4_INDEX = {m: i for i, m in enumerate(_M4)}


def _mono(ex):
    return STUDY.from_dict({ex: 1})


def _lambda_matrix():
    cols = [N_FORM * _mono(m) for m in _M2] + [PSI * _mono(m) for m in _M2]
    A = [[Fraction(0)] * len(cols) for _ in _M4]
    for j, c in enumerate(cols):
        for ex, co in c.to_dict().items():
            A[_M4_INDEX[ex]][j] = rat(co)
    return A


_LAMBDA_A = None


class StudyError(ArithmeticError):
    pass


def spherical_quadric(P, p, d2):
    """Quadric Lambda with N*Lambda = |p R~ + t~ - N P|^2 - d2 N^2 modulo Psi.

    The representative is the one whose coefficient vector is orthogonal to
    that of Psi."""
    global _LAMBDA_A
    if _LAMBDA_A is None:
        _LAMBDA_A = _lambda_matrix()
    R, t = rotation_forms(), translation_forms()
    P = [to_fmpq(rat(c)) for c in P]
    p = [to_fmpq(rat(c)) for c in p]
    v = [sum((p[r] * R[r][c] for r in range(3)), ZERO) + t[c] - P[c] * N_FORM for c in range(3)]
    Q = v[0] ** 2 + v[1] ** 2 + v[2] ** 2 - to_fmpq(rat(d2)) * N_FORM**2
    rhs = [Fraction(0)] * len(_M4)
    for ex, co in Q.to_dict().items():
        rhs[_M4_INDEX[ex]] = rat(co)
    sol = rat_solve(_LAMBDA_A, rhs)
    if sol is None:
        raise StudyError("spherical condition is not of the form N*Lambda + A*Psi")
    lam = STUDY.from_dict({m: to_fmpq(sol[j]) for j, m in enumerate(_M2) if sol[j]})
    A = STUDY.from_dict({m: to_fmpq(sol[len(_M2) + j]) for j, m in enumerate(_M2) if sol[len(_M2) + j]})
    if N_FORM * lam + A * PSI != Q:
        raise StudyError("Lambda decomposition is not exact")
    # orthogonal to Psi: the coefficients of e_i f_i sum to zero
    psi_terms = list(PSI.to_dict())
    c = sum(rat(lam.to_dict().get(m, 0)) for m in psi_terms) / 4
    return lam - to_fmpq(c) * PSI


def split_affine_f(poly) -> list:
    """Write an affine-linear polynomial in f as S f0 + T f1 + U f2 + V f3 + W."""
    parts: list[dict] = [{} for _ in range(5)]
    for ex, co in poly.to_dict().items():
        fd = ex[4:]
        if sum(fd) == 0:
            parts[4][ex] = co
        elif sum(fd) == 1:
            parts[fd.index(1)][ex[:4] + (0, 0, 0, 0)] = co
        else:
            raise StudyError("polynomial is not affine-linear in f")
    return [STUDY.from_dict(x) for x in parts]


@dataclass
class StudySystem:
    base: SixTuple
    platform: SixTuple  # already scaled by gamma
    legs2: tuple
    lam: list

    def delta(self, i: int, j: int) -> list:
        """S, T, U, V, W of Delta_ij = Lambda_i - Lambda_j (0-based indices)."""
        return split_affine_f(self.lam[i] - self.lam[j])


def build_system(base: SixTuple, platform: SixTuple, legs2: Sequence) -> StudySystem:
    legs2 = tuple(rat(d) for d in legs2)
    lam = [spherical_quadric(P, p, d) for P, p, d in zip(base.points, platform.points, legs2)]
    return StudySystem(base, platform, legs2, lam)


# Each I_k: the Delta pairs (0-based) used for Omega_k (1-based k).
I_SETS = {
    6: ((0, 1), (0, 2), (0, 3), (0, 4)),
    5: ((0, 1), (0, 2), (0, 3), (0, 5)),
    4: ((0, 1), (0, 2), (0, 4), (0, 5)),
    3: ((0, 1), (0, 3), (0, 4), (0, 5)),
    2: ((0, 2), (0, 3), (0, 4), (0, 5)),
    1: ((1, 2), (1, 3), (1, 4), (1, 5)),
}

_PSI_ROW = [E0, E1, E2, E3, ZERO]


def omega_and_g(system: StudySystem) -> tuple[dict, dict]:
    omegas, gs = {}, {}
    for k in sorted(I_SETS):
        M = [system.delta(i, j) for i, j in I_SETS[k]] + [list(_PSI_ROW)]
        om = det_bareiss(M)
        g, r = divmod(om, N_FORM)
        if not r.is_zero():
            raise StudyError(f"N does not divide Omega_{k}")
        omegas[k], gs[k] = om, g
    return omegas, gs


def alternating_sum(gs: dict):
    return sum((gs[k] if k % 2 else -gs[k] for k in range(1, 7)), ZERO)


@dataclass
class CubicResult:
    S: object
    L: dict | None
    vertex: tuple | None
    vertex_on_S: bool | None


def _linear_coeffs(L) -> list[Fraction]:
    d = L.to_dict()
    return [rat(d.get(tuple(int(j == i) for j in range(8)), 0)) for i in range(4)]


def common_cubic(gs: dict) -> CubicResult:
    G = [gs[k] for k in range(2, 7)]
    S = mpoly_gcd_many(G)
    if mpoly_total_degree(S) <= 0:
        return CubicResult(STUDY.from_dict({(0,) * 8: 1}), None, None, None)
    L = {}
    for k in range(2, 7):
        q, r = divmod(gs[k], S)
        if not r.is_zero():
            raise StudyError("gcd does not divide G_k")
        L[k] = q
    vertex, on = None, None
    if all(mpoly_total_degree(q) <= 1 and not q.is_zero() for q in L.values()):
        rows = [_linear_coeffs(q) for q in L.values()]
        ker = rat_kernel(rows, 4)
        if len(ker) == 1:
            v = ker[0]
            # scale to integer coordinates with a positive leading entry
            den = math.lcm(*(c.denominator for c in v))
            v = [c * den for c in v]
            g = math.gcd(*(int(c) for c in v))
            lead = next(c for c in v if c != 0)
            v = tuple(Fraction(int(c) // g) * (1 if lead > 0 else -1) for c in v)
            vertex = v
            on = S(*[to_fmpq(c) for c in v], 0, 0, 0, 0) == 0
    return CubicResult(S, L, vertex, on)


def f_cramer(system: StudySystem, i: int, j: int, k: int, l: int) -> tuple[list, object]:
    """f0..f3 = nums/den from Delta_ij, Delta_ik, Delta_il and Psi (0-based)."""
    rows = [system.delta(i, j), system.delta(i, k), system.delta(i, l), list(_PSI_ROW)]
    A = [r[:4] for r in rows]
    rhs = [-r[4] for r in rows]
    den = det_bareiss(A)
    if den.is_zero():
        raise StudyError("degenerate index choice")
    nums = []
    for c in range(4):
        Mc = [r[:c] + [rhs[n]] + r[c + 1:] for n, r in enumerate(A)]
        nums.append(det_bareiss(Mc))
    return nums, den


def _strip_n(p) -> tuple[object, int]:
    k = 0
    while not p.is_zero():
        q, r = divmod(p, N_FORM)
        if not r.is_zero():
            break
        p, k = q, k + 1
    return p, k


def e_octic(system: StudySystem, m: int, n: int) -> tuple[object, int]:
    """E_{m,n} (1-based m, n): numerator of Lambda_i after the Cramer solve.

    Returns the primitive numerator and the number of N factors removed."""
    rest = [x for x in range(6) if x not in (m - 1, n - 1)]
    i, j, k, l = rest
    nums, den = f_cramer(system, i, j, k, l)
    tot = ZERO
    for ex, co in system.lam[i].to_dict().items():
        fdeg = sum(ex[4:])
        term = STUDY.from_dict({ex[:4] + (0, 0, 0, 0): co})
        for v in range(4):
            for _ in range(ex[4 + v]):
                term = term * nums[v]
        for _ in range(2 - fdeg):
            term = term * den
        tot += term
    tot, removed = _strip_n(tot)
    tot = mpoly_primitive(tot)
    # deg_e0 <= 6 holds when the vertex is (1:0:0:0); other frames reach 8
    if mpoly_total_degree(tot) > 8:
        raise StudyError(f"E_{m},{n} has degree above 8")
    return tot, removed


DEFAULT_PAIRS = ((5, 6), (4, 6), (4, 5))


def motion_gcd(S, es: dict) -> tuple[dict, object]:
    """F_{m,n} = Res_e0(S, E_{m,n}) and their primitive gcd J."""
    if len(es) < 3:
        raise ValueError("at least three index choices are needed")
    fs = {}
    for mn, E in es.items():
        if mpoly_deg_in(S, 0) <= 0:
            raise StudyError("S does not involve e0")
        fs[mn] = mpoly_primitive(S.resultant(E, "e0"))
    nz = [F for F in fs.values() if not F.is_zero()]
    if not nz:
        raise StudyError("S divides E: choose different indices")
    return fs, mpoly_gcd_many(nz)


@dataclass
class MotionCurve:
    system: StudySystem
    G: dict
    S: object
    L: dict | None
    vertex: tuple | None
    E: dict = field(default_factory=dict)
    removed_n: dict = field(default_factory=dict)
    F: dict = field(default_factory=dict)
    J: object = None
    pairs: tuple = DEFAULT_PAIRS

    @property
    def j_degree(self) -> int:
        return mpoly_total_degree(self.J) if self.J is not None else 0

    @property
    def movable(self) -> bool:
        return self.j_degree > 0

    def degrees(self) -> dict:
        return {
            "G": {k: mpoly_total_degree(g) for k, g in self.G.items()},
            "S": mpoly_total_degree(self.S),
            "S_e0": mpoly_deg_in(self.S, 0),
            "E": {f"{m},{n}": mpoly_total_degree(e) for (m, n), e in self.E.items()},
            "E_e0": {f"{m},{n}": mpoly_deg_in(e, 0) for (m, n), e in self.E.items()},
            "F": {f"{m},{n}": mpoly_total_degree(f) for (m, n), f in self.F.items()},
            "J": self.j_degree,
        }


def motion_curve(base: SixTuple, platform: SixTuple, legs2, pairs=DEFAULT_PAIRS) -> MotionCurve:
    system = build_system(base, platform, legs2)
    _, gs = omega_and_g(system)
    if not alternating_sum(gs).is_zero():
        raise StudyError("alternating sum of the G_k is not zero")
    cub = common_cubic(gs)
    curve = MotionCurve(system, gs, cub.S, cub.L, cub.vertex, pairs=tuple(pairs))
    if cub.L is None:
        curve.J = STUDY.from_dict({(0,) * 8: 1})
        return curve
    # degenerate index choices are replaced by unused pairs, in lexicographic order
    spare = [pq for pq in itertools.combinations(range(1, 7), 2) if pq not in pairs]
    queue, want = list(pairs), len(pairs)
    while queue and len(curve.E) < want:
        m, n = queue.pop(0)
        try:
            E, k = e_octic(system, m, n)
        except StudyError as exc:
            if "degenerate" not in str(exc):
                raise
            if spare:
                queue.append(spare.pop(0))
            continue
        curve.E[(m, n)], curve.removed_n[(m, n)] = E, k
    curve.pairs = tuple(curve.E)
    curve.F, curve.J = motion_gcd(curve.S, curve.E)
    return curve


# ------------------------------------------------------------------ poses


@dataclass(frozen=True)
class Pose:
    e: tuple
    f: tuple

    @staticmethod
    def normalized(e, f) -> "Pose":
        n = mpmath.sqrt(sum(c * c for c in e))
        return Pose(tuple(c / n for c in e), tuple(c / n for c in f))

    @property
    def rotation(self) -> list[list]:
        e0, e1, e2, e3 = self.e
        return [
            [e0**2 + e1**2 - e2**2 - e3**2, 2 * (e1 * e2 + e0 * e3), 2 * (e1 * e3 - e0 * e2)],
            [2 * (e1 * e2 - e0 * e3), e0**2 - e1**2 + e2**2 - e3**2, 2 * (e2 * e3 + e0 * e1)],
            [2 * (e1 * e3 + e0 * e2), 2 * (e2 * e3 - e0 * e1), e0**2 - e1**2 - e2**2 + e3**2],
        ]

    @property
    def translation(self) -> tuple:
        e0, e1, e2, e3 = self.e
        f0, f1, f2, f3 = self.f
        return (2 * (e0 * f1 - e1 * f0 + e2 * f3 - e3 * f2),
                2 * (e0 * f2 - e2 * f0 + e3 * f1 - e1 * f3),
                2 * (e0 * f3 - e3 * f0 + e1 * f2 - e2 * f1))

    def apply(self, p) -> tuple:
        R, t = self.rotation, self.translation
        return tuple(sum(p[r] * R[r][c] for r in range(3)) + t[c] for c in range(3))

    def leg_residuals(self, base: SixTuple, platform: SixTuple, legs2) -> list:
        out = []
        for P, p, d in zip(base.points, platform.points, legs2):
            q = self.apply([mpmath.mpf(c.numerator) / c.denominator for c in p])
            dist = sum((q[c] - (mpmath.mpf(P[c].numerator) / P[c].denominator)) ** 2 for c in range(3))
            out.append(dist - mpmath.mpf(d.numerator) / d.denominator)
        return out


def _eval(poly, values):
    """Evaluate an mpoly at mpmath numbers (all 8 variables)."""
    total = mpmath.mpf(0)
    for ex, co in poly.to_dict().items():
        term = mpmath.mpf(int(co.p)) / int(co.q)
        for v, k in zip(values, ex):
            if k:
                term *= v ** int(k)
        total += term
    return total


def _univariate(poly, var: int, values) -> list:
    """Ascending coefficients in the variable var with the others fixed."""
    deg = mpoly_deg_in(poly, var)
    out = [mpmath.mpf(0)] * (deg + 1)
    for ex, co in poly.to_dict().items():
        term = mpmath.mpf(int(co.p)) / int(co.q)
        for j, k in enumerate(ex):
            if k and j != var:
                term *= values[j] ** int(k)
        out[int(ex[var])] += term
    return out


def _real_roots(coeffs, tol) -> list:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    if len(coeffs) < 2:
        return []
    scale = max(abs(c) for c in coeffs)
    try:
        rts = mpmath.polyroots([c / scale for c in coeffs[::-1]], maxsteps=200, extraprec=2 * mpmath.mp.prec)
    except mpmath.libmp.NoConvergence:
        return []
    if not isinstance(rts, list):
        rts = [rts]
    return [mpmath.re(r) for r in rts if abs(mpmath.im(r)) <= tol * max(1, abs(r))]


@dataclass
class MotionSample:
    poses: list
    chart: str
    slices: int
    rejected: int
    max_residual: object
    diagnostics: list = field(default_factory=list)

    def write_csv(self, path, platform: SixTuple) -> None:
        header = (["sample", "e0", "e1", "e2", "e3", "f0", "f1", "f2", "f3", "t1", "t2", "t3"]
                  + [f"p{i}_{c}" for i in range(1, 7) for c in "xyz"])
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            for k, pose in enumerate(self.poses):
                pts = [pose.apply([mpmath.mpf(c.numerator) / c.denominator for c in p]) for p in platform.points]
                row = [k] + list(pose.e) + list(pose.f) + list(pose.translation) + [c for q in pts for c in q]
                w.writerow([x if isinstance(x, int) else mpmath.nstr(x, 25) for x in row])


CHARTS = {"e3": 3, "e2": 2, "e1": 1}


def _choose_chart(J, chart: str) -> str:
    if chart != "auto":
        return chart
    for name in ("e3", "e2", "e1"):
        _, r = divmod(J, EVARS[CHARTS[name]])
        if not r.is_zero():
            return name
    return "e3"


def sample_motion(curve: MotionCurve, count: int = 200, chart: str = "auto", precision: int = 256,
                  cramer=(0, 1, 2, 3), tol_exp: int = -20) -> MotionSample:
    """Real poses of the self-motion, one slice per value of the sweep variable.

    In the chart e_c = 1 the sweep variable runs over tan(theta) for equally
    spaced theta, the free Euler parameter comes from J, e0 from S, and f from
    the Cramer solve.  Every pose is checked against all six legs."""
    if not curve.movable:
        raise StudyError("J is constant: no self-motion")
    sysm = curve.system
    chart = _choose_chart(curve.J, chart)
    fixed = CHARTS[chart]
    free = [v for v in (1, 2, 3) if v != fixed]
    solve_var, sweep_var = free[0], free[1]
    nums, den = f_cramer(sysm, *cramer)
    poses, rejected, worst = [], 0, mpmath.mpf(0)
    diag = []
    with mpmath.workprec(precision):
        tol = mpmath.mpf(2) ** (-precision // 2)
        accept = mpmath.mpf(10) ** tol_exp
        for k in range(count):
            theta = -mpmath.pi / 2 + mpmath.pi * (k + mpmath.mpf(1) / 2) / count
            vals = [mpmath.mpf(0)] * 8
            vals[fixed] = mpmath.mpf(1)
            vals[sweep_var] = mpmath.tan(theta)
            for x in _real_roots(_univariate(curve.J, solve_var, vals), tol):
                vals[solve_var] = x
                e0s = _real_roots(_univariate(curve.S, 0, vals), tol)
                best = None
                for e0 in e0s:
                    vals[0] = e0
                    # the e0 root shared with the octics
                    score = sum(abs(_eval(E, vals)) / _norm1(E, vals) for E in curve.E.values())
                    if best is None or score < best[0]:
                        best = (score, e0)
                if best is None:
                    continue
                vals[0] = best[1]
                d = _eval(den, vals)
                if d == 0:
                    rejected += 1
                    continue
                f = [_eval(nm, vals) / d for nm in nums]
                pose = Pose.normalized(vals[:4], f)
                res = max(abs(r) for r in pose.leg_residuals(sysm.base, sysm.platform, sysm.legs2))
                if res < accept:
                    poses.append(pose)
                    worst = max(worst, res)
                else:
                    rejected += 1
        if not poses:
            diag.append(f"no real branch found in chart {chart}=1")
    return MotionSample(poses, chart, count, rejected, worst, diag)


def _norm1(poly, vals):
    s = mpmath.mpf(0)
    for ex, co in poly.to_dict().items():
        t = abs(mpmath.mpf(int(co.p)) / int(co.q))
        for v, k in zip(vals, ex):
            if k:
                t *= abs(v) ** int(k)
        s += t
    return s or mpmath.mpf(1)


# ----------------------------------------------------------- observations


def rotation_of(e) -> list[list[Fraction]]:
    """Exact rotation for an Euler parameter vector, divided by N."""
    e0, e1, e2, e3 = (rat(c) for c in e)
    n = e0**2 + e1**2 + e2**2 + e3**2
    R = [
        [e0**2 + e1**2 - e2**2 - e3**2, 2 * (e1 * e2 + e0 * e3), 2 * (e1 * e3 - e0 * e2)],
        [2 * (e1 * e2 - e0 * e3), e0**2 - e1**2 + e2**2 - e3**2, 2 * (e2 * e3 + e0 * e1)],
        [2 * (e1 * e3 + e0 * e2), 2 * (e2 * e3 - e0 * e1), e0**2 - e1**2 - e2**2 + e3**2],
    ]
    return [[c / n for c in r] for r in R]


def difference_rank(base: SixTuple, platform: SixTuple, e) -> int:
    """Rank of (P_i - P_1) - (p_i R - p_1 R), i = 2..6, for the orientation e."""
    R = rotation_of(e)

    def rot(p):
        return [sum(p[r] * R[r][c] for r in range(3)) for c in range(3)]

    P, p = base.points, [rot(q) for q in platform.points]
    rows = [[(P[i][c] - P[0][c]) - (p[i][c] - p[0][c]) for c in range(3)] for i in range(1, 6)]
    return rat_rank(rows)


def projectivity(base: SixTuple, platform: SixTuple) -> list[list[Fraction]] | None:
    """Regular 4x4 matrix T with T (P_i, 1) ~ (p_i, 1) for all i, or None."""
    # unknowns: 16 entries of T then 6 scalars lambda_i
    rows = []
    for i, (P, p) in enumerate(zip(base.points, platform.points)):
        Ph = list(P) + [Fraction(1)]
        ph = list(p) + [Fraction(1)]
        for r in range(4):
            row = [Fraction(0)] * 22
            for c in range(4):
                row[4 * r + c] = Ph[c]
            row[16 + i] = -ph[r]
            rows.append(row)
    ker = rat_kernel(rows, 22)
    if len(ker) != 1:
        return None
    T = [[ker[0][4 * r + c] for c in range(4)] for r in range(4)]
    if rat_rank(T) < 4 or any(x == 0 for x in ker[0][16:]):
        return None
    return T


@dataclass
class ObservationReport:
    vertex_common: bool
    vertex_on_cubic: bool
    vertex_leg_independent: bool | None
    difference_rank: int | None
    projectivity: bool
    vertex: tuple | None = None
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> dict:
        return {
            "I": self.vertex_common and self.vertex_on_cubic,
            "II": bool(self.vertex_leg_independent),
            "III": self.difference_rank == 2,
            "V": self.projectivity,
        }


def observation_checks(curve: MotionCurve, alt_legs2=None) -> ObservationReport:
    sysm = curve.system
    notes = []
    V = curve.vertex
    common = V is not None
    on = False
    if common:
        on = curve.S(*[to_fmpq(c) for c in V], 0, 0, 0, 0) == 0
    indep = None
    if alt_legs2 is not None and common:
        _, gs = omega_and_g(build_system(sysm.base, sysm.platform, alt_legs2))
        cub = common_cubic(gs)
        indep = cub.vertex is not None and _same_point(cub.vertex, V)
    rank = difference_rank(sysm.base, sysm.platform, V) if common and any(V) else None
    if rank is None:
        notes.append("no vertex: rank check skipped")
    T = projectivity(sysm.base, sysm.platform)
    return ObservationReport(common, on, indep, rank, T is not None, V, notes)


def _same_point(a, b) -> bool:
    return all(a[i] * b[j] == a[j] * b[i] for i in range(4) for j in range(4))

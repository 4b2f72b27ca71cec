"""The compactification X of SE(3) in P^16 and bonds on its boundary.

Coordinates are (h : M : x : y : r) with M a 3x3 matrix, flattened row-major
into a 17-vector.  A direct isometry p -> R p + tau embeds as
(1, R, -R^T tau, tau, <tau, tau>).  Bonds are points with h = 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Callable, Sequence

import flint
import mpmath

from .exactalg import poly_ring, rat

H, R_ = 0, 16


def MI(a: int, b: int) -> int:
    return 1 + 3 * a + b


def XI(a: int) -> int:
    return 10 + a


def YI(a: int) -> int:
    return 13 + a


NAMES = ("h",) + tuple(f"m{a + 1}{b + 1}" for a in range(3) for b in range(3)) + \
    ("x1", "x2", "x3", "y1", "y2", "y3", "r")


@dataclass(frozen=True)
class ConformalPoint:
    h: object
    M: tuple  # 3x3 nested tuples
    x: tuple
    y: tuple
    r: object

    def vector(self) -> list:
        return [self.h] + [self.M[a][b] for a in range(3) for b in range(3)] + \
            list(self.x) + list(self.y) + [self.r]

    @staticmethod
    def from_vector(z: Sequence) -> "ConformalPoint":
        z = list(z)
        if len(z) != 17:
            raise ValueError("a point of P^16 has 17 coordinates")
        M = tuple(tuple(z[MI(a, b)] for b in range(3)) for a in range(3))
        return ConformalPoint(z[0], M, tuple(z[10:13]), tuple(z[13:16]), z[16])


def _is_exact(v) -> bool:
    return isinstance(v, (int, Fraction))


def embed_isometry(R, tau, tol=None) -> ConformalPoint:
    R = [[rat(c) if _is_exact(c) else c for c in row] for row in R]
    tau = [rat(c) if _is_exact(c) else c for c in tau]
    exact = all(_is_exact(c) for row in R for c in row)
    RRt = [[sum(R[a][k] * R[b][k] for k in range(3)) for b in range(3)] for a in range(3)]
    det = (R[0][0] * (R[1][1] * R[2][2] - R[1][2] * R[2][1])
           - R[0][1] * (R[1][0] * R[2][2] - R[1][2] * R[2][0])
           + R[0][2] * (R[1][0] * R[2][1] - R[1][1] * R[2][0]))
    if exact:
        ok = all(RRt[a][b] == (a == b) for a in range(3) for b in range(3)) and det == 1
    else:
        tol = tol if tol is not None else mpmath.mpf(2) ** (-mpmath.mp.prec // 2)
        ok = all(abs(RRt[a][b] - (a == b)) <= tol for a in range(3) for b in range(3)) \
            and abs(det - 1) <= tol
    if not ok:
        raise ValueError("not a rotation matrix")
    x = tuple(-sum(R[k][a] * tau[k] for k in range(3)) for a in range(3))
    return ConformalPoint(1, tuple(tuple(r) for r in R), x, tuple(tau),
                          sum(t * t for t in tau))


def quaternion_rotation(e) -> list[list]:
    """Rotation matrix of the unit quaternion e/|e| (acting on column vectors)."""
    e0, e1, e2, e3 = e
    n = e0 * e0 + e1 * e1 + e2 * e2 + e3 * e3
    return [
        [(e0 * e0 + e1 * e1 - e2 * e2 - e3 * e3) / n, 2 * (e1 * e2 - e0 * e3) / n, 2 * (e1 * e3 + e0 * e2) / n],
        [2 * (e1 * e2 + e0 * e3) / n, (e0 * e0 - e1 * e1 + e2 * e2 - e3 * e3) / n, 2 * (e2 * e3 - e0 * e1) / n],
        [2 * (e1 * e3 - e0 * e2) / n, 2 * (e2 * e3 + e0 * e1) / n, (e0 * e0 - e1 * e1 - e2 * e2 + e3 * e3) / n],
    ]


def euler_project(point: ConformalPoint):
    """Euler parameters (e0 : e1 : e2 : e3) of the rotation M/h, or None if h = 0."""
    if point.h == 0:
        return None
    R = [[point.M[a][b] / point.h for b in range(3)] for a in range(3)]
    tr = R[0][0] + R[1][1] + R[2][2]
    # each of these is 4 e_k^2 (times the norm); pick the largest to divide by
    cands = [1 + tr, 1 + R[0][0] - R[1][1] - R[2][2], 1 - R[0][0] + R[1][1] - R[2][2],
             1 - R[0][0] - R[1][1] + R[2][2]]
    k = max(range(4), key=lambda i: abs(cands[i]))
    if k == 0:
        e = [cands[0], R[2][1] - R[1][2], R[0][2] - R[2][0], R[1][0] - R[0][1]]
    elif k == 1:
        e = [R[2][1] - R[1][2], cands[1], R[0][1] + R[1][0], R[0][2] + R[2][0]]
    elif k == 2:
        e = [R[0][2] - R[2][0], R[0][1] + R[1][0], cands[2], R[1][2] + R[2][1]]
    else:
        e = [R[1][0] - R[0][1], R[0][2] + R[2][0], R[1][2] + R[2][1], cands[3]]
    return tuple(e)


# ------------------------------------------------------------ quadric forms


@dataclass(frozen=True)
class QuadForm:
    """sum of c * z_i * z_j over terms {(i, j): c} with i <= j."""

    name: str
    terms: tuple  # ((i, j, c), ...)

    def __call__(self, z):
        return sum(c * z[i] * z[j] for i, j, c in self.terms)

    def gradient(self, z) -> list:
        g = [0] * 17
        for i, j, c in self.terms:
            g[i] = g[i] + c * z[j]
            g[j] = g[j] + c * z[i]
        return g

    def polar(self, z, w):
        """Symmetric bilinear form with polar(z, z) = Q(z)."""
        return sum(c * (z[i] * w[j] + z[j] * w[i]) for i, j, c in self.terms) / 2


_CTX = poly_ring(NAMES)
_G = _CTX.gens()


def _sym():
    h = _G[0]
    M = [[_G[MI(a, b)] for b in range(3)] for a in range(3)]
    x = [_G[XI(a)] for a in range(3)]
    y = [_G[YI(a)] for a in range(3)]
    return h, M, x, y, _G[R_]


def _to_quad(name: str, p) -> QuadForm:
    terms = []
    for e, c in p.to_dict().items():
        idx = [k for k, m in enumerate(e) for _ in range(m)]
        if len(idx) != 2:
            raise ValueError(f"{name} is not quadratic")
        terms.append((idx[0], idx[1], rat(c)))
    terms.sort()
    return QuadForm(name, tuple(terms))


def _cross(a, b):
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


@lru_cache(maxsize=None)
def x_defining_quadrics(extra: bool = True) -> tuple[QuadForm, ...]:
    """Quadrics vanishing on X.

    The base list reduces at h = 0 to the boundary system.  With extra=True
    18 more quadrics (cross-product identities of isometries) are appended;
    they make the Jacobian rank 10 at bonds, i.e. codimension of X.
    """
    h, M, x, y, r = _sym()
    out = []
    for a in range(3):
        for b in range(a, 3):
            e = sum(M[a][k] * M[b][k] for k in range(3)) - (h * h if a == b else 0)
            out.append((f"MMt{a + 1}{b + 1}", e))
    for a in range(3):
        for b in range(a, 3):
            e = sum(M[k][a] * M[k][b] for k in range(3)) - (h * h if a == b else 0)
            out.append((f"MtM{a + 1}{b + 1}", e))
    for a in range(3):
        for b in range(3):
            # adj(M)[a][b] is the (b, a) cofactor
            r1 = [k for k in range(3) if k != b]
            c1 = [k for k in range(3) if k != a]
            cof = M[r1[0]][c1[0]] * M[r1[1]][c1[1]] - M[r1[0]][c1[1]] * M[r1[1]][c1[0]]
            if (a + b) % 2:
                cof = -cof
            out.append((f"adj{a + 1}{b + 1}", cof - h * M[b][a]))
    for a in range(3):
        out.append((f"hx+Mty{a + 1}", h * x[a] + sum(M[k][a] * y[k] for k in range(3))))
    for a in range(3):
        out.append((f"Mx+hy{a + 1}", sum(M[a][k] * x[k] for k in range(3)) + h * y[a]))
    out.append(("hr-xx", h * r - sum(c * c for c in x)))
    out.append(("hr-yy", h * r - sum(c * c for c in y)))
    if extra:
        for j in range(3):
            ej = [1 if k == j else 0 for k in range(3)]
            col = [M[k][j] for k in range(3)]
            xe = _cross(x, ej)
            v = [a + b for a, b in zip(_cross(y, col), [sum(M[a][k] * xe[k] for k in range(3)) for a in range(3)])]
            for a in range(3):
                out.append((f"yxM{j + 1}{a + 1}", v[a]))
        for j in range(3):
            ej = [1 if k == j else 0 for k in range(3)]
            row = [M[j][k] for k in range(3)]
            ye = _cross(y, ej)
            v = [a + b for a, b in zip(_cross(x, row), [sum(M[k][a] * ye[k] for k in range(3)) for a in range(3)])]
            for a in range(3):
                out.append((f"xxMt{j + 1}{a + 1}", v[a]))
    return tuple(_to_quad(n, p) for n, p in out if not p.is_zero())


def boundary_reduction(quadrics: Sequence[QuadForm]) -> list[QuadForm]:
    """Restriction of each quadric to h = 0 (terms with h dropped)."""
    out = []
    for q in quadrics:
        terms = tuple(t for t in q.terms if t[0] != H and t[1] != H)
        out.append(QuadForm(q.name, terms))
    return out


def boundary_system() -> list[QuadForm]:
    """M M^T = M^T M = 0, M^T y = M x = 0, <x,x> = <y,y> = 0 on h = 0."""
    _, M, x, y, _ = _sym()
    out = []
    for a in range(3):
        for b in range(a, 3):
            out.append((f"MMt{a + 1}{b + 1}", sum(M[a][k] * M[b][k] for k in range(3))))
    for a in range(3):
        for b in range(a, 3):
            out.append((f"MtM{a + 1}{b + 1}", sum(M[k][a] * M[k][b] for k in range(3))))
    for a in range(3):
        out.append((f"Mty{a + 1}", sum(M[k][a] * y[k] for k in range(3))))
    for a in range(3):
        out.append((f"Mx{a + 1}", sum(M[a][k] * x[k] for k in range(3))))
    out.append(("xx", sum(c * c for c in x)))
    out.append(("yy", sum(c * c for c in y)))
    return [_to_quad(n, p) for n, p in out]


# ------------------------------------------------------- spherical forms


def spherical_form(p, P, d2=None) -> list:
    """Coefficient vector of r - 2<Mp,P> - 2<P,y> - 2<p,x> + h(|p|^2+|P|^2-d^2).

    With d2 = None the h-coefficient is 0 (pseudo-spherical form)."""
    v = [0] * 17
    if d2 is not None:
        v[H] = sum(c * c for c in p) + sum(c * c for c in P) - d2
    for a in range(3):
        for b in range(3):
            v[MI(a, b)] = -2 * P[a] * p[b]
        v[XI(a)] = -2 * p[a]
        v[YI(a)] = -2 * P[a]
    v[R_] = 1
    return v


def apply_form(form: Sequence, z: Sequence):
    return sum(f * c for f, c in zip(form, z) if f != 0)


# --------------------------------------------------------------- bonds


@dataclass
class Bond:
    u: object  # base direction parameter (w = c(u))
    s: object  # platform direction parameter (v = c(s))
    w: tuple
    v: tuple
    omega_const: tuple  # (alpha, lambda, mu, r) at gamma = 1 before scaling
    kernel_gamma: tuple  # (a, mu, l, r) with a = gamma*alpha, l = gamma*lambda
    rank: int

    def omega(self, gamma):
        a, mu, l, r = self.kernel_gamma
        return (a / gamma, l / gamma, mu, r)

    def point(self, gamma) -> ConformalPoint:
        """gamma times the bond: (0, a w v^T, l v, gamma mu w, gamma r)."""
        a, mu, l, r = self.kernel_gamma
        M = tuple(tuple(a * self.w[i] * self.v[j] for j in range(3)) for i in range(3))
        return ConformalPoint(0, M, tuple(l * c for c in self.v),
                              tuple(gamma * mu * c for c in self.w), gamma * r)


def n_matrix(base, platform, w, v, gamma=1) -> list[list]:
    """Rows (W_i V_i, W_i, V_i, 1) with W_i = P_i.w and V_i = gamma p_i.v."""
    rows = []
    for P, p in zip(base, platform):
        W = sum(a * b for a, b in zip(P, w))
        V = gamma * sum(a * b for a, b in zip(p, v))
        rows.append([W * V, W, V, 1])
    return rows


class BondRankError(ValueError):
    pass


def bond_solve(base, platform, u, s, conic_point: Callable, precision: int = 256) -> Bond:
    """Kernel of the pseudo-spherical system at a matched direction pair.

    With gamma left symbolic the unscaled N-matrix gives (a, mu, l, r) and the
    bond for a given gamma is alpha = a/gamma, lambda = l/gamma."""
    from .exactalg import mp_kernel

    with mpmath.workprec(precision):
        w = tuple(mpmath.mpc(c) for c in conic_point(u))
        v = tuple(mpmath.mpc(c) for c in conic_point(s))
        N = n_matrix(base.points, platform.points, w, v)
        # unknowns (-2a, -2mu, -2l, r)
        vecs, sv = mp_kernel(N, mpmath.mpf(2) ** (-precision // 2))
        rank = 4 - len(vecs)
        if rank <= 2:
            raise BondRankError(f"rank of N is {rank}: the planarity condition is violated")
        if rank == 4:
            raise BondRankError("N has full rank: not a matched direction")
        k = vecs[0]
        a, mu, l, r = -k[0] / 2, -k[1] / 2, -k[2] / 2, k[3]
        big = max((a, mu, l, r), key=abs)
        a, mu, l, r = (c / big for c in (a, mu, l, r))
        return Bond(u, s, w, v, (a, l, mu, r), (a, mu, l, r), rank)


def pseudo_residuals(bond: Bond, base, platform, gamma) -> list:
    z = bond.point(gamma).vector()
    out = []
    for P, p in zip(base.points, platform.points):
        f = spherical_form([gamma * c for c in p], P)
        out.append(apply_form(f, z))
    return out


def tangent_rows(bond: Bond, gamma, conic_deriv: Callable) -> list[list]:
    """Seven vectors spanning the tangent space of the cone over X at the bond.

    Rows are scaled by gamma where that keeps all entries polynomial in gamma.
    """
    a, mu, l, r = bond.kernel_gamma
    w, v = bond.w, bond.v
    wp = conic_deriv(bond.u)
    vp = conic_deriv(bond.s)

    def row(M=None, x=None, y=None, rr=0):
        z = [0] * 17
        if M is not None:
            for i in range(3):
                for j in range(3):
                    z[MI(i, j)] = M[i][j]
        if x is not None:
            for i in range(3):
                z[XI(i)] = x[i]
        if y is not None:
            for i in range(3):
                z[YI(i)] = y[i]
        z[R_] = rr
        return z

    outer = lambda p, q: [[p[i] * q[j] for j in range(3)] for i in range(3)]  # noqa: E731
    sc = lambda c, p: [c * e for e in p]  # noqa: E731
    return [
        row(M=outer(w, v)),
        row(M=outer(sc(a, wp), v), y=sc(gamma * mu, wp)),  # gamma * (alpha w'v^T, mu w')
        row(M=outer(sc(a, w), vp), x=sc(l, vp)),  # gamma * (alpha w v'^T, lambda v')
        row(x=v),
        row(y=w),
        row(rr=1),
        row(x=vp, y=wp),
    ]


def jacobian(quadrics: Sequence[QuadForm], z) -> list[list]:
    return [q.gradient(z) for q in quadrics]

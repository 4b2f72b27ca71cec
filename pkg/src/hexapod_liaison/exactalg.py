"""Exact and high-precision arithmetic kernel.

Rationals are stdlib ``Fraction``; dense univariate and sparse multivariate
polynomials over Q are python-flint objects.  Gaussian rationals and
polynomials over Q(i) are thin layers on top of those.  Numerics use mpmath.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import flint
import mpmath
import numpy as np

Rat = Fraction


def rat(x) -> Fraction:
    """Parse an int, Fraction, fmpq or "p/q" string into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("boolean is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, flint.fmpq):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, flint.fmpz):
        return Fraction(int(x))
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty rational")
        return Fraction(s)
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact rationals; use 'p/q'")
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def rat_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def to_fmpq(q) -> flint.fmpq:
    q = rat(q)
    return flint.fmpq(q.numerator, q.denominator)


def mpf_to_fraction(x) -> Fraction:
    """Exact value of an mpf as a Fraction."""
    x = mpmath.mpf(x)
    if not mpmath.isfinite(x):
        raise ValueError("non-finite value")
    sign, man, exp, _ = x._mpf_
    man = -int(man) if sign else int(man)
    return Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2 ** (-exp))


# ---------------------------------------------------------------- Q(i) scalars


@dataclass(frozen=True)
class GaussRat:
    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", rat(self.re))
        object.__setattr__(self, "im", rat(self.im))

    @staticmethod
    def of(x) -> "GaussRat":
        return x if isinstance(x, GaussRat) else GaussRat(rat(x))

    def __add__(self, o):
        o = GaussRat.of(o)
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-GaussRat.of(o))

    def __rsub__(self, o):
        return GaussRat.of(o) - self

    def __mul__(self, o):
        o = GaussRat.of(o)
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conj(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussRat":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, o):
        return self * GaussRat.of(o).inverse()

    def __rtruediv__(self, o):
        return GaussRat.of(o) * self.inverse()

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def to_mpc(self) -> mpmath.mpc:
        return mpmath.mpc(mpmath.mpf(self.re.numerator) / self.re.denominator,
                          mpmath.mpf(self.im.numerator) / self.im.denominator)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        if self.im == 0:
            return rat_str(self.re)
        return f"({rat_str(self.re)})+({rat_str(self.im)})*i"


I_UNIT = GaussRat(0, 1)


# ---------------------------------------------------- univariate over Q(i)


class GPoly:
    """Univariate polynomial over Q(i), stored as re + i*im with fmpq_poly parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=None, im=None):
        self.re = re if isinstance(re, flint.fmpq_poly) else flint.fmpq_poly(re or [])
        self.im = im if isinstance(im, flint.fmpq_poly) else flint.fmpq_poly(im or [])

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> "GPoly":
        """Ascending coefficients (GaussRat or rationals)."""
        cs = [GaussRat.of(c) for c in coeffs]
        return cls([to_fmpq(c.re) for c in cs], [to_fmpq(c.im) for c in cs])

    @classmethod
    def const(cls, c) -> "GPoly":
        return cls.from_coeffs([c])

    @classmethod
    def gen(cls) -> "GPoly":
        return cls([0, 1])

    def degree(self) -> int:
        return max(self.re.degree(), self.im.degree())

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def coeff(self, k: int) -> GaussRat:
        return GaussRat(rat(self.re[k]), rat(self.im[k]))

    def coeffs(self) -> list[GaussRat]:
        return [self.coeff(k) for k in range(self.degree() + 1)]

    def lead(self) -> GaussRat:
        return self.coeff(self.degree())

    def __eq__(self, o):
        o = _as_gpoly(o)
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((str(self.re), str(self.im)))

    def __add__(self, o):
        o = _as_gpoly(o)
        return GPoly(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GPoly(-self.re, -self.im)

    def __sub__(self, o):
        o = _as_gpoly(o)
        return GPoly(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return _as_gpoly(o) - self

    def __mul__(self, o):
        o = _as_gpoly(o)
        return GPoly(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = GPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c) -> "GPoly":
        c = GaussRat.of(c)
        a, b = to_fmpq(c.re), to_fmpq(c.im)
        return GPoly(self.re * a - self.im * b, self.re * b + self.im * a)

    def conj_coeffs(self) -> "GPoly":
        return GPoly(self.re, -self.im)

    def norm(self) -> flint.fmpq_poly:
        """p * conj_coeffs(p), a polynomial over Q."""
        return self.re * self.re + self.im * self.im

    def monic(self) -> "GPoly":
        if self.is_zero():
            return self
        return self.scale(self.lead().inverse())

    def derivative(self) -> "GPoly":
        return GPoly(self.re.derivative(), self.im.derivative())

    def reverse(self, n: int) -> "GPoly":
        """t^n * p(1/t) for a formal degree n >= deg p."""
        if self.degree() > n:
            raise ValueError("formal degree below actual degree")
        cs = [self.coeff(k) if k <= self.degree() else GaussRat(0) for k in range(n + 1)]
        return GPoly.from_coeffs(cs[::-1])

    def order_at_zero(self) -> int:
        if self.is_zero():
            raise ValueError("order of the zero polynomial")
        k = 0
        while self.coeff(k).is_zero():
            k += 1
        return k

    def __divmod__(self, b):
        b = _as_gpoly(b)
        if b.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        # a = q b + r with deg r < deg b implies a*conj(b) = q*N(b) + r*conj(b),
        # and deg(r*conj(b)) < deg N(b), so q is a quotient over Q.
        bc = b.conj_coeffs()
        nb = b.norm()
        ab = self * bc
        q = GPoly(ab.re // nb, ab.im // nb)
        return q, self - q * b

    def __floordiv__(self, b):
        return divmod(self, b)[0]

    def __mod__(self, b):
        return divmod(self, b)[1]

    def exact_div(self, b) -> "GPoly":
        q, r = divmod(self, b)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def __call__(self, z):
        """Evaluate at a GaussRat (exact) or at a number (mpmath)."""
        if isinstance(z, (GaussRat, Fraction, int)):
            z = GaussRat.of(z)
            acc = GaussRat(0)
            for c in reversed(self.coeffs()):
                acc = acc * z + c
            return acc
        z = mpmath.mpc(z)
        acc = mpmath.mpc(0)
        for k in range(self.degree(), -1, -1):
            acc = acc * z + self.coeff(k).to_mpc()
        return acc

    def mp_coeffs(self) -> list:
        return [c.to_mpc() for c in self.coeffs()]

    def compose_param(self, num: "GPoly", den: "GPoly", n: int) -> "GPoly":
        """den^n * p(num/den) for a formal degree n."""
        out = GPoly()
        cs = self.coeffs()
        for k in range(n + 1):
            c = cs[k] if k < len(cs) else GaussRat(0)
            if c.is_zero():
                continue
            out = out + (num ** k) * (den ** (n - k)) * GPoly.const(c)
        return out

    def __repr__(self):
        return f"GPoly({self.re}, {self.im})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs()):
            if not c.is_zero():
                terms.append(f"{c}*t^{k}")
        return " + ".join(terms) if terms else "0"


def _as_gpoly(o) -> GPoly:
    if isinstance(o, GPoly):
        return o
    if isinstance(o, flint.fmpq_poly):
        return GPoly(o)
    return GPoly.const(o)


def gpoly_gcd(a: GPoly, b: GPoly) -> GPoly:
    a, b = _as_gpoly(a), _as_gpoly(b)
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a.monic()


def upoly_gcd(a, b):
    """Monic gcd of univariate polynomials over Q (fmpq_poly) or Q(i) (GPoly)."""
    if isinstance(a, flint.fmpq_poly) and isinstance(b, flint.fmpq_poly):
        g = a.gcd(b)
        if g.is_zero():
            return g
        return g / g.leading_coefficient()
    return gpoly_gcd(_as_gpoly(a), _as_gpoly(b))


def upoly_gcd_many(polys: Iterable):
    polys = [p for p in polys]
    if not polys:
        return GPoly()
    if all(isinstance(p, flint.fmpq_poly) for p in polys):
        return reduce(upoly_gcd, polys)
    polys = [_as_gpoly(p) for p in polys if not _as_gpoly(p).is_zero()]
    if not polys:
        return GPoly()
    # the Q(i)-gcd g divides every p, so N(g) divides gcd_Q of the norms;
    # Euclid then runs against that small real polynomial
    nq = reduce(lambda a, b: a.gcd(b), (p.norm() for p in polys))
    g = GPoly(nq).monic()
    for p in polys:
        if g.degree() <= 0:
            break
        g = gpoly_gcd(g, p % g)
    return g.monic()


def squarefree_decomposition(p) -> list[tuple[GPoly, int]]:
    """Yun's algorithm; returns [(factor, multiplicity)], factors monic."""
    p = _as_gpoly(p)
    if p.is_zero():
        raise ValueError("squarefree decomposition of zero")
    out = []
    dp = p.derivative()
    a = gpoly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    k = 1
    while b.degree() > 0:
        a = gpoly_gcd(b, d)
        if a.degree() > 0:
            out.append((a.monic(), k))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        k += 1
    return out


# ------------------------------------------------------ multivariate over Q


def poly_ring(names: Sequence[str]):
    """Multivariate ring over Q in graded lexicographic order."""
    return flint.fmpq_mpoly_ctx.get(tuple(names), "deglex")


def mpoly_content(p) -> Fraction:
    cs = [rat(c) for c in p.to_dict().values()]
    if not cs:
        return Fraction(0)
    num = reduce(math.gcd, (c.numerator for c in cs))
    den = reduce(lambda x, y: x * y // math.gcd(x, y), (c.denominator for c in cs))
    return Fraction(num, den)


def mpoly_primitive(p):
    """Integer coprime coefficients, positive leading coefficient (graded lex)."""
    if p.is_zero():
        return p
    c = mpoly_content(p)
    if rat(p.leading_coefficient()) < 0:
        c = -c
    return p / to_fmpq(c)


def mpoly_gcd(a, b):
    g = a.gcd(b)
    return mpoly_primitive(g)


def mpoly_gcd_many(polys):
    polys = list(polys)
    return mpoly_primitive(reduce(lambda x, y: x.gcd(y), polys))


def mpoly_total_degree(p) -> int:
    return -1 if p.is_zero() else int(max(sum(e) for e in p.to_dict()))


def mpoly_deg_in(p, var: int) -> int:
    return -1 if p.is_zero() else int(max(e[var] for e in p.to_dict()))


def mpoly_coeffs_in(p, var: int, ctx=None) -> list:
    """Coefficients of p as a polynomial in the variable with index var (ascending)."""
    ctx = ctx or p.context()
    n = mpoly_deg_in(p, var)
    buckets: list[dict] = [dict() for _ in range(max(n, 0) + 1)]
    for e, c in p.to_dict().items():
        k = e[var]
        e2 = tuple(0 if j == var else x for j, x in enumerate(e))
        buckets[k][e2] = c
    return [ctx.from_dict(b) if b else ctx.from_dict({}) for b in buckets]


def _zero_like(x):
    return x - x


def det_bareiss(mat: list[list]):
    """Fraction-free determinant over an integral domain with exact division.

    Entries may be fmpq_mpoly, GPoly, Fraction or GaussRat.  Exact division is
    `/` for mpolys and exact_div for GPoly.
    """
    n = len(mat)
    if n == 0:
        return 1
    a = [list(r) for r in mat]
    zero = _zero_like(a[0][0])

    def is_zero(x):
        return x.is_zero() if hasattr(x, "is_zero") else x == 0

    def div(x, y):
        if isinstance(x, GPoly):
            return x.exact_div(y)
        return x / y

    sign = 1
    prev = None
    for k in range(n - 1):
        if is_zero(a[k][k]):
            piv = next((i for i in range(k + 1, n) if not is_zero(a[i][k])), None)
            if piv is None:
                return zero
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = v if prev is None else div(v, prev)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign == 1 else -d


def sylvester_matrix(ca: Sequence, cb: Sequence) -> list[list]:
    """Sylvester matrix from ascending coefficient lists.

    Rows of a on top; column j holds the coefficient of var^j.  With this
    ordering Res(t - a, t - b) = b - a.
    """
    m, n = len(ca) - 1, len(cb) - 1
    size = m + n
    zero = _zero_like(ca[0])
    rows = []
    for k in range(n):
        rows.append([zero] * k + list(ca) + [zero] * (size - m - 1 - k))
    for k in range(m):
        rows.append([zero] * k + list(cb) + [zero] * (size - n - 1 - k))
    return rows


def _convention_sign(m: int, n: int) -> int:
    # ascending columns reverse the standard matrix and both row blocks
    return -1 if (m * n) % 2 else 1


def sylvester_resultant(a, b, var, method: str = "flint", formal: tuple[int, int] | None = None):
    """Resultant of two fmpq_mpoly in `var` (index or name).

    Sign convention: determinant of `sylvester_matrix` (a's rows on top,
    ascending columns).  `method="bareiss"` expands that determinant
    directly; `method="flint"` calls the library routine and fixes the sign.
    `formal` overrides the degrees (a vanishing leading coefficient then
    records a common root at infinity).
    """
    ctx = a.context()
    idx = var if isinstance(var, int) else ctx.names().index(var)
    m, n = mpoly_deg_in(a, idx), mpoly_deg_in(b, idx)
    if formal is not None:
        if formal[0] < m or formal[1] < n:
            raise ValueError("formal degree below actual degree")
        m, n = formal
    if m <= 0 or n <= 0:
        raise ValueError("not eliminable: degree zero in the elimination variable")
    if method == "flint":
        ma, na = mpoly_deg_in(a, idx), mpoly_deg_in(b, idx)
        if ma < m and na < n:
            return ctx.from_dict({})
        r = a.resultant(b, ctx.names()[idx]) if ma > 0 and na > 0 else None
        if ma < m:
            # first columns carry only b's leading coefficient
            lc = mpoly_coeffs_in(b, idx, ctx)[na]
            r = (lc ** (m - ma)) * (r if r is not None else a ** na)
            if ((m - ma) * na) % 2:
                r = -r
        elif na < n:
            lc = mpoly_coeffs_in(a, idx, ctx)[ma]
            r = (lc ** (n - na)) * (r if r is not None else b ** ma)
        sign = _convention_sign(m, n)
        return r if sign == 1 else -r
    ca = mpoly_coeffs_in(a, idx, ctx)
    cb = mpoly_coeffs_in(b, idx, ctx)
    zero = ctx.from_dict({})
    ca = ca + [zero] * (m + 1 - len(ca))
    cb = cb + [zero] * (n + 1 - len(cb))
    return det_bareiss(sylvester_matrix(ca, cb))


def gpoly_resultant_rows(ca: Sequence[GPoly], cb: Sequence[GPoly]) -> GPoly:
    """Resultant of two polynomials whose coefficients (in the eliminated
    variable, ascending, formal length) are GPolys in a second variable."""
    return det_bareiss(sylvester_matrix(list(ca), list(cb)))


# --------------------------------------------------------- exact linear algebra


def rat_rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    if not rows:
        return [], []
    m, n = len(rows), len(rows[0])
    M = flint.fmpq_mat(m, n, [to_fmpq(x) for r in rows for x in r])
    R, rank = M.rref()
    out = [[rat(R[i, j]) for j in range(n)] for i in range(rank)]
    pivots = [next(j for j in range(n) if out[i][j] != 0) for i in range(rank)]
    return out, pivots


def rat_kernel(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel over Q, one basis vector per free column."""
    n = ncols if ncols is not None else len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, piv = rat_rref(rows)
    free = [j for j in range(n) if j not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def rat_rank(rows) -> int:
    return len(rat_rref(rows)[1]) if rows else 0


def rat_solve(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """One solution of A x = b over Q or None if inconsistent."""
    n = len(rows[0])
    aug = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    R, piv = rat_rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(piv):
        x[p] = R[i][n]
    return x


def rat_det(rows) -> Fraction:
    n = len(rows)
    return rat(flint.fmpq_mat(n, n, [to_fmpq(x) for r in rows for x in r]).det())


# ------------------------------------------------------ high-precision numerics


class ConvergenceError(ArithmeticError):
    pass


def _newton(coeffs_desc, z, tol, maxit=200):
    for _ in range(maxit):
        p = mpmath.mpc(0)
        dp = mpmath.mpc(0)
        for c in coeffs_desc:
            dp = dp * z + p
            p = p * z + c
        if dp == 0:
            break
        step = p / dp
        z = z - step
        if abs(step) <= tol * max(1, abs(z)):
            return z, True
    return z, False


def _roots_squarefree(p: GPoly, prec: int) -> list:
    n = p.degree()
    if n <= 0:
        return []
    with mpmath.workprec(prec + 32):
        cs = [c.to_mpc() for c in p.monic().coeffs()][::-1]
        scale = max(abs(c) for c in cs)
        try:
            np_cs = [complex(c / scale) for c in cs]
            guesses = [mpmath.mpc(z) for z in np.roots(np_cs)]
            if len(guesses) != n or not all(np.isfinite(complex(g)) for g in guesses):
                raise ValueError
        except (ValueError, OverflowError, np.linalg.LinAlgError):
            guesses = None
        tol = mpmath.mpf(2) ** (-prec)
        roots = []
        ok = guesses is not None
        if ok:
            for g in guesses:
                z, conv = _newton(cs, g, tol)
                if not conv:
                    ok = False
                    break
                roots.append(z)
        if ok:
            # distinct roots must stay separated after refinement
            sep = mpmath.mpf(2) ** (-prec // 4)
            for i in range(n):
                for j in range(i):
                    if abs(roots[i] - roots[j]) <= sep * max(1, abs(roots[i])):
                        ok = False
        if not ok:
            try:
                roots = list(mpmath.polyroots(cs, maxsteps=400, extraprec=2 * prec))
            except mpmath.libmp.NoConvergence as exc:
                raise ConvergenceError("root finding did not converge; raise precision") from exc
            roots = [_newton(cs, z, tol)[0] for z in roots]
    return roots


def roots_complex(p, precision: int = 256) -> list[tuple[mpmath.mpc, int]]:
    """All complex roots with multiplicities, sorted by (re, im)."""
    p = _as_gpoly(p)
    if p.is_zero():
        raise ValueError("roots of the zero polynomial")
    out = []
    for q, k in squarefree_decomposition(p):
        for z in _roots_squarefree(q, precision):
            out.append((z, k))
    with mpmath.workprec(precision):
        bound = mpmath.mpf(2) ** (-precision // 2) * max(abs(c) for c in p.mp_coeffs())
        for z, _ in out:
            if abs(p(z)) > bound * max(1, abs(z)) ** p.degree():
                raise ConvergenceError("root residual above tolerance; raise precision")
    out.sort(key=lambda zk: (float(zk[0].real), float(zk[0].imag)))
    return out


def rational_reconstruct(x, bound: int, precision: int | None = None) -> Fraction | None:
    """Best rational approximation with denominator <= bound, if it agrees with x
    to within 2^(8 - precision); otherwise None."""
    prec = precision or mpmath.mp.prec
    with mpmath.workprec(prec + 16):
        z = mpmath.mpmathify(x)
        tol = mpmath.mpf(2) ** (8 - prec)
        if isinstance(z, mpmath.mpc):
            if abs(z.imag) > tol * max(1, abs(z.real)):
                return None
            z = z.real
        if not mpmath.isfinite(z):
            return None
        q = mpf_to_fraction(z).limit_denominator(bound)
        err = abs(z - mpmath.mpf(q.numerator) / q.denominator)
        return q if err <= tol * max(1, abs(z)) else None


def mp_svd(A):
    """Singular values and right singular vectors of an mpmath matrix."""
    A = mpmath.matrix(A)
    if A.rows < A.cols:
        A = mpmath.matrix(A.tolist() + [[0] * A.cols for _ in range(A.cols - A.rows)])
    U, S, V = mpmath.svd_c(A)
    return S, V


def mp_kernel(A, rel_tol) -> tuple[list[list], list]:
    """Numerical right kernel: vectors for singular values <= rel_tol*max."""
    A = mpmath.matrix(A)
    S, V = mp_svd(A)
    n = A.cols
    sv = [S[i] for i in range(n)]
    smax = max(sv) if sv else 0
    vecs = []
    for i in range(n):
        if sv[i] <= rel_tol * smax:
            vecs.append([mpmath.conj(V[i, j]) for j in range(n)])
    return vecs, sv


def mp_rank(A, rel_tol) -> int:
    A = mpmath.matrix(A)
    S, _ = mp_svd(A)
    sv = [S[i] for i in range(A.cols)]
    smax = max(sv) if sv else 0
    return sum(1 for s in sv if s > rel_tol * smax)


# ------------------------------------------- Q(i) through an extra variable I


def gpoly_to_mpoly(p: GPoly, ctx, var: int, ivar: int):
    """Embed a GPoly into a ring over Q with the imaginary unit as variable ivar."""
    nv = len(ctx.names())
    terms = {}
    for k, c in enumerate(p.coeffs()):
        for part, j in ((c.re, 0), (c.im, 1)):
            if part:
                e = [0] * nv
                e[var] += k
                e[ivar] += j
                terms[tuple(e)] = to_fmpq(part)
    return ctx.from_dict(terms)


def mpoly_to_gpoly(r, var: int, ivar: int) -> GPoly:
    """Reduce modulo I^2 + 1; r may only involve var and ivar."""
    re: dict[int, Fraction] = {}
    im: dict[int, Fraction] = {}
    for e, c in r.to_dict().items():
        if any(x for j, x in enumerate(e) if j not in (var, ivar)):
            raise ValueError("polynomial involves other variables")
        k = e[ivar] % 4
        tgt = re if k % 2 == 0 else im
        sgn = 1 if k in (0, 1) else -1
        tgt[e[var]] = tgt.get(e[var], Fraction(0)) + sgn * rat(c)
    n = max(list(re) + list(im) + [-1])
    return GPoly([to_fmpq(re.get(k, 0)) for k in range(n + 1)],
                 [to_fmpq(im.get(k, 0)) for k in range(n + 1)])


def mp_det(rows) -> mpmath.mpc:
    """Determinant by Gaussian elimination with partial pivoting (singular-safe)."""
    a = [[mpmath.mpmathify(x) for x in r] for r in rows]
    n = len(a)
    det = mpmath.mpf(1)
    for k in range(n):
        piv = max(range(k, n), key=lambda i: abs(a[i][k]))
        if a[piv][k] == 0:
            return mpmath.mpf(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k + 1, n):
                    a[i][j] -= f * a[k][j]
    return det

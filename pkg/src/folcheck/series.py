"""Truncated bivariate power series over Q.

A :class:`BiSeries` stores the nonzero coefficients of ``x**i * y**j`` in a
dict.  ``prec`` is the total-degree truncation order: every coefficient of a
monomial with ``i + j < prec`` is correct, nothing is stored at or above it.
``prec is None`` marks a polynomial known in full.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .cert import CertInt
from .errors import NotAUnit, NotDistinguished, NotYGeneral, Unachievable
from .exact import UPoly

DEFAULT_TRUNC = 64


def _minp(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class BiSeries:
    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs=None, prec: int | None = None):
        items = coeffs.items() if isinstance(coeffs, dict) else (coeffs or ())
        clean = {}
        for (i, j), a in items:
            if prec is not None and i + j >= prec:
                continue
            a = Fraction(a)
            if a:
                clean[(i, j)] = clean.get((i, j), 0) + a
        self.coeffs = {k: v for k, v in clean.items() if v}
        self.prec = prec

    # -- constructors --------------------------------------------------------
    @classmethod
    def const(cls, a) -> "BiSeries":
        return cls({(0, 0): a})

    @classmethod
    def x(cls) -> "BiSeries":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiSeries":
        return cls({(0, 1): 1})

    @classmethod
    def monomial(cls, i, j, a=1) -> "BiSeries":
        return cls({(i, j): a})

    @classmethod
    def zero(cls, prec=None) -> "BiSeries":
        return cls({}, prec)

    # -- basic queries -------------------------------------------------------
    @property
    def exact(self) -> bool:
        return self.prec is None

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        """True when no known coefficient is nonzero (may hide terms past prec)."""
        return not self.coeffs

    def __getitem__(self, ij) -> Fraction:
        return self.coeffs.get(ij, Fraction(0))

    def support(self) -> set:
        return set(self.coeffs)

    def const_term(self) -> Fraction:
        return self[(0, 0)]

    def ydeg(self) -> int:
        return max((j for (_, j) in self.coeffs), default=-1)

    def xdeg(self) -> int:
        return max((i for (i, _) in self.coeffs), default=-1)

    def total_degree(self) -> int:
        return max((i + j for (i, j) in self.coeffs), default=-1)

    def truncate(self, prec: int | None) -> "BiSeries":
        return BiSeries(self.coeffs, _minp(self.prec, prec))

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            other = BiSeries.const(other)
        return self.coeffs == other.coeffs and self.prec == other.prec

    def same_to(self, other: "BiSeries", prec: int | None = None) -> bool:
        """Coefficientwise equality below the common truncation order."""
        p = _minp(_minp(self.prec, other.prec), prec)
        diff = (self - other).truncate(p)
        return diff.is_zero()

    def __hash__(self):
        return hash((frozenset(self.coeffs.items()), self.prec))

    def __repr__(self):
        from .parse import format_polynomial

        tail = "" if self.prec is None else f" + O({self.prec})"
        return f"BiSeries({format_polynomial(self)}{tail})"

    # -- arithmetic ----------------------------------------------------------
    def _lift(self, other):
        return other if isinstance(other, BiSeries) else BiSeries.const(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return BiSeries(out, _minp(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        return BiSeries({k: -v for k, v in self.coeffs.items()}, self.prec)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def order_lb(self) -> int | float:
        """Lower bound for the order, exact when a known term exists."""
        if self.coeffs:
            return min(i + j for (i, j) in self.coeffs)
        return math.inf if self.prec is None else self.prec

    def __mul__(self, other):
        if not isinstance(other, BiSeries):
            c = Fraction(other)
            if not c:
                return BiSeries({}, self.prec)
            return BiSeries({k: v * c for k, v in self.coeffs.items()}, self.prec)
        prec = None
        if self.prec is not None:
            prec = self.prec + other.order_lb()
        if other.prec is not None:
            p2 = other.prec + self.order_lb()
            prec = p2 if prec is None else min(prec, p2)
        if prec == math.inf:
            prec = None
        elif prec is not None:
            prec = int(prec)
        out: dict = {}
        for (i, j), a in self.coeffs.items():
            for (k, l), b in other.coeffs.items():
                if prec is not None and i + j + k + l >= prec:
                    continue
                key = (i + k, j + l)
                out[key] = out.get(key, 0) + a * b
        return BiSeries(out, prec)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out, base = BiSeries.const(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def dx(self) -> "BiSeries":
        return BiSeries(
            {(i - 1, j): a * i for (i, j), a in self.coeffs.items() if i},
            None if self.prec is None else self.prec - 1,
        )

    def dy(self) -> "BiSeries":
        return BiSeries(
            {(i, j - 1): a * j for (i, j), a in self.coeffs.items() if j},
            None if self.prec is None else self.prec - 1,
        )

    def inverse(self, trunc: int = DEFAULT_TRUNC) -> "BiSeries":
        """Inverse of a unit, to total degree ``trunc`` (or ``prec`` if smaller)."""
        c0 = self.const_term()
        if not c0:
            raise NotAUnit("constant term is zero")
        if self.exact and len(self.coeffs) == 1:
            return BiSeries.const(1 / c0)
        prec = _minp(self.prec, trunc)
        # Newton iteration g <- g (2 - u g), doubling the precision each step
        g = BiSeries.const(1 / c0)
        k = 1
        while k < prec:
            k = min(2 * k, prec)
            u = self.truncate(k)
            # the Newton step is exact to order k even though g itself is not
            g = BiSeries(g.coeffs)
            g = (g * (2 - u * g)).truncate(k)
        return g

    def subs_x0(self) -> dict:
        """Coefficients of f(0, y) as {j: a}."""
        return {j: a for (i, j), a in self.coeffs.items() if i == 0}

    def xslice(self, j: int) -> UPoly:
        """Coefficient of y**j as a UPoly in x (known below prec - j)."""
        d = {i: a for (i, jj), a in self.coeffs.items() if jj == j}
        if not d:
            return UPoly()
        return UPoly([d.get(i, 0) for i in range(max(d) + 1)])

    def as_ypoly(self) -> list[UPoly]:
        return [self.xslice(j) for j in range(self.ydeg() + 1)]

    def evaluate(self, x, y):
        acc = Fraction(0)
        for (i, j), a in self.coeffs.items():
            acc += a * x**i * y**j
        return acc


def as_series(obj) -> BiSeries:
    if isinstance(obj, BiSeries):
        return obj
    if isinstance(obj, WPoly):
        return obj.series
    return BiSeries.const(obj)


# ---------------------------------------------------------------------------
# orders and Newton polygons


def order(f) -> CertInt:
    f = as_series(f)
    if f.coeffs:
        return CertInt(min(i + j for (i, j) in f.coeffs))
    return CertInt.infinity() if f.exact else CertInt.at_least(f.prec)


def _support_and_floor(subject):
    """Support of a series / 1-form and the least total degree that might be unknown."""
    if hasattr(subject, "foliation_support"):
        return subject.foliation_support()
    f = as_series(subject)
    return f.support(), (math.inf if f.prec is None else f.prec)


def weighted_order(subject, p: int, q: int) -> CertInt:
    """min(i*p + j*q) over the support; for a 1-form over supp(x*A) and supp(y*B)."""
    supp, floor = _support_and_floor(subject)
    unknown = math.inf if floor == math.inf else floor * min(p, q)
    best = min((i * p + j * q for (i, j) in supp), default=math.inf)
    if best < unknown:
        return CertInt(best)
    if unknown == math.inf:
        return CertInt.infinity()
    return CertInt.at_least(unknown)


@dataclass(frozen=True)
class NPolygon:
    vertices: tuple
    edges: tuple  # ((i1, j1), (i2, j2), inclination Fraction)

    def __eq__(self, other):
        return isinstance(other, NPolygon) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)


def newton_polygon_of_points(points: Iterable) -> NPolygon:
    pts = set(points)
    if not pts:
        raise ValueError("Newton polygon of an empty support")
    # lowest j for each i
    low: dict = {}
    for i, j in pts:
        if i not in low or j < low[i]:
            low[i] = j
    i0 = min(low)
    cur = (i0, low[i0])
    verts = [cur]
    edges = []
    while True:
        cand = [(i, j) for i, j in low.items() if j < cur[1] and i > cur[0]]
        if not cand:
            break
        # steepest descent; ties broken toward the far endpoint
        best = min(cand, key=lambda pt: (Fraction(pt[1] - cur[1], pt[0] - cur[0]), -pt[0]))
        edges.append((cur, best, Fraction(best[0] - cur[0], cur[1] - best[1])))
        verts.append(best)
        cur = best
    return NPolygon(tuple(verts), tuple(edges))


def newton_polygon(subject) -> NPolygon:
    supp, _ = _support_and_floor(subject)
    return newton_polygon_of_points(supp)


# ---------------------------------------------------------------------------
# linear coordinate changes


@dataclass(frozen=True)
class LinearChange:
    """x = a*X + b*Y, y = c*X + d*Y."""

    a: Fraction = Fraction(1)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    d: Fraction = Fraction(1)

    @property
    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    def inverse(self) -> "LinearChange":
        det = self.a * self.d - self.b * self.c
        return LinearChange(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def apply(self, f: BiSeries) -> BiSeries:
        """f(a X + b Y, c X + d Y)."""
        f = as_series(f)
        if self.is_identity:
            return f
        X = BiSeries({(1, 0): self.a, (0, 1): self.b})
        Y = BiSeries({(1, 0): self.c, (0, 1): self.d})
        xp = {0: BiSeries.const(1)}
        yp = {0: BiSeries.const(1)}
        out: dict = {}
        for (i, j), coef in f.coeffs.items():
            if i not in xp:
                xp[i] = _power_cached(xp, X, i)
            if j not in yp:
                yp[j] = _power_cached(yp, Y, j)
            for k, v in (xp[i] * yp[j]).coeffs.items():
                out[k] = out.get(k, 0) + coef * v
        return BiSeries(out, f.prec)

    def describe(self) -> str:
        return f"x = {self.a}*X + {self.b}*Y, y = {self.c}*X + {self.d}*Y"


def _power_cached(cache, base, k):
    top = max(cache)
    acc = cache[top]
    for e in range(top + 1, k + 1):
        acc = acc * base
        cache[e] = acc
    return cache[k]


SWAP = LinearChange(Fraction(0), Fraction(1), Fraction(1), Fraction(0))


def _initial_form_value(f: BiSeries, k: int, u, v) -> Fraction:
    return sum((a * u**i * v**j for (i, j), a in f.coeffs.items() if i + j == k), Fraction(0))


def is_y_general(f) -> bool:
    """ord f equals the y-order of f(0, y)."""
    f = as_series(f)
    o = order(f)
    if not o.exact or o.is_infinite:
        return False
    return bool(f[(0, o.value)])


def make_y_general(f) -> tuple[LinearChange, BiSeries, dict]:
    """Find an invertible rational linear change making ``f`` y-general.

    Tries the identity, the swap x <-> y, then shears x -> x + lam*y for
    lam = 1, -1, 2, -2, ...  Returns the change, the transformed series and a
    certificate (order and the nonzero y^k coefficient).
    """
    f = as_series(f)
    o = order(f)
    if not o.exact or o.is_infinite:
        raise Unachievable("order of f not certified at this truncation")
    k = o.value
    candidates = [LinearChange(), SWAP]
    for lam in range(1, k + 2):
        for s in (lam, -lam):
            candidates.append(LinearChange(Fraction(1), Fraction(s), Fraction(0), Fraction(1)))
    for L in candidates:
        # coefficient of Y^k after the change is f_k(b, d)
        val = _initial_form_value(f, k, L.b, L.d)
        if val:
            g = L.apply(f)
            return L, g, {"order": k, "y_coefficient": g[(0, k)]}
    raise Unachievable("no rational change found")  # unreachable: f_k(lam, 1) has <= k roots


# ---------------------------------------------------------------------------
# Weierstrass division


def _weight(ij, w):
    return ij[0] * w + ij[1]


def _divide_in_y(T: dict, g_in: dict, k: int) -> tuple[dict, dict]:
    """Euclidean division in y of a weighted-homogeneous T by g_in (deg_y = k)."""
    lead = g_in[(0, k)]
    rem = dict(T)
    q: dict = {}
    while True:
        top = [ij for ij in rem if ij[1] >= k]
        if not top:
            break
        i, j = max(top, key=lambda ij: ij[1])
        a = rem[(i, j)] / lead
        key = (i, j - k)
        q[key] = q.get(key, 0) + a
        for (gi, gj), b in g_in.items():
            kk = (i + gi, j - k + gj)
            rem[kk] = rem.get(kk, 0) - a * b
            if not rem[kk]:
                del rem[kk]
    return q, rem


def y_order_at_zero(g: BiSeries) -> int | None:
    g0 = g.subs_x0()
    return min(g0) if g0 else None


def weierstrass_divide(S, g, trunc: int = DEFAULT_TRUNC) -> tuple[BiSeries, BiSeries]:
    """Return (h, R) with S = h*g + R and deg_y R < k, k the y-order of g(0, y).

    Works order by order in the weighted degree w*i + j with w = max(k, 1),
    for which the initial form of g is monic of degree k in y.  For exact
    inputs the loop stops when the residue vanishes, or at weight w*trunc.
    """
    S, g = as_series(S), as_series(g)
    k = y_order_at_zero(g)
    if k is None or (g.prec is not None and k >= g.prec):
        raise NotYGeneral("g(0, y) vanishes up to the truncation order")
    w = max(k, 1)
    g_in = {ij: a for ij, a in g.coeffs.items() if _weight(ij, w) == k}
    if S.prec is None and g.prec is None:
        bound = w * trunc
    else:
        bound = int(min(p for p in (S.prec, g.prec) if p is not None))
    T = dict(S.coeffs)
    h: dict = {}
    R: dict = {}
    dropped = False
    while T:
        d = min(_weight(ij, w) for ij in T)
        if d >= bound:
            dropped = True
            break
        Td = {ij: a for ij, a in T.items() if _weight(ij, w) == d}
        q, r = _divide_in_y(Td, g_in, k)
        for ij, a in q.items():
            h[ij] = h.get(ij, 0) + a
        for ij, a in r.items():
            R[ij] = R.get(ij, 0) + a
        for ij in Td:
            del T[ij]
        for (i, j), a in q.items():
            for (gi, gj), b in g.coeffs.items():
                if _weight((gi, gj), w) == k:
                    continue
                kk = (i + gi, j + gj)
                if _weight(kk, w) >= bound:
                    dropped = True
                    continue
                T[kk] = T.get(kk, 0) - a * b
                if not T[kk]:
                    del T[kk]
    if not dropped:
        return BiSeries(h), BiSeries(R)
    # weight < bound is known; convert to total degree conservatively
    prec_R = (bound - 1) // w + 1
    prec_h = max((bound - k - 1) // w + 1, 0)
    return BiSeries(h, prec_h), BiSeries(R, prec_R)


def weierstrass_polynomial(f, trunc: int = DEFAULT_TRUNC, with_unit: bool = True) -> tuple["WPoly", BiSeries | None]:
    """Monic P with f = u*P, u a unit, P(0, y) = y^k.  Returns (P, u).

    The unit is the costly part; pass ``with_unit=False`` to skip it.
    """
    f = as_series(f)
    k = y_order_at_zero(f)
    if k is None:
        raise NotYGeneral("f(0, y) vanishes identically")
    yk = BiSeries.monomial(0, k)
    q, r = weierstrass_divide(yk, f, trunc)
    P = yk - r
    return WPoly(P), (q.inverse(trunc) if with_unit else None)


# ---------------------------------------------------------------------------
# distinguished polynomials


class WPoly:
    """f = sum a_i(x) y^(n-i) with a_0(0) != 0 and f(0, y) = a_0(0) y^n.

    Every branch of {f = 0} then passes through the origin.
    """

    __slots__ = ("series", "n")

    def __init__(self, f):
        f = as_series(f)
        n = f.ydeg()
        if n < 0:
            raise NotDistinguished("zero polynomial")
        if f.prec is not None and n >= f.prec:
            raise NotDistinguished("leading coefficient not known at this truncation")
        f0 = f.subs_x0()
        if set(f0) != {n}:
            raise NotDistinguished(f"f(0, y) is not a nonzero multiple of y^{n}")
        self.series = f
        self.n = n

    @classmethod
    def coerce(cls, f) -> "WPoly":
        return f if isinstance(f, WPoly) else cls(f)

    @staticmethod
    def accepts(f) -> bool:
        try:
            WPoly(as_series(f))
            return True
        except NotDistinguished:
            return False

    @property
    def ydeg(self) -> int:
        return self.n

    @property
    def coeffs(self) -> list[UPoly]:
        """a_0(x), ..., a_n(x): a_i multiplies y^(n - i)."""
        return [self.series.xslice(self.n - i) for i in range(self.n + 1)]

    @property
    def exact(self) -> bool:
        return self.series.exact

    def __repr__(self):
        return f"WPoly({self.series!r})"


__all__ = [
    "BiSeries",
    "CertInt",
    "DEFAULT_TRUNC",
    "LinearChange",
    "NPolygon",
    "SWAP",
    "WPoly",
    "as_series",
    "is_y_general",
    "make_y_general",
    "newton_polygon",
    "newton_polygon_of_points",
    "order",
    "weierstrass_divide",
    "weierstrass_polynomial",
    "weighted_order",
]

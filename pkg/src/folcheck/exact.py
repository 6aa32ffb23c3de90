"""Exact scalar and univariate polynomial arithmetic.

Rationals are :class:`fractions.Fraction`.  Univariate polynomials in ``x``
(or in the cyclotomic variable ``z``) are :class:`UPoly`.  A polynomial in
``y`` with ``UPoly`` coefficients is a plain list ``[c_0, c_1, ...]`` indexed
by the power of ``y``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .cert import CertInt
from .errors import CommonFactor

Rat = Fraction


def _trim(coeffs: list) -> list:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


class UPoly:
    """Dense univariate polynomial with rational coefficients, lowest degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        self.c = tuple(_trim([Fraction(a) for a in coeffs]))

    @classmethod
    def monomial(cls, k: int, a=1) -> "UPoly":
        return cls([0] * k + [a])

    @property
    def degree(self) -> int:
        return len(self.c) - 1  # -1 for the zero polynomial

    def order(self) -> int | None:
        """Index of the lowest nonzero coefficient (None for zero)."""
        for i, a in enumerate(self.c):
            if a:
                return i
        return None

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if not isinstance(other, UPoly):
            other = UPoly([other])
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"UPoly({[str(a) for a in self.c]})"

    def __getitem__(self, i):
        return self.c[i] if 0 <= i < len(self.c) else Fraction(0)

    def __iter__(self):
        # without this, iteration would fall back on __getitem__ and never stop
        return iter(self.c)

    def __add__(self, other):
        if not isinstance(other, UPoly):
            other = UPoly([other])
        n = max(len(self.c), len(other.c))
        return UPoly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UPoly([-a for a in self.c])

    def __sub__(self, other):
        if not isinstance(other, UPoly):
            other = UPoly([other])
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            return UPoly([a * other for a in self.c])
        if not self.c or not other.c:
            return UPoly()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out, base = UPoly([1]), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: "UPoly"):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        q = [Fraction(0)] * max(len(rem) - len(other.c) + 1, 0)
        lead = other.c[-1]
        for k in range(len(q) - 1, -1, -1):
            a = rem[k + len(other.c) - 1] / lead
            q[k] = a
            if a:
                for j, b in enumerate(other.c):
                    rem[k + j] -= a * b
        return UPoly(q), UPoly(rem[: len(other.c) - 1])

    def exact_div(self, other: "UPoly") -> "UPoly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def __call__(self, v):
        acc = Fraction(0)
        for a in reversed(self.c):
            acc = acc * v + a
        return acc


# ---------------------------------------------------------------------------
# resultants


def _sylvester(F: Sequence[UPoly], G: Sequence[UPoly]) -> list[list[UPoly]]:
    m, n = len(F) - 1, len(G) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [UPoly()] * size
        for k, a in enumerate(reversed(F)):
            row[i + k] = a
        rows.append(row)
    for i in range(m):
        row = [UPoly()] * size
        for k, a in enumerate(reversed(G)):
            row[i + k] = a
        rows.append(row)
    return rows


def _bareiss_det(M: list[list[UPoly]]) -> UPoly:
    M = [list(r) for r in M]
    n = len(M)
    if n == 0:
        return UPoly([1])
    sign = 1
    prev = UPoly([1])
    for k in range(n - 1):
        if not M[k][k]:
            for r in range(k + 1, n):
                if M[r][k]:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return UPoly()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]).exact_div(prev)
            M[i][k] = UPoly()
        prev = M[k][k]
    return M[n - 1][n - 1] * sign


def _ydeg(F: Sequence[UPoly]) -> list[UPoly]:
    F = [a if isinstance(a, UPoly) else UPoly([a]) for a in F]
    while F and not F[-1]:
        F.pop()
    return F


def resultant_y(F: Sequence[UPoly], G: Sequence[UPoly]) -> UPoly:
    """Sylvester resultant of two polynomials in ``y`` with coefficients in Q[x].

    ``F`` and ``G`` list their ``UPoly`` coefficients by increasing power of y.
    Raises :class:`CommonFactor` when the resultant vanishes identically.
    """
    F, G = _ydeg(F), _ydeg(G)
    if not F or not G:
        raise CommonFactor("zero polynomial has a common factor with everything")
    # integer rows keep Bareiss cheap; undo the scaling afterwards
    scale = Fraction(1)
    m, n = len(F) - 1, len(G) - 1
    if m == 0:
        res = F[0] ** n
    elif n == 0:
        res = G[0] ** m
    else:
        fs = _common_denominator(F)
        gs = _common_denominator(G)
        F = [a * fs for a in F]
        G = [a * gs for a in G]
        scale = Fraction(1) / (Fraction(fs) ** n * Fraction(gs) ** m)
        res = _bareiss_det(_sylvester(F, G)) * scale
    if not res:
        raise CommonFactor("resultant vanishes identically")
    return res


def _common_denominator(F: Sequence[UPoly]) -> int:
    den = 1
    for a in F:
        for c in a.c:
            den = math.lcm(den, c.denominator)
    return den


# truncated x-adic elimination ------------------------------------------------


def _val(a: list) -> int | None:
    for i, c in enumerate(a):
        if c:
            return i
    return None


def _series_mul(a: list, b: list, K: int) -> list:
    out = [Fraction(0)] * min(K, max(len(a) + len(b) - 1, 0))
    for i, ai in enumerate(a):
        if not ai or i >= K:
            continue
        for j, bj in enumerate(b[: K - i]):
            if bj:
                out[i + j] += ai * bj
    return out


def _series_inv(u: list, K: int) -> list:
    inv = [Fraction(0)] * K
    inv[0] = 1 / u[0]
    for k in range(1, K):
        s = Fraction(0)
        for j in range(1, min(k, len(u) - 1) + 1):
            if u[j]:
                s += u[j] * inv[k - j]
        inv[k] = -s * inv[0]
    return inv


def resultant_order_x(F: Sequence[UPoly], G: Sequence[UPoly], K: int) -> CertInt:
    """x-adic order of Res_y(F, G) when all coefficients are only known mod x^K.

    Gaussian elimination over Q((x)) with pivots of least valuation; each pivot
    of valuation v costs v digits of absolute precision.  The order of the
    determinant is the sum of pivot valuations.
    """
    F, G = _ydeg(F), _ydeg(G)
    if not F or not G:
        return CertInt.at_least(K)
    m, n = len(F) - 1, len(G) - 1
    M = [[list(e.c[:K]) for e in row] for row in _sylvester(F, G)] if m + n else []
    if m == 0 or n == 0:
        base, e = (F[0], n) if m == 0 else (G[0], m)
        v = base.order()
        if v is None or v >= K:
            return CertInt.at_least(K)
        return CertInt(v * e)
    size = m + n
    prec = K
    total = 0
    rows = list(range(size))
    cols = list(range(size))
    while rows:
        best = None
        for r in rows:
            for c in cols:
                v = _val(M[r][c][:prec])
                if v is not None and (best is None or v < best[0]):
                    best = (v, r, c)
        if best is None:
            return CertInt.at_least(total + prec)
        v, pr, pc = best
        total += v
        pivot = M[pr][pc][v:prec]
        rows.remove(pr)
        cols.remove(pc)
        prec -= v
        if not rows:
            break
        pinv = _series_inv(pivot, prec)
        for r in rows:
            a = M[r][pc]
            va = _val(a[: prec + v])
            if va is None:
                continue
            factor = _series_mul(a[v: prec + v], pinv, prec)
            for c in cols:
                prod = _series_mul(factor, M[pr][c], prec)
                row = M[r][c][:prec] + [Fraction(0)] * max(0, prec - len(M[r][c]))
                for i, t in enumerate(prod):
                    row[i] -= t
                M[r][c] = row
    return CertInt(total)


# ---------------------------------------------------------------------------
# cyclotomic values


def cyclotomic_polynomial(e: int) -> UPoly:
    """Phi_e, by dividing z^e - 1 by Phi_f for every proper divisor f of e."""
    if e < 1:
        raise ValueError("cyclotomic index must be positive")
    p = UPoly.monomial(e) - UPoly([1])
    for f in range(1, e):
        if e % f == 0:
            p = p.exact_div(cyclotomic_polynomial(f))
    return p


@dataclass(frozen=True)
class CycloValue:
    """``base + sum(coeff * xi**exponent)`` for ``xi`` ranging over d-th roots of unity."""

    base: Fraction
    terms: tuple = ()
    order: int = 1

    def __post_init__(self):
        object.__setattr__(self, "base", Fraction(self.base))
        object.__setattr__(
            self, "terms", tuple((Fraction(c), int(k) % self.order) for c, k in self.terms)
        )

    def scaled(self, s) -> "CycloValue":
        return CycloValue(self.base * s, tuple((c * s, k) for c, k in self.terms), self.order)

    def as_upoly(self, k: int = 1) -> UPoly:
        """Polynomial in z whose value at zeta_d**k is this value."""
        out = [Fraction(0)] * self.order
        out[0] += self.base
        for c, e in self.terms:
            out[(k * e) % self.order] += c
        return UPoly(out)


@dataclass(frozen=True)
class CycloClass:
    root_index: int
    kind: str  # PositiveRational | Zero | NegativeRational | Irrational
    value: Fraction | None = None


def classify_cyclo_values(v: CycloValue) -> list[CycloClass]:
    """Decide, for every d-th root of unity, whether the value is rational and its sign."""
    d = v.order
    out = []
    for k in range(d):
        e = d // math.gcd(k, d)
        # xi = zeta_d**k is a primitive e-th root; write the value in powers of xi
        poly = [Fraction(0)] * e
        poly[0] += v.base
        for c, ex in v.terms:
            poly[ex % e] += c
        _, rem = UPoly(poly).divmod(cyclotomic_polynomial(e))
        if rem.degree > 0:
            out.append(CycloClass(k, "Irrational"))
            continue
        val = rem[0]
        kind = "Zero" if val == 0 else ("PositiveRational" if val > 0 else "NegativeRational")
        out.append(CycloClass(k, kind, val))
    return out


__all__ = [
    "Rat",
    "UPoly",
    "resultant_y",
    "resultant_order_x",
    "cyclotomic_polynomial",
    "CycloValue",
    "CycloClass",
    "classify_cyclo_values",
]

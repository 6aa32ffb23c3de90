"""Germs of holomorphic 1-forms W = A dx + B dy and their invariants."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .cert import CertInt, cmin
from .curves import CurveSpec, intersection_number
from .errors import (
    HypothesisFailed,
    InfiniteIntersection,
    NotInvariant,
    NotLorayShape,
    TruncationInsufficient,
)
from .exact import CycloValue
from .parse import format_polynomial
from .series import (
    DEFAULT_TRUNC,
    BiSeries,
    WPoly,
    _minp,
    as_series,
    make_y_general,
    order,
    weierstrass_divide,
    weighted_order,
)


class OneForm:
    """W = A dx + B dy."""

    __slots__ = ("A", "B")

    def __init__(self, A, B):
        self.A, self.B = as_series(A), as_series(B)

    @classmethod
    def exact_differential(cls, f) -> "OneForm":
        f = as_series(f)
        return cls(f.dx(), f.dy())

    def __add__(self, other: "OneForm") -> "OneForm":
        return OneForm(self.A + other.A, self.B + other.B)

    def __sub__(self, other: "OneForm") -> "OneForm":
        return OneForm(self.A - other.A, self.B - other.B)

    def scale(self, s) -> "OneForm":
        return OneForm(self.A * s, self.B * s)

    @property
    def exact(self) -> bool:
        return self.A.exact and self.B.exact

    @property
    def prec(self) -> int | None:
        return _minp(self.A.prec, self.B.prec)

    def is_zero(self) -> bool:
        return self.A.is_zero() and self.B.is_zero()

    def same_to(self, other: "OneForm") -> bool:
        return self.A.same_to(other.A) and self.B.same_to(other.B)

    def foliation_support(self):
        supp = {(i + 1, j) for (i, j) in self.A.coeffs} | {(i, j + 1) for (i, j) in self.B.coeffs}
        floors = [p + 1 for p in (self.A.prec, self.B.prec) if p is not None]
        return supp, (min(floors) if floors else math.inf)

    def wedge_df(self, f) -> BiSeries:
        """g with W ^ df = g dx ^ dy, i.e. A f_y - B f_x."""
        f = as_series(f)
        return self.A * f.dy() - self.B * f.dx()

    def __repr__(self):
        return f"OneForm(A={self.A!r}, B={self.B!r})"


def mult(W: OneForm) -> CertInt:
    return cmin(order(W.A), order(W.B))


# ---------------------------------------------------------------------------
# linear part


@dataclass(frozen=True)
class SingularityClass:
    jacobian: tuple  # ((-B_x, -B_y), (A_x, A_y)) at the origin
    kind: str  # NonSingular | Simple | SaddleNode | NotIrreducibleSingularity
    trace: Fraction
    det: Fraction
    eigenvalue_ratio: Fraction | None = None


def _is_rational_square(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def classify_linear_part(W: OneForm) -> SingularityClass:
    A, B = W.A, W.B
    J = ((-B[(1, 0)], -B[(0, 1)]), (A[(1, 0)], A[(0, 1)]))
    tr = J[0][0] + J[1][1]
    det = J[0][0] * J[1][1] - J[0][1] * J[1][0]
    if A.const_term() or B.const_term():
        return SingularityClass(J, "NonSingular", tr, det)
    if det == 0:
        kind = "SaddleNode" if tr else "NotIrreducibleSingularity"
        return SingularityClass(J, kind, tr, det)
    root = _is_rational_square(tr * tr - 4 * det)
    if root is None:
        # conjugate irrational eigenvalues: the ratio is -1 or not real
        return SingularityClass(J, "Simple", tr, det)
    l1, l2 = (tr + root) / 2, (tr - root) / 2
    ratio = l1 / l2
    kind = "NotIrreducibleSingularity" if ratio > 0 else "Simple"
    return SingularityClass(J, kind, tr, det, ratio)


# ---------------------------------------------------------------------------
# invariance


def _curve_equation(f) -> BiSeries:
    if isinstance(f, CurveSpec):
        return f.product
    return as_series(f)


def divide_exactly(T: BiSeries, f: BiSeries, trunc: int = DEFAULT_TRUNC) -> BiSeries:
    """T / f, raising NotInvariant on a certified nonzero remainder."""
    L, f1, _ = make_y_general(f)
    q1, R = weierstrass_divide(L.apply(T), f1, trunc)
    if not R.is_zero():
        raise NotInvariant(f"nonzero remainder {R!r}")
    return L.inverse().apply(q1)


def cofactor(W: OneForm, f, trunc: int = DEFAULT_TRUNC) -> BiSeries:
    """g with W ^ df = g f dx ^ dy."""
    f = _curve_equation(f)
    return divide_exactly(W.wedge_df(f), f, trunc)


# ---------------------------------------------------------------------------
# Weierstrass form


@dataclass
class WForm:
    h: BiSeries
    p: BiSeries
    A: BiSeries
    B: BiSeries
    f: WPoly
    W: OneForm

    def reconstruct(self) -> OneForm:
        F = self.f.series
        return OneForm(self.h * F.dx() + self.p * F + self.A, self.h * F.dy() + self.B)

    @property
    def omega(self) -> OneForm:
        return OneForm(self.A, self.B)

    def check(self) -> None:
        n = self.f.ydeg
        if not self.B.is_zero() and self.B.ydeg() >= n - 1:
            raise AssertionError("deg_y B >= n - 1")
        if not self.A.is_zero() and self.A.ydeg() >= n:
            raise AssertionError("deg_y A >= n")
        if not self.reconstruct().same_to(self.W):
            raise AssertionError("Weierstrass form does not reconstruct W")


def weierstrass_form(W: OneForm, f, trunc: int = DEFAULT_TRUNC) -> WForm:
    """W = h df + p f dx + A dx + B dy, deg_y B < n - 1, deg_y A < n."""
    fw = WPoly.coerce(f)
    F = fw.series
    if fw.ydeg < 2:
        raise ValueError("Weierstrass form needs deg_y f > 1")
    h, Bq = weierstrass_divide(W.B, F.dy(), trunc)
    p, Aq = weierstrass_divide(W.A - h * F.dx(), F, trunc)
    wf = WForm(h, p, Aq, Bq, fw, W)
    wf.check()
    return wf


# ---------------------------------------------------------------------------
# GSV index and Milnor number


def _side_index(coef: BiSeries, fder: BiSeries, f: BiSeries, trunc: int) -> CertInt | None:
    try:
        a = intersection_number(coef, f, trunc)
        b = intersection_number(fder, f, trunc)
    except InfiniteIntersection:
        return None
    if not b.exact:
        return None
    if not a.exact:
        return CertInt.at_least(a.value - b.value)
    return CertInt(a.value - b.value)


def factor_gsv(W: OneForm, g, trunc: int = DEFAULT_TRUNC) -> CertInt:
    """GSV(W, {g = 0}) by the order formula, y-side checked against the x-side."""
    g = as_series(g)
    try:
        cofactor(W, g, trunc)
    except NotInvariant as exc:
        raise NotInvariant(f"{format_polynomial(g)} = 0 is not invariant ({exc})") from None
    yside = _side_index(W.B, g.dy(), g, trunc) if not g.dy().is_zero() else None
    xside = _side_index(W.A, g.dx(), g, trunc) if not g.dx().is_zero() else None
    if yside is None and xside is None:
        raise TruncationInsufficient("neither order formula is defined at this truncation")
    if yside is not None and xside is not None and yside.exact and xside.exact:
        if yside.value != xside.value:
            raise AssertionError(f"GSV y-side {yside} differs from x-side {xside}")
    if yside is not None and yside.exact:
        return yside
    if xside is not None and xside.exact:
        return xside
    return yside if yside is not None else xside


def gsv_index(W: OneForm, C, trunc: int = DEFAULT_TRUNC) -> CertInt:
    """GSV(W, C) for a reduced curve, combining factors pairwise."""
    spec = C if isinstance(C, CurveSpec) else CurveSpec([C], trunc)
    for g in spec.factors:
        cofactor(W, g, trunc)
    total = CertInt(0)
    for g in spec.factors:
        total = total + factor_gsv(W, g, trunc)
    fs = spec.factors
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            i0 = intersection_number(fs[i], fs[j], trunc)
            if not i0.exact:
                raise TruncationInsufficient("pairwise intersection not certified")
            total = total + CertInt(-2 * i0.value)
    if len(fs) > 1 and total.exact:
        try:
            whole = factor_gsv(W, spec.product, trunc)
        except TruncationInsufficient:
            whole = None
        if whole is not None and whole.exact and whole.value != total.value:
            raise AssertionError(f"GSV {total} disagrees with the whole-curve formula {whole}")
    return total


def milnor_foliation(W: OneForm, trunc: int = DEFAULT_TRUNC) -> CertInt:
    """mu(F_W) = i_0(A, B)."""
    return intersection_number(W.A, W.B, trunc)


# ---------------------------------------------------------------------------
# Loray prenormal form and the toric transform


def _minimal_pq(n: int, m: int) -> tuple[int, int]:
    d = math.gcd(n, m)
    p = 1
    while True:
        if (m * p - d) % n == 0 and (m * p - d) // n > 0:
            return p, (m * p - d) // n
        p += 1


@dataclass
class MonomialSetup:
    n: int
    m: int
    delta: BiSeries
    g: BiSeries = field(default_factory=lambda: BiSeries({}))
    d: int = 0
    p: int = 0
    q: int = 0
    in_box: bool = True

    def __post_init__(self):
        if not 0 < self.n <= self.m:
            raise ValueError("need 0 < n <= m")
        self.delta, self.g = as_series(self.delta), as_series(self.g)
        self.d = math.gcd(self.n, self.m)
        self.p, self.q = _minimal_pq(self.n, self.m)
        self.in_box = all(i <= self.m - 2 and j <= self.n - 2 for i, j in self.delta.coeffs)

    @property
    def f(self) -> BiSeries:
        return BiSeries({(0, self.n): 1, (self.m, 0): -1})

    @property
    def W(self) -> OneForm:
        M = self.delta + self.f * self.g
        base = OneForm.exact_differential(self.f)
        if M.is_zero():
            return base
        return base + OneForm(M * BiSeries.monomial(0, 1, -self.m), M * BiSeries.monomial(1, 0, self.n))

    def delta_weighted_order(self) -> CertInt:
        return weighted_order(self.delta, self.n, self.m)

    def critical_terms(self) -> dict:
        """Coefficients a_{r,s} of Delta with n(r+1) + m(s+1) = nm."""
        nm = self.n * self.m
        return {(r, s): a for (r, s), a in self.delta.coeffs.items() if self.n * (r + 1) + self.m * (s + 1) == nm}

    def remark_sufficient(self, trunc: int = DEFAULT_TRUNC) -> bool | None:
        """The sufficient condition i0(Delta', f) > mn - m - n, Delta' = Delta + f g."""
        M = self.delta + self.f * self.g
        try:
            i0 = intersection_number(M, self.f, trunc)
        except InfiniteIntersection:
            return True
        return i0.gt(self.n * self.m - self.n - self.m)

    def singular_point_value(self) -> CycloValue:
        """1 + sum a_{r,s} xi^(p(r+1) + q(s+1) - qn) over the critical terms, xi^d = 1."""
        terms = tuple(
            (a, self.p * (r + 1) + self.q * (s + 1) - self.q * self.n) for (r, s), a in self.critical_terms().items()
        )
        return CycloValue(Fraction(1), terms, self.d)


def loray_decompose(W: OneForm, n: int, m: int, trunc: int = DEFAULT_TRUNC) -> MonomialSetup:
    """Write W = df + (Delta + f g)(n x dy - m y dx) with f = y^n - x^m."""
    f = BiSeries({(0, n): 1, (m, 0): -1})
    R = W - OneForm.exact_differential(f)
    if any(i == 0 for i, _ in R.B.coeffs):
        raise NotLorayShape("dy-part of W - df is not divisible by x")
    M = BiSeries({(i - 1, j): a / n for (i, j), a in R.B.coeffs.items()}, None if R.B.prec is None else R.B.prec - 1)
    if not (M * BiSeries.monomial(0, 1, -m)).same_to(R.A):
        raise NotLorayShape("W - df is not a multiple of n x dy - m y dx")
    if M.prec is None and R.A.prec is not None:
        M = M.truncate(R.A.prec - 1)
    g, delta = weierstrass_divide(M, f, trunc)
    return MonomialSetup(n, m, delta, g)


@dataclass
class ToricTransform:
    setup: MonomialSetup
    exceptional: tuple  # (u-exponent, v-exponent)
    Wprime: OneForm  # in the variables (u, v) stored as (x, y)
    jacobian_origin: tuple
    jacobian_roots: tuple  # 2x2 of CycloValue, entries evaluated at (xi, 0)
    value: CycloValue  # (1 + Sigma) read off W'


def _pullback_terms(S: BiSeries, p, q, a, b, du, dv):
    out: dict = {}
    for (i, j), c in S.coeffs.items():
        key = (p * i + q * j + du, a * i + b * j + dv)
        out[key] = out.get(key, 0) + c
    return out


def _merge(*parts):
    out: dict = {}
    for scale, d in parts:
        for k, v in d.items():
            out[k] = out.get(k, 0) + scale * v
    return {k: v for k, v in out.items() if v}


def _cyclo_from_upoly(coeffs: dict, d: int) -> CycloValue:
    return CycloValue(Fraction(0), tuple((c, e) for e, c in sorted(coeffs.items())), d)


def toric_strict_transform(setup: MonomialSetup) -> ToricTransform:
    """Pull W back by (u^p v^(n/d), u^q v^(m/d)) and strip the exceptional monomial."""
    n, m, d, p, q = setup.n, setup.m, setup.d, setup.p, setup.q
    floor = n * m - n - m
    wo = setup.delta_weighted_order()
    ok = wo.gt(floor - 1)
    if ok is None:
        raise TruncationInsufficient("weighted order of Delta not certified")
    if not ok:
        raise HypothesisFailed(f"weighted order of Delta is {wo} < {floor}")
    W = setup.W
    a, b = n // d, m // d
    Ap = _merge(
        (p, _pullback_terms(W.A, p, q, a, b, p - 1, a)),
        (q, _pullback_terms(W.B, p, q, a, b, q - 1, b)),
    )
    Bp = _merge(
        (a, _pullback_terms(W.A, p, q, a, b, p, a - 1)),
        (b, _pullback_terms(W.B, p, q, a, b, q, b - 1)),
    )
    eu = min(i for i, _ in list(Ap) + list(Bp))
    ev = min(j for _, j in list(Ap) + list(Bp))
    expected = (q * n - 1, m * n // d - 1)
    if (eu, ev) != expected:
        raise HypothesisFailed(f"exceptional factor u^{eu} v^{ev}, expected u^{expected[0]} v^{expected[1]}")
    prec = None
    if W.prec is not None:
        prec = W.prec * (min(p, q) + min(a, b)) - 2 - eu - ev
        if prec <= 2:
            raise TruncationInsufficient("truncation too small for the toric transform")
    A1 = BiSeries({(i - eu, j - ev): c for (i, j), c in Ap.items()}, prec)
    B1 = BiSeries({(i - eu, j - ev): c for (i, j), c in Bp.items()}, prec)
    Wp = OneForm(A1, B1)
    J0 = ((-B1[(1, 0)], -B1[(0, 1)]), (A1[(1, 0)], A1[(0, 1)]))

    def along_v0(S: BiSeries, wrt: str) -> CycloValue:
        # partial derivative restricted to v = 0, as a polynomial in u mod u^d - 1
        D = S.dx() if wrt == "u" else S.dy()
        return _cyclo_from_upoly({i: c for (i, j), c in D.coeffs.items() if j == 0}, d)

    Jr = (
        (along_v0(B1, "u").scaled(-1), along_v0(B1, "v").scaled(-1)),
        (along_v0(A1, "u"), along_v0(A1, "v")),
    )
    value = Jr[1][1].scaled(Fraction(-1, d))
    return ToricTransform(setup, (eu, ev), Wp, J0, Jr, value)


# ---------------------------------------------------------------------------
# coordinate changes acting on 1-forms


def pullback_linear(W: OneForm, L) -> OneForm:
    """L^* W for x = aX + bY, y = cX + dY."""
    if L.is_identity:
        return W
    A, B = L.apply(W.A), L.apply(W.B)
    return OneForm(A * L.a + B * L.c, A * L.b + B * L.d)


def substitute_y(S: BiSeries, s: BiSeries) -> BiSeries:
    """S(x, y + s(x)) for a series s in x alone."""
    S = as_series(S)
    Y = BiSeries.y() + s
    powers = {0: BiSeries.const(1)}
    out = BiSeries({}, S.prec)
    for j in sorted({j for _, j in S.coeffs}):
        while max(powers) < j:
            k = max(powers)
            powers[k + 1] = powers[k] * Y
        xpart = BiSeries({(i, 0): a for (i, jj), a in S.coeffs.items() if jj == j}, S.prec)
        out = out + xpart * powers[j]
    return out


def shift_y(W: OneForm, s: BiSeries) -> OneForm:
    """Pull W back along y = Y + s(x)."""
    A, B = substitute_y(W.A, s), substitute_y(W.B, s)
    return OneForm(A + B * s.dx(), B)

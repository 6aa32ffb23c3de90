"""Plane branches: Newton-Puiseux parametrizations and their invariants.

Intersection multiplicities are computed two ways.  The main route
Weierstrass-reduces one germ modulo the other and takes the x-order of a
resultant; the parametric route sums ``ord_t h(x(t), y(t))`` over the
branches of the first germ.  The second serves as an oracle for the first.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import sympy

from .cert import CertInt
from .errors import (
    CommonFactor,
    DegreeTooLarge,
    InfiniteIntersection,
    InvalidSequence,
    NotSquareFree,
    TruncationInsufficient,
    UnsupportedExtension,
)
from .exact import UPoly, resultant_order_x, resultant_y
from .series import (
    DEFAULT_TRUNC,
    BiSeries,
    WPoly,
    as_series,
    make_y_general,
    order,
    weierstrass_divide,
    weierstrass_polynomial,
    y_order_at_zero,
)

# ---------------------------------------------------------------------------
# univariate truncated series in t: dense lists of Fractions


def _tmul(a: list, b: list, P: int) -> list:
    out = [Fraction(0)] * P
    for i, ai in enumerate(a[:P]):
        if ai:
            for j, bj in enumerate(b[: P - i]):
                if bj:
                    out[i + j] += ai * bj
    return out


def _tinv(u: list, P: int) -> list:
    inv = [Fraction(0)] * P
    inv[0] = 1 / u[0]
    for k in range(1, P):
        s = Fraction(0)
        for j in range(1, min(k, len(u) - 1) + 1):
            if u[j]:
                s += u[j] * inv[k - j]
        inv[k] = -s * inv[0]
    return inv


def _tord(a: list) -> int | None:
    for i, c in enumerate(a):
        if c:
            return i
    return None


# ---------------------------------------------------------------------------
# branches


@dataclass
class Branch:
    """Parametrization x = xcoef * t**n, y = sum(y[j] t**j) of one branch.

    ``y_prec`` is the number of known coefficients of y (None when y is an
    exact polynomial).  A vertical branch {x = 0} has ``n = 0`` and
    ``xcoef = 0`` with y = t.
    """

    n: int
    xcoef: Fraction
    y: list
    y_prec: int | None

    @property
    def vertical(self) -> bool:
        return self.n == 0

    def x_series(self, P: int) -> list:
        out = [Fraction(0)] * P
        if not self.vertical and self.n < P:
            out[self.n] = self.xcoef
        return out

    def y_series(self, P: int) -> list:
        out = [Fraction(0)] * P
        for j, a in enumerate(self.y[:P]):
            out[j] = a
        return out

    @property
    def mult(self) -> int:
        oy = _tord(self.y)
        if self.vertical:
            return oy
        return self.n if oy is None else min(self.n, oy)

    # invariants -----------------------------------------------------------
    @property
    def char_exponents(self) -> tuple:
        return char_exponents(self)

    @property
    def semigroup(self) -> tuple:
        return semigroup_from_exponents(self.char_exponents)[0]

    @property
    def e(self) -> tuple:
        return semigroup_from_exponents(self.char_exponents)[1]

    @property
    def nseq(self) -> tuple:
        return semigroup_from_exponents(self.char_exponents)[2]

    @property
    def genus(self) -> int:
        return len(self.char_exponents) - 1

    def order_along(self, h) -> CertInt:
        """ord_t h(x(t), y(t))."""
        h = as_series(h)
        oy = _tord(self.y)
        m0 = min(self.n if not self.vertical else math.inf, oy if oy is not None else math.inf)
        P = self.y_prec if self.y_prec is not None else math.inf
        if h.prec is not None:
            P = min(P, h.prec * m0)
        if P == math.inf:
            # exact polynomial along an exact parametrization: bound the degree
            degx = max((i for i, _ in h.coeffs), default=0)
            degy = max((j for _, j in h.coeffs), default=0)
            P = max(self.n, 1) * degx + max(len(self.y), 1) * degy + 2
            exact_bound = True
        else:
            exact_bound = False
        P = int(P)
        xs = self.x_series(P)
        ys = self.y_series(P)
        ypow = {0: [Fraction(1)] + [Fraction(0)] * (P - 1)}
        xpow = {0: ypow[0]}
        total = [Fraction(0)] * P
        for (i, j), a in sorted(h.coeffs.items()):
            if i not in xpow:
                xpow[i] = _tpow(xpow, xs, i, P)
            if j not in ypow:
                ypow[j] = _tpow(ypow, ys, j, P)
            prod = _tmul(xpow[i], ypow[j], P)
            for k, c in enumerate(prod):
                if c:
                    total[k] += a * c
        o = _tord(total)
        if o is not None:
            return CertInt(o)
        if exact_bound:
            return CertInt.infinity()
        return CertInt.at_least(P)


def _tpow(cache: dict, base: list, k: int, P: int) -> list:
    top = max(e for e in cache if e <= k)
    acc = cache[top]
    for e in range(top + 1, k + 1):
        acc = _tmul(acc, base, P)
        cache[e] = acc
    return acc


def _poly_key(f: BiSeries):
    return (tuple(sorted(f.coeffs.items())), f.prec)


def _rational_roots(coeffs: list) -> list[tuple[Fraction, int]]:
    """Rational roots with multiplicity of sum(coeffs[k] W^k); raise if any root is irrational."""
    W = sympy.Symbol("W")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], W)
    _, factors = poly.factor_list()
    out = []
    for fac, mult in factors:
        if fac.degree() == 0:
            continue
        if fac.degree() > 1:
            raise UnsupportedExtension(f"algebraic extension needed: edge polynomial factor {fac.as_expr()} has no rational root")
        a, b = fac.all_coeffs()
        root = -sympy.Rational(b) / sympy.Rational(a)
        out.append((Fraction(int(root.p), int(root.q)), mult))
    return sorted(out)


def _bezout(p: int, q: int) -> tuple[int, int]:
    """(u, v) with v*p - u*q = 1, v >= 0 minimal."""
    for v in range(q + 1):
        if (v * p - 1) % q == 0:
            return (v * p - 1) // q, v
    raise AssertionError("p and q not coprime")


def _substitute(F: dict, lam: Fraction, p: int, q: int, c0: Fraction, shift: int) -> dict:
    """F(lam*S^p, S^q*(c0 + w)) / S^shift."""
    out: dict = {}
    binoms: dict = {}
    for (i, j), a in F.items():
        base = a * lam**i
        sdeg = p * i + q * j - shift
        if j not in binoms:
            binoms[j] = [math.comb(j, k) * c0 ** (j - k) for k in range(j + 1)]
        for k, bc in enumerate(binoms[j]):
            if bc:
                key = (sdeg, k)
                out[key] = out.get(key, 0) + base * bc
    return {k: v for k, v in out.items() if v}


@dataclass
class _State:
    lam: Fraction  # x = lam * T^N
    N: int
    Yp: dict  # exact part of y as {exp: coeff}
    kappa: Fraction  # y = Yp + kappa * T^E * w
    E: int


def _relevant_polygon(F: dict, n0: int):
    from .series import newton_polygon_of_points

    pts = [ij for ij in F if ij[1] <= n0]
    return newton_polygon_of_points(pts)


def _solve_implicit(F: dict, M: int) -> list:
    """w(S) mod S^M with F(S, w(S)) = 0, w(0) = 0, given F_w(0, 0) != 0."""
    byj: dict = {}
    for (i, j), a in F.items():
        if i < M:
            byj.setdefault(j, [Fraction(0)] * M)[i] += a
    maxj = max(byj)
    w = [Fraction(0)] * M
    prec = 1
    while prec < M:
        prec = min(2 * prec, M)
        # Horner for F and F_w at w mod S^prec
        Fv = [Fraction(0)] * prec
        Fw = [Fraction(0)] * prec
        for j in range(maxj, -1, -1):
            Fw = _tmul(Fw, w, prec)
            for k in range(prec):
                Fw[k] += Fv[k]
            Fv = _tmul(Fv, w, prec)
            if j in byj:
                for k in range(prec):
                    Fv[k] += byj[j][k]
        step = _tmul(Fv, _tinv(Fw, prec), prec)
        w = [w[k] - step[k] if k < prec else w[k] for k in range(M)]
    return w


def newton_puiseux(f, terms: int = DEFAULT_TRUNC) -> list[Branch]:
    """Branches of the germ f at the origin, one per conjugacy cycle.

    ``f`` must be an exact polynomial.  ``terms`` is the number of known
    coefficients requested for each y(t).
    """
    f = as_series(f)
    if not f.exact:
        raise TruncationInsufficient("Newton-Puiseux needs an exact polynomial")
    return list(_newton_puiseux_cached(_poly_key(f), terms))


@lru_cache(maxsize=512)
def _newton_puiseux_cached(key, terms: int) -> tuple:
    f = BiSeries(dict(key[0]))
    branches = []
    if f.const_term():
        return ()
    xpow = min(i for i, _ in f.coeffs)
    if xpow >= 2:
        raise NotSquareFree("x^2 divides f")
    if xpow == 1:
        branches.append(Branch(0, Fraction(0), [Fraction(0), Fraction(1)], None))
        f = BiSeries({(i - 1, j): a for (i, j), a in f.coeffs.items()})
        if f.const_term():
            return tuple(branches)
    if f.ydeg() >= 1:
        try:
            resultant_y(f.as_ypoly(), f.dy().as_ypoly())
        except CommonFactor:
            raise NotSquareFree("f and f_y share a factor") from None
    n0 = min(j for (i, j) in f.coeffs if i == 0)
    state = _State(Fraction(1), 1, {}, Fraction(1), 0)
    _expand(dict(f.coeffs), state, n0, terms, branches)
    return tuple(branches)


def _rational_nth_root(a: Fraction, n: int) -> Fraction | None:
    if a < 0 and n % 2 == 0:
        return None
    sgn = -1 if a < 0 else 1
    out = []
    for part in (abs(a.numerator), a.denominator):
        r = round(part ** (1.0 / n))
        hit = next((c for c in (r - 1, r, r + 1) if c >= 0 and c**n == part), None)
        if hit is None:
            return None
        out.append(hit)
    return sgn * Fraction(out[0], out[1])


def _normalize(b: Branch) -> Branch:
    """Rescale t so that x = t^n whenever the x coefficient is an n-th power."""
    if b.vertical or b.xcoef == 1:
        return b
    mu = _rational_nth_root(b.xcoef, b.n)
    if mu is None:
        return b
    return Branch(b.n, Fraction(1), [a / mu**j for j, a in enumerate(b.y)], b.y_prec)


def _finish(state: _State, w: list | None, terms: int) -> Branch:
    return _normalize(_finish_raw(state, w, terms))


def _finish_raw(state: _State, w: list | None, terms: int) -> Branch:
    if w is None:
        top = max(state.Yp, default=0)
        y = [Fraction(0)] * (top + 1)
        for e, a in state.Yp.items():
            y[e] += a
        return Branch(state.N, state.lam, y, None)
    P = state.E + len(w)
    y = [Fraction(0)] * P
    for e, a in state.Yp.items():
        y[e] += a
    for k, a in enumerate(w):
        y[state.E + k] += state.kappa * a
    return Branch(state.N, state.lam, y, P)


def _expand(F: dict, state: _State, n0: int, terms: int, out: list) -> None:
    jmin = min(j for _, j in F)
    if jmin >= 2:
        raise NotSquareFree("repeated root in Newton-Puiseux")
    if jmin == 1:
        out.append(_finish(state, None, terms))
    poly = _relevant_polygon(F, n0)
    for (i1, j1), (i2, j2), _ in poly.edges:
        g = math.gcd(i2 - i1, j1 - j2)
        q, p = (i2 - i1) // g, (j1 - j2) // g
        K = (j1 - j2) // p
        # phi(W) = sum_k a_k W^(K-k), W = c0^p / lam^q
        phi = [Fraction(0)] * (K + 1)
        for k in range(K + 1):
            phi[K - k] = Fraction(F.get((i1 + k * q, j1 - k * p), 0))
        u, v = _bezout(p, q)
        for Z, r in _rational_roots(phi):
            lam, c0 = Z**u, Z**v
            F1 = _substitute(F, lam, p, q, c0, p * i1 + q * j1)
            Yp = {}
            for e, a in state.Yp.items():
                Yp[p * e] = Yp.get(p * e, 0) + a * lam**e
            kap = state.kappa * lam**state.E
            E1 = p * state.E + q
            Yp[E1] = Yp.get(E1, 0) + kap * c0
            new = _State(state.lam * lam**state.N, state.N * p, Yp, kap, E1)
            if r == 1:
                M = max(terms - E1, 1)
                if min(j for _, j in F1) >= 1:
                    out.append(_finish(new, None, terms))
                else:
                    out.append(_finish(new, _solve_implicit(F1, M), terms))
            else:
                _expand(F1, new, r, terms, out)


# ---------------------------------------------------------------------------
# characteristic exponents and semigroups


def char_exponents(b: Branch) -> tuple:
    """(beta_0, ..., beta_g) of a branch whose x = 0 is transversal."""
    if b.vertical:
        return (1,)
    oy = _tord(b.y)
    if oy is not None and oy < b.n:
        raise ValueError("x = 0 is tangent to the branch; change coordinates first")
    betas = [b.n]
    e = b.n
    for j, a in enumerate(b.y):
        if e == 1:
            break
        if a and j % e:
            betas.append(j)
            e = math.gcd(e, j)
    if e != 1:
        raise TruncationInsufficient("characteristic exponents not certified; raise trunc")
    return tuple(betas)


def semigroup_from_exponents(betas) -> tuple[tuple, tuple, tuple]:
    """Minimal generators (v_0..v_g), gcd chain (e_0..e_g) and (n_1..n_g)."""
    betas = tuple(int(b) for b in betas)
    if not betas or betas[0] < 1:
        raise InvalidSequence("empty or nonpositive sequence")
    es = [betas[0]]
    for b in betas[1:]:
        e = math.gcd(es[-1], b)
        if e >= es[-1] or b <= (betas[len(es) - 1] if len(es) > 1 else 0):
            raise InvalidSequence(f"{betas} is not a characteristic sequence")
        es.append(e)
    if es[-1] != 1:
        raise InvalidSequence(f"gcd chain of {betas} does not reach 1")
    if any(betas[i + 1] <= betas[i] for i in range(1, len(betas) - 1)):
        raise InvalidSequence("exponents must increase")
    ns = [es[i - 1] // es[i] for i in range(1, len(es))]
    vs = [betas[0]]
    if len(betas) > 1:
        vs.append(betas[1])
    for i in range(1, len(betas) - 1):
        vs.append(ns[i - 1] * vs[i] + betas[i + 1] - betas[i])
    return tuple(vs), tuple(es), tuple(ns)


def semigroup_gaps(gens) -> tuple[int, int]:
    """(number of gaps, conductor) of the numerical semigroup generated by ``gens``."""
    gens = sorted(set(int(g) for g in gens))
    if math.gcd(*gens) != 1:
        raise ValueError("generators must be coprime")
    if gens[0] == 1:
        return 0, 0
    # Frobenius number < product bound; sieve membership
    limit = gens[0] * gens[-1] + 1
    member = [False] * (limit + 1)
    member[0] = True
    for s in range(1, limit + 1):
        member[s] = any(s >= g and member[s - g] for g in gens)
    gaps = [s for s in range(limit + 1) if not member[s]]
    return len(gaps), (max(gaps) + 1 if gaps else 0)


def milnor_from_semigroup(vs, ns) -> int:
    """Sum (n_i - 1) v_i - v_0 + 1."""
    return sum((ni - 1) * vi for ni, vi in zip(ns, vs[1:])) - vs[0] + 1


# ---------------------------------------------------------------------------
# intersection numbers


def _ydeg_trunc(F: BiSeries, deg: int) -> int | None:
    """x-adic precision of a y-polynomial of y-degree <= deg."""
    return None if F.prec is None else F.prec - deg


def _cut(polys: list[UPoly], K: int) -> list[UPoly]:
    return [UPoly(p.c[:K]) for p in polys]


_X, _Y = sympy.symbols("x y")


def _to_sympy(F: BiSeries):
    return sympy.Poly.from_dict(
        {(i, j): sympy.Rational(a.numerator, a.denominator) for (i, j), a in F.coeffs.items()}, _X, _Y
    )


def _from_sympy(p) -> BiSeries:
    return BiSeries({(i, j): Fraction(int(c.p), int(c.q)) for (i, j), c in p.as_dict().items()})


def _strip_common(F: BiSeries, G: BiSeries) -> tuple[BiSeries, BiSeries]:
    """Remove a common polynomial factor that is a unit at the origin."""
    Fs, Gs = _to_sympy(F), _to_sympy(G)
    g = sympy.gcd(Fs, Gs)
    if g.total_degree() == 0:
        return F, G
    if g.eval({_X: 0, _Y: 0}) == 0:
        raise InfiniteIntersection("common factor through the origin")
    return _from_sympy(sympy.div(Fs, g)[0]), _from_sympy(sympy.div(Gs, g)[0])


def intersection_number(f, h, trunc: int = DEFAULT_TRUNC, crosscheck: bool = False) -> CertInt:
    """i_0(f, h) = dim Q{x,y}/(f, h).

    Truncated work starts small and doubles up to ``trunc`` until the order
    is certified.  Raises :class:`InfiniteIntersection` when f and h share a
    component.
    """
    F, G = as_series(f), as_series(h)
    if F.const_term() or G.const_term():
        return CertInt(0)
    for S in (F, G):
        if S.is_zero():
            if S.exact:
                raise InfiniteIntersection("zero series")
            return CertInt.at_least(S.prec)
    if F.exact and G.exact:
        F, G = _strip_common(F, G)
    oF, oG = order(F), order(G)
    if oG.exact and (not oF.exact or oG.value < oF.value):
        F, G = G, F  # the factor of lower order is the cheaper divisor
    L, F1, _ = make_y_general(F)
    G1 = L.apply(G)
    k = y_order_at_zero(F1)
    if k is None or k >= trunc:
        return CertInt.at_least(1)
    t = min(max(8, 2 * (k + 1)), trunc)
    while True:
        value = _i0_prepared(F1, G1, t)
        if value.exact or t >= trunc:
            break
        t = min(2 * t, trunc)
    if crosscheck and F1.exact:
        other = parametric_intersection(F1, G1, trunc)
        if other is not None and value.exact and other.exact and other.value != value.value:
            raise AssertionError(f"resultant i0={value} but parametric i0={other}")
    return value


def _i0_prepared(F1: BiSeries, G1: BiSeries, trunc: int) -> CertInt:
    k = min(i + j for (i, j) in F1.coeffs)
    _, R = weierstrass_divide(G1, F1, trunc)
    if WPoly.accepts(F1):
        P = F1
    else:
        P = weierstrass_polynomial(F1, trunc, with_unit=False)[0].series
    if R.is_zero():
        if R.exact and P.exact:
            raise InfiniteIntersection("f divides h")
        return CertInt.at_least(max(R.prec - k + 1, 1) if R.prec is not None else 1)
    Py, Ry = P.as_ypoly(), R.as_ypoly()
    if P.exact and R.exact:
        size = sum(p.degree + 1 for p in Py + Ry)
        if size <= 400:
            try:
                return CertInt(resultant_y(Py, Ry).order())
            except CommonFactor:
                raise InfiniteIntersection("common factor") from None
        value = resultant_order_x(Py, Ry, 4 * trunc)
        if value.exact:
            return value
        try:
            return CertInt(resultant_y(Py, Ry).order())
        except CommonFactor:
            raise InfiniteIntersection("common factor") from None
    K = min(p for p in (_ydeg_trunc(P, len(Py) - 1), _ydeg_trunc(R, len(Py) - 2)) if p is not None)
    if K <= 0:
        return CertInt.at_least(1)
    return resultant_order_x(_cut(Py, K), _cut(Ry, K), K)


def parametric_intersection(f, h, trunc: int = DEFAULT_TRUNC) -> CertInt | None:
    """Sum over the branches of f of ord_t h(branch); None if branches unavailable."""
    f = as_series(f)
    try:
        branches = newton_puiseux(f, 2 * trunc)
    except (UnsupportedExtension, TruncationInsufficient):
        return None
    total = CertInt(0)
    for b in branches:
        o = b.order_along(h)
        if o.is_infinite:
            raise InfiniteIntersection("h vanishes on a branch of f")
        total = total + o
    return total


def milnor_number(f, trunc: int = DEFAULT_TRUNC, crosscheck: bool = True) -> CertInt:
    """mu(f) = i_0(f_x, f_y) for a reduced germ or CurveSpec."""
    spec = f if isinstance(f, CurveSpec) else None
    F = spec.product if spec else as_series(f)
    mu = intersection_number(F.dy(), F.dx(), trunc)
    if crosscheck and mu.exact:
        if spec and len(spec.factors) > 1:
            alt = reduced_milnor(spec, trunc)
            if alt.exact and alt.value != mu.value:
                raise AssertionError(f"mu={mu} but reduced Milnor formula gives {alt}")
        else:
            other = branch_milnor(F, trunc)
            if other is not None and other != mu.value:
                raise AssertionError(f"mu={mu} but semigroup formula gives {other}")
    return mu


def branch_milnor(f, trunc: int = DEFAULT_TRUNC) -> int | None:
    """mu of an irreducible germ from its semigroup, None when not applicable."""
    f = as_series(f)
    if not f.exact:
        return None
    L, f1, _ = make_y_general(f)
    try:
        bs = newton_puiseux(f1, 2 * trunc)
    except (UnsupportedExtension, TruncationInsufficient, NotSquareFree):
        return None
    if len(bs) != 1:
        return None
    vs, _, ns = semigroup_from_exponents(bs[0].char_exponents)
    return milnor_from_semigroup(vs, ns)


def reduced_milnor(spec: "CurveSpec", trunc: int = DEFAULT_TRUNC) -> CertInt:
    """sum mu(f_j) + 2 sum_{i<j} i0(f_i, f_j) - r + 1."""
    total = CertInt(1 - len(spec.factors))
    for g in spec.factors:
        total = total + intersection_number(g.dy(), g.dx(), trunc)
    for a, b in combinations(spec.factors, 2):
        i0 = intersection_number(a, b, trunc)
        total = total + i0 + i0
    return total


# ---------------------------------------------------------------------------
# curve specifications


class CurveSpec:
    """A reduced curve supplied as a list of (asserted irreducible) factors."""

    def __init__(self, factors, trunc: int = DEFAULT_TRUNC):
        self.factors = [as_series(g) for g in factors]
        if not self.factors:
            raise ValueError("a curve needs at least one factor")
        prod = BiSeries.const(1)
        for g in self.factors:
            prod = prod * g
        self.product = prod
        self.trunc = trunc

    def validate(self) -> list[str]:
        """Pairwise finiteness and irreducibility checks; returns caveats."""
        caveats = []
        for a, b in combinations(self.factors, 2):
            intersection_number(a, b, self.trunc)  # raises InfiniteIntersection
        for idx, g in enumerate(self.factors):
            try:
                n = len(factor_branches(g, self.trunc))
            except UnsupportedExtension:
                caveats.append(f"factor {idx}: irreducibility not decidable over Q")
                continue
            if n != 1:
                caveats.append(f"factor {idx} has {n} branches (not irreducible)")
        return caveats

    def __len__(self):
        return len(self.factors)


def factor_branches(g, trunc: int = DEFAULT_TRUNC) -> list[Branch]:
    """Branches of g in coordinates where g is y-general."""
    _, g1, _ = make_y_general(as_series(g))
    return newton_puiseux(g1, 2 * trunc)


# ---------------------------------------------------------------------------
# approximate roots and semiroot expansions


def _ydivmod(F: BiSeries, G: BiSeries) -> tuple[BiSeries, BiSeries]:
    """Euclidean division in y by G, monic in y."""
    d = G.ydeg()
    q = BiSeries({}, None)
    r = F
    while r.ydeg() >= d:
        top = r.ydeg()
        c = BiSeries({(i, j - d): a for (i, j), a in r.coeffs.items() if j == top}, None)
        q = q + c
        r = r - c * G
        # a truncated r can keep stray coefficients at degree top; drop them
        if r.ydeg() >= top:
            r = BiSeries({ij: a for ij, a in r.coeffs.items() if ij[1] < top}, r.prec)
    return q, r


def adic_expansion(F: BiSeries, G: BiSeries) -> list[BiSeries]:
    """[r_0, r_1, ...] with F = sum r_i G^i and deg_y r_i < deg_y G."""
    out = []
    while not F.is_zero():
        F, r = _ydivmod(F, G)
        out.append(r)
    return out


def _monic(f) -> BiSeries:
    f = as_series(f)
    n = f.ydeg()
    a0 = BiSeries({(i, 0): a for (i, j), a in f.coeffs.items() if j == n}, f.prec)
    if a0.exact and set(a0.coeffs) == {(0, 0)}:
        return f * (1 / a0.const_term())
    return f * a0.inverse()


def _branch_data(f: BiSeries, trunc: int):
    bs = newton_puiseux(f, 2 * trunc)
    if len(bs) != 1:
        raise ValueError(f"f is not irreducible ({len(bs)} branches)")
    vs, es, ns = semigroup_from_exponents(bs[0].char_exponents)
    return bs[0], vs, es, ns


def tschirnhausen_root(f: BiSeries, e: int) -> BiSeries:
    """Monic g of degree n/e with deg_y(f - g^e) < n - n/e, by Tschirnhausen steps."""
    f = _monic(f)
    n = f.ydeg()
    if n % e:
        raise ValueError("e must divide deg_y f")
    d = n // e
    g = BiSeries.monomial(0, d)
    for _ in range(d + 2):
        coeffs = adic_expansion(f, g)
        a1 = coeffs[e - 1] if len(coeffs) >= e else BiSeries({}, None)
        if a1.is_zero():
            return g
        g = g + a1 * Fraction(1, e)
    raise AssertionError("Tschirnhausen iteration did not stabilise")


def binomial_root(f: BiSeries, e: int) -> BiSeries:
    """Polynomial part of f^(1/e) expanded in descending powers of y (independent route)."""
    f = _monic(f)
    n = f.ydeg()
    d = n // e
    # f = y^n (1 + sum c_i y^-i); c_i are series in x
    c = [BiSeries({(i, 0): a for (i, j), a in f.coeffs.items() if j == n - k}, f.prec) for k in range(n + 1)]
    alpha = Fraction(1, e)
    G = [BiSeries.const(1)]
    for k in range(1, d + 1):
        acc = BiSeries({}, None)
        for j in range(1, k + 1):
            acc = acc + c[j] * G[k - j] * ((alpha + 1) * j - k)
        G.append(acc * Fraction(1, k))
    out = BiSeries({}, None)
    for k in range(d + 1):
        out = out + G[k] * BiSeries.monomial(0, d - k)
    return out


def approximate_root(f, k: int, trunc: int = DEFAULT_TRUNC) -> BiSeries:
    """The k-th characteristic approximate root (a k-semiroot) of an irreducible f."""
    f = as_series(f)
    _, vs, es, _ = _branch_data(f, trunc)
    g = len(vs) - 1
    if not 1 <= k <= g:
        raise ValueError(f"k must lie in 1..{g}")
    root = tschirnhausen_root(f, es[k - 1])
    i0 = intersection_number(f, root, trunc)
    if i0.exact and i0.value != vs[k]:
        raise AssertionError(f"i0(f, f_{k}) = {i0} differs from v_{k} = {vs[k]}")
    return root


@dataclass
class SemirootExpansion:
    terms: dict  # alpha tuple -> BiSeries in x
    semiroots: list
    semigroup: tuple
    nseq: tuple

    def term_order(self, alpha) -> CertInt:
        """i_0(a_alpha f_1^alpha_1 ... f_g^alpha_g, f)."""
        a = self.terms[alpha]
        ox = min(i for i, _ in a.coeffs)
        return CertInt(sum(al * v for al, v in zip(alpha, self.semigroup[1:])) + self.semigroup[0] * ox)

    def orders(self) -> dict:
        return {al: self.term_order(al).value for al in self.terms}

    def reconstruct(self) -> BiSeries:
        out = BiSeries({}, None)
        for al, a in self.terms.items():
            t = a
            for fk, e in zip(self.semiroots, al):
                t = t * fk**e
            out = out + t
        return out


def semiroot_expansion(B, f, trunc: int = DEFAULT_TRUNC) -> SemirootExpansion:
    """B = sum a_alpha(x) f_1^alpha_1 ... f_g^alpha_g with 0 <= alpha_k < n_k."""
    B, f = as_series(B), as_series(f)
    n = f.ydeg()
    if not B.is_zero() and B.ydeg() >= n - 1:
        raise DegreeTooLarge("deg_y B must be < deg_y f - 1")
    _, vs, es, ns = _branch_data(f, trunc)
    g = len(vs) - 1
    roots = [tschirnhausen_root(f, es[k - 1]) for k in range(1, g + 1)]
    terms: dict = {}

    def expand(P: BiSeries, level: int, suffix: tuple):
        if P.is_zero():
            return
        if level == 0:
            terms[suffix] = P
            return
        for i, c in enumerate(adic_expansion(P, roots[level - 1])):
            if i >= ns[level - 1]:
                raise AssertionError("semiroot exponent exceeds n_k - 1")
            expand(c, level - 1, (i,) + suffix)

    expand(B, g, ())
    exp = SemirootExpansion(terms, roots, vs, ns)
    if terms:
        ords = list(exp.orders().values())
        if len(set(ords)) != len(ords):
            raise AssertionError("semiroot term orders are not pairwise distinct")
        if tuple(n_ - 1 for n_ in ns) in terms:
            raise AssertionError("all alpha_k = n_k - 1 cannot occur")
    return exp


def is_K_nm(f, trunc: int = DEFAULT_TRUNC) -> tuple[int, int] | None:
    """(n, m) when f is an irreducible genus-one branch with exponents (n, m)."""
    f = as_series(f)
    _, f1, _ = make_y_general(f)
    bs = newton_puiseux(f1, 2 * trunc)
    if len(bs) != 1:
        return None
    beta = bs[0].char_exponents
    if len(beta) != 2:
        return None
    return beta[0], beta[1]

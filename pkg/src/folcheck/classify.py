"""Decision procedures assembled into verdicts that carry their evidence."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .cert import CertInt
from .curves import (
    CurveSpec,
    _monic,
    factor_branches,
    intersection_number,
    is_K_nm,
    milnor_number,
)
from .errors import (
    FolError,
    HypothesisFailed,
    InfiniteIntersection,
    NotInvariant,
    NotLorayShape,
    TruncationInsufficient,
    UnsupportedExtension,
)
from .exact import classify_cyclo_values
from .foliations import (
    MonomialSetup,
    OneForm,
    classify_linear_part,
    cofactor,
    gsv_index,
    loray_decompose,
    milnor_foliation,
    mult,
    pullback_linear,
    shift_y,
    substitute_y,
    toric_strict_transform,
    weierstrass_form,
)
from .series import (
    DEFAULT_TRUNC,
    BiSeries,
    WPoly,
    make_y_general,
    newton_polygon,
    order,
    weierstrass_polynomial,
    weighted_order,
)

HOLDS, FAILS, UNKNOWN = "Holds", "Fails", "Unknown"
CONDITIONAL = "conditional on C being the full union of separatrices"


@dataclass
class Verdict:
    criterion: str
    result: str
    evidence: list = field(default_factory=list)
    caveats: list = field(default_factory=list)

    @property
    def holds(self) -> bool | None:
        return {HOLDS: True, FAILS: False}.get(self.result)

    def add(self, name: str, value) -> None:
        self.evidence.append((name, value))

    def get(self, name: str):
        for k, v in self.evidence:
            if k == name:
                return v
        raise KeyError(name)


def _tri(flag: bool | None) -> str:
    return UNKNOWN if flag is None else (HOLDS if flag else FAILS)


def _all(*flags) -> bool | None:
    if any(f is False for f in flags):
        return False
    if any(f is None for f in flags):
        return None
    return True


def _as_spec(C, trunc) -> CurveSpec:
    if isinstance(C, CurveSpec):
        return C
    if isinstance(C, (list, tuple)):
        return CurveSpec(C, trunc)
    return CurveSpec([C], trunc)


def _safe_i0(f, g, trunc) -> CertInt:
    try:
        return intersection_number(f, g, trunc)
    except InfiniteIntersection:
        return CertInt.infinity()


def _unit_flag(h: BiSeries) -> bool | None:
    if h.const_term():
        return True
    if h.prec is not None and h.prec < 1:
        return None
    return False


class Analysis:
    """Lazily computed data shared by the individual checks."""

    def __init__(self, W: OneForm, C, trunc: int = DEFAULT_TRUNC):
        if W.is_zero() and W.exact:
            raise ValueError("the zero 1-form defines no foliation")
        self.W = W
        self.C = _as_spec(C, trunc)
        self.trunc = trunc
        self.f = self.C.product

    @cached_property
    def prepared(self):
        """(L, W', P): a linear change making f y-general and P distinguished."""
        L, F1, _ = make_y_general(self.f)
        W1 = pullback_linear(self.W, L)
        if WPoly.accepts(F1) and F1.ydeg() == order(F1).value:
            return L, W1, WPoly(F1)
        P, _ = weierstrass_polynomial(F1, self.trunc, with_unit=False)
        return L, W1, P

    @cached_property
    def wform(self):
        _, W1, P = self.prepared
        if P.ydeg < 2:
            return None
        return weierstrass_form(W1, P, self.trunc)

    @cached_property
    def mu_f(self) -> CertInt:
        return milnor_number(self.C, self.trunc)

    @cached_property
    def mu_W(self) -> CertInt:
        return milnor_foliation(self.W, self.trunc)

    @cached_property
    def mult_W(self) -> CertInt:
        return mult(self.W)

    @cached_property
    def mult_df(self) -> CertInt:
        return mult(OneForm.exact_differential(self.f))

    @cached_property
    def membership(self) -> Verdict:
        return validate_membership(self.W, self.C, self.trunc, _ctx=self)

    @property
    def invariant(self) -> bool:
        return self.membership.result == HOLDS

    def conditional(self, v: Verdict) -> Verdict:
        if self.invariant and not self.membership.get("certified"):
            v.caveats.append(CONDITIONAL)
        return v

    @cached_property
    def irreducible(self) -> bool | None:
        if len(self.C.factors) != 1:
            return False
        try:
            return len(factor_branches(self.C.factors[0], self.trunc)) == 1
        except (UnsupportedExtension, TruncationInsufficient):
            return None

    @cached_property
    def loray(self) -> MonomialSetup | None:
        mono = {(i, j): a for (i, j), a in self.f.coeffs.items()}
        if not self.f.exact or len(mono) != 2:
            return None
        ys = [j for (i, j), a in mono.items() if i == 0 and a == 1]
        xs = [i for (i, j), a in mono.items() if j == 0 and a == -1]
        if not ys or not xs or ys[0] > xs[0]:
            return None
        try:
            return loray_decompose(self.W, ys[0], xs[0], self.trunc)
        except NotLorayShape:
            return None


# ---------------------------------------------------------------------------
# individual checks


def validate_membership(W: OneForm, C, trunc: int = DEFAULT_TRUNC, _ctx: Analysis | None = None) -> Verdict:
    """Is every factor of C invariant, and is C certifiably the whole separatrix set?"""
    ctx = _ctx or Analysis(W, C, trunc)
    v = Verdict("membership", UNKNOWN)
    for idx, g in enumerate(ctx.C.factors):
        try:
            cofactor(W, g, trunc)
        except NotInvariant:
            v.result = FAILS
            v.add(f"factor {idx} invariant", False)
            v.caveats.append(f"factor {idx} does not divide W ^ df")
            return v
        except TruncationInsufficient as exc:
            v.caveats.append(f"invariance of factor {idx} not decided: {exc}")
            return v
        v.add(f"factor {idx} invariant", True)
    try:
        mu_W = ctx.mu_W
    except InfiniteIntersection:
        v.result = FAILS
        v.caveats.append("A and B share a factor: W is not saturated")
        return v
    v.add("mu(F_W)", mu_W)
    of = order(ctx.f)
    v.add("mult(W)", ctx.mult_W)
    v.add("ord(f)", of)
    bound = ctx.mult_W.gt(of.value - 2) if of.exact else None
    if bound is False:
        v.result = FAILS
        v.caveats.append("mult(W) < ord(f) - 1: C cannot be the separatrix set of a nondicritical foliation")
        return v
    v.result = HOLDS
    certified = False
    wf = ctx.wform
    _, _, P = ctx.prepared
    if wf is not None:
        unit = _unit_flag(wf.h)
        v.add("h(0,0)", wf.h.const_term())
        certified = bool(unit) and P.ydeg == order(P.series).value
    else:
        v.caveats.append("smooth curve: Weierstrass form not defined")
    lin = classify_linear_part(W)
    if lin.eigenvalue_ratio is not None and lin.eigenvalue_ratio > 0:
        certified = False
        v.caveats.append(
            f"linear part is a node with eigenvalue ratio {lin.eigenvalue_ratio} in Q+; F_W may be dicritical"
        )
    node = _resonant_nodes(ctx)
    if node:
        certified = False
        v.caveats.append(
            "toric transform has a node with eigenvalue ratio in Q+ at xi = zeta^k for k in "
            f"{node}; F_W may be dicritical"
        )
    v.add("certified", certified)
    if not certified:
        v.caveats.append("invariant but union-of-separatrices uncertified")
    return v


def _resonant_nodes(ctx: Analysis) -> list[int]:
    setup = ctx.loray
    if setup is None:
        return []
    try:
        T = toric_strict_transform(setup)
    except (HypothesisFailed, TruncationInsufficient):
        return []
    return [c.root_index for c in classify_cyclo_values(T.value) if c.kind == "NegativeRational"]


def check_second_type(W: OneForm, C, trunc: int = DEFAULT_TRUNC, _ctx: Analysis | None = None) -> Verdict:
    ctx = _ctx or Analysis(W, C, trunc)
    v = Verdict("second_type", UNKNOWN)
    v.add("mult(W)", ctx.mult_W)
    v.add("mult(df)", ctx.mult_df)
    if not ctx.invariant:
        v.caveats.append("membership not established")
        return v
    if ctx.mult_W.exact and ctx.mult_df.exact:
        v.result = _tri(ctx.mult_W.value == ctx.mult_df.value)
    return ctx.conditional(v)


def check_gc_general(W: OneForm, C, trunc: int = DEFAULT_TRUNC, _ctx: Analysis | None = None) -> Verdict:
    """h unit and i0(calB, f) = mu(f) + i0(f, x) - 1, in coordinates where f is y-general."""
    ctx = _ctx or Analysis(W, C, trunc)
    v = Verdict("gc_general", UNKNOWN)
    if not ctx.invariant:
        v.caveats.append("membership not established")
        return v
    wf = ctx.wform
    if wf is None:
        v.caveats.append("smooth curve: Weierstrass form not defined")
        return v
    L, W1, P = ctx.prepared
    if not L.is_identity:
        v.add("coordinate change", L.describe())
    unit = _unit_flag(wf.h)
    v.add("h(0,0)", wf.h.const_term())
    iB = _safe_i0(W1.B, P, trunc)
    mu = ctx.mu_f
    ix = intersection_number(P, BiSeries.x(), trunc)
    v.add("i0(calB,f)", iB)
    v.add("mu(f)", mu)
    v.add("i0(f,x)", ix)
    if not (mu.exact and ix.exact):
        return ctx.conditional(v)
    target = mu.value + ix.value - 1
    v.add("mu(f)+i0(f,x)-1", target)
    v.result = _tri(_all(unit, iB.eq(target)))
    return ctx.conditional(v)


def check_gc_irreducible(W: OneForm, C, trunc: int = DEFAULT_TRUNC, _ctx: Analysis | None = None) -> Verdict | None:
    """h unit and i0(B, f) > i0(f_y, f); None when f is not irreducible."""
    ctx = _ctx or Analysis(W, C, trunc)
    irr = ctx.irreducible
    if irr is False:
        return None
    v = Verdict("gc_irreducible", UNKNOWN)
    if irr is None:
        v.caveats.append("irreducibility not decidable over Q")
        return v
    if not ctx.invariant:
        v.caveats.append("membership not established")
        return v
    wf = ctx.wform
    if wf is None:
        v.caveats.append("smooth curve: Weierstrass form not defined")
        return v
    _, _, P = ctx.prepared
    F = P.series
    unit = _unit_flag(wf.h)
    iB = _safe_i0(wf.B, F, trunc)
    ify = intersection_number(F.dy(), F, trunc)
    iA = _safe_i0(wf.A, F, trunc)
    ifx = intersection_number(F.dx(), F, trunc)
    v.add("h(0,0)", wf.h.const_term())
    v.add("i0(B,f)", iB)
    v.add("i0(f_y,f)", ify)
    v.add("i0(A,f)", iA)
    v.add("i0(f_x,f)", ifx)
    yside = iB.gt(ify.value) if ify.exact else None
    xside = iA.gt(ifx.value) if ifx.exact else None
    v.add("A-side holds", xside)
    if yside is not None and xside is not None and yside != xside:
        v.caveats.append("A-side and B-side thresholds disagree")
    if all(c.exact and not c.is_infinite for c in (iA, iB, ify, ifx)):
        if iA.value - ifx.value != iB.value - ify.value:
            v.caveats.append("difference identity i0(A,f)-i0(f_x,f) = i0(B,f)-i0(f_y,f) violated")
    v.result = _tri(_all(unit, yside))
    return ctx.conditional(v)


def _genus1_coordinates(ctx: Analysis, n: int, m: int):
    """W and f in coordinates where NP(f) is the single edge (0,n)-(m,0)."""
    _, W1, P = ctx.prepared
    F = P.series
    target = ((0, n), (m, 0))
    if newton_polygon(F).vertices == target:
        return W1, P, None
    F = _monic(F)
    a1 = BiSeries({(i, 0): c for (i, j), c in F.coeffs.items() if j == n - 1}, F.prec)
    s = a1 * Fraction(-1, n)
    F2 = substitute_y(F, s)
    W2 = shift_y(W1, s)
    return W2, WPoly(F2), s


def check_gc_genus1(W: OneForm, C, trunc: int = DEFAULT_TRUNC, _ctx: Analysis | None = None) -> Verdict | None:
    """upsilon_{n,m}(omega) > nm for f in K(n, m); None when f is not of that type."""
    ctx = _ctx or Analysis(W, C, trunc)
    if ctx.irreducible is not True:
        return None
    try:
        nm_pair = is_K_nm(ctx.C.factors[0], trunc)
    except (UnsupportedExtension, TruncationInsufficient):
        nm_pair = None
    if nm_pair is None:
        return None
    n, m = nm_pair
    v = Verdict("gc_genus1", UNKNOWN)
    v.add("(n,m)", f"({n},{m})")
    if not ctx.invariant:
        v.caveats.append("membership not established")
        return v
    W2, P2, shift = _genus1_coordinates(ctx, n, m)
    if shift is not None:
        v.add("Tschirnhausen shift", f"y -> y + ({shift!r})")
    if newton_polygon(P2.series).vertices != ((0, n), (m, 0)):
        v.caveats.append("Newton polygon of f is not the edge (0,n)-(m,0)")
        return v
    wf = weierstrass_form(W2, P2, trunc)
    omega = wf.omega
    upsilon = weighted_order(omega, n, m)
    unit = _unit_flag(wf.h)
    v.add("h(0,0)", wf.h.const_term())
    v.add("upsilon(omega)", upsilon)
    v.add("nm", n * m)
    v.add("A_{m,0}", wf.A[(m - 1, 0)])
    if wf.A[(m - 1, 0)]:
        v.caveats.append("A_{m,0} is nonzero, so W is not in [Fol(f)]")
    v.result = _tri(_all(unit, upsilon.gt(n * m)))
    return ctx.conditional(v)


def check_gc_monomial(setup: MonomialSetup, second_type: bool | None = None) -> Verdict:
    """Weighted-order threshold on Delta plus the cyclotomic sign test at the points (xi, 0)."""
    v = Verdict("gc_monomial", UNKNOWN)
    n, m = setup.n, setup.m
    floor = m * n - n - m
    wo = setup.delta_weighted_order()
    v.add("(n,m,d)", f"({n},{m},{setup.d})")
    v.add("(p,q)", f"({setup.p},{setup.q})")
    v.add("upsilon(Delta)", wo)
    v.add("mn-n-m", floor)
    if not setup.in_box:
        v.caveats.append("Delta lies outside the box 0<=i<=m-2, 0<=j<=n-2; only its weighted order and critical terms are used")
    clause1 = wo.gt(floor - 1)
    v.add("clause 1", clause1)
    if clause1 is not True:
        v.result = _tri(clause1)
        return v
    T = toric_strict_transform(setup)
    v.add("exceptional factor", f"u^{T.exceptional[0]} v^{T.exceptional[1]}")
    formula = setup.singular_point_value()
    if formula.as_upoly(1) != T.value.as_upoly(1):
        raise AssertionError("critical-term formula disagrees with the strict transform")
    classes = classify_cyclo_values(T.value)
    bad = []
    for c in classes:
        label = c.kind if c.value is None else f"{c.kind} {c.value}"
        v.add(f"1+Sigma at zeta^{c.root_index}", label)
        if c.kind in ("Zero", "NegativeRational"):
            bad.append(c.root_index)
    clause2 = not bad
    v.add("clause 2", clause2)
    remark = setup.remark_sufficient()
    if remark is not None:
        v.add("remark condition i0(Delta',f) > mn-m-n", remark)
        if remark and not clause2:
            raise AssertionError("remark condition holds but clause 2 fails")
    if second_type is not None:
        v.add("second type", second_type)
    v.result = _tri(clause2)
    return v


# ---------------------------------------------------------------------------
# the full report


@dataclass
class Report:
    membership: Verdict
    second_type: Verdict
    gc_general: Verdict
    gc_irreducible: Verdict | None
    gc_genus1: Verdict | None
    gc_monomial: Verdict | None
    np_equality: Verdict
    consistency: Verdict
    indices: dict

    def verdicts(self) -> list[Verdict]:
        return [
            v
            for v in (
                self.membership,
                self.second_type,
                self.gc_general,
                self.gc_irreducible,
                self.gc_genus1,
                self.gc_monomial,
                self.np_equality,
                self.consistency,
            )
            if v is not None
        ]


def check_np_equality(W: OneForm, C, trunc: int = DEFAULT_TRUNC) -> Verdict:
    ctx_f = _as_spec(C, trunc).product
    v = Verdict("np_equality", UNKNOWN)
    npW, npf = newton_polygon(W), newton_polygon(ctx_f)
    v.add("NP(W)", npW.vertices)
    v.add("NP(f)", npf.vertices)
    if W.prec is not None or ctx_f.prec is not None:
        v.caveats.append("computed on known coefficients only")
    v.result = _tri(npW == npf)
    return v


def full_report(W: OneForm, C, trunc: int = DEFAULT_TRUNC) -> Report:
    ctx = Analysis(W, C, trunc)
    membership = ctx.membership
    second = check_second_type(W, C, trunc, _ctx=ctx)
    general = check_gc_general(W, C, trunc, _ctx=ctx)
    irred = check_gc_irreducible(W, C, trunc, _ctx=ctx)
    genus1 = check_gc_genus1(W, C, trunc, _ctx=ctx)
    mono = None
    if ctx.loray is not None:
        mono = check_gc_monomial(ctx.loray, second.holds)
        if not ctx.invariant:
            mono.caveats.append("membership not established")
            mono.result = UNKNOWN
    npv = check_np_equality(W, ctx.C, trunc)
    indices = {"mult(W)": ctx.mult_W, "mult(df)": ctx.mult_df, "mu(f)": ctx.mu_f}
    try:
        indices["mu(F_W)"] = ctx.mu_W
    except InfiniteIntersection:
        indices["mu(F_W)"] = CertInt.infinity()
    if ctx.invariant:
        try:
            indices["GSV"] = gsv_index(W, ctx.C, trunc)
        except FolError as exc:
            indices["GSV"] = None
            general.caveats.append(f"GSV not computed: {exc}")
    else:
        indices["GSV"] = None
    consistency = _consistency(ctx, general, irred, genus1, mono, second, npv, indices)
    return Report(membership, second, general, irred, genus1, mono, npv, consistency, indices)


def _consistency(ctx, general, irred, genus1, mono, second, npv, indices) -> Verdict:
    v = Verdict("consistency", HOLDS)
    problems = []
    certified = ctx.invariant and bool(ctx.membership.get("certified"))
    others = [x for x in (irred, genus1) if x is not None and x.result != UNKNOWN]
    if certified and mono is not None and mono.result != UNKNOWN:
        others.append(mono)
    if general.result != UNKNOWN:
        for o in others:
            if o.result != general.result:
                problems.append(f"{o.criterion} = {o.result} but gc_general = {general.result}")
    if general.result == HOLDS:
        mu_f, mu_W = indices.get("mu(f)"), indices.get("mu(F_W)")
        if mu_f is not None and mu_W is not None and mu_f.exact and mu_W.exact and mu_f.value != mu_W.value:
            problems.append(f"GC but mu(F_W) = {mu_W} != mu(f) = {mu_f}")
        gsv = indices.get("GSV")
        if gsv is not None and gsv.exact and gsv.value != 0:
            problems.append(f"GC but GSV = {gsv}")
        if npv.result == FAILS:
            problems.append("GC but NP(W) != NP(f)")
        if second.result == FAILS:
            problems.append("GC but not of second type")
    if not ctx.invariant:
        for x in (general, irred, genus1, mono):
            if x is not None and x.result == HOLDS:
                problems.append(f"{x.criterion} Holds without membership")
    for p in problems:
        v.add("violation", p)
    if problems:
        v.result = FAILS
    return v

"""Acceptance criteria 1-7, exact arithmetic throughout.

Each test records a one-line PASS/FAIL summary that is printed at the end of
the pytest run (see ``conftest.pytest_terminal_summary``).
"""
import random
import time
from fractions import Fraction

import sympy

from folcheck.classify import (
    FAILS,
    HOLDS,
    Analysis,
    check_gc_general,
    check_gc_genus1,
    check_gc_irreducible,
    check_gc_monomial,
    check_np_equality,
    full_report,
)
from folcheck.curves import (
    CurveSpec,
    approximate_root,
    intersection_number,
    is_K_nm,
    milnor_from_semigroup,
    milnor_number,
    newton_puiseux,
    parametric_intersection,
    semigroup_from_exponents,
)
from folcheck.foliations import (
    MonomialSetup,
    OneForm,
    classify_linear_part,
    gsv_index,
    mult,
    shift_y,
    substitute_y,
    toric_strict_transform,
    weierstrass_form,
)
from folcheck.series import BiSeries, newton_polygon

from conftest import P, record_criterion

SEED = 20240611
TIME_LIMIT = 5.0


def timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    elapsed = time.perf_counter() - t0
    assert elapsed < TIME_LIMIT, f"{fn.__name__} took {elapsed:.2f}s"
    return out


# ---------------------------------------------------------------------------
# criterion 1


def test_criterion_1_saddle_node():
    with record_criterion(1, "y^2 dx + x dy: Jacobian [[-1,0],[0,0]], SaddleNode"):
        c = classify_linear_part(OneForm(P("y^2"), P("x")))
        assert c.jacobian == ((-1, 0), (0, 0))
        assert c.kind == "SaddleNode"
        assert (c.trace, c.det) == (-1, 0)  # eigenvalues -1 and 0


# ---------------------------------------------------------------------------
# criterion 2

W_C = OneForm(P("-4*x^3-4*x^2*y^2"), P("3*y^2+3*x^3*y"))
F34 = P("y^3 - x^4")


def test_criterion_2_final_example():
    with record_criterion(2, "W_c (c=1): h=1, i0(A,f)=14, i0(B,f)=13>8, i0(calB,f)=8=6+3-1, GSV=0, mu=6"):
        wf = weierstrass_form(W_C, F34)
        assert wf.h == P("1")
        assert intersection_number(wf.A, F34).value == 14
        assert intersection_number(wf.B, F34).value == 13
        assert intersection_number(F34.dy(), F34).value == 8
        v = timed(check_gc_general, W_C, F34)
        assert v.result == HOLDS
        assert v.get("i0(calB,f)").value == 8
        assert (v.get("mu(f)").value, v.get("i0(f,x)").value, v.get("mu(f)+i0(f,x)-1")) == (6, 3, 8)
        r = timed(full_report, W_C, F34)
        assert r.indices["GSV"].value == 0
        assert r.indices["mu(F_W)"].value == r.indices["mu(f)"].value == 6


# ---------------------------------------------------------------------------
# criterion 3

SWEEP = ["-3", "-2", "-1", "-1/2", "0", "1", "2"]


def test_criterion_3_monomial_family():
    with record_criterion(3, "monomial (3,6), Delta = a*x*y: u^2 v^5, W' = ((3-6u^3)-3au)v du + ..., Fails exactly for a <= -1"):
        u, v, a = sympy.symbols("u v a")
        for text in SWEEP:
            setup = MonomialSetup(3, 6, P(f"{text}*x*y"))
            T = timed(toric_strict_transform, setup)
            assert T.exceptional == (2, 5)
            expected = sympy.expand(((3 - 6 * u**3) - 3 * a * u) * v).subs(a, sympy.Rational(text))
            got = sum(sympy.Rational(c.numerator, c.denominator) * u**i * v**j for (i, j), c in T.Wprime.A.coeffs.items())
            assert sympy.expand(got - expected) == 0
            verdict = timed(check_gc_monomial, setup)
            assert verdict.result == (FAILS if Fraction(text) <= -1 else HOLDS), text


# ---------------------------------------------------------------------------
# criterion 4


def test_criterion_4_saravia():
    with record_criterion(4, "three lines, b=2: NP(W) = NP(xy(x-y)) = edge (1,2)-(2,1)"):
        W = OneForm(P("x*y - y^3"), P("x*y - 2*x^2 + x*y^2"))
        C = CurveSpec([P("x"), P("y"), P("x - y")])
        assert newton_polygon(W).vertices == ((1, 2), (2, 1))
        assert newton_polygon(W) == newton_polygon(P("x*y*(x - y)"))
        assert check_np_equality(W, C).result == HOLDS
        # NP equality holds although the foliation is not a generalized curve here
        assert timed(full_report, W, C).gc_general.result == FAILS


# ---------------------------------------------------------------------------
# criterion 5: randomized properties

COPRIME = [(2, 3), (2, 5), (3, 4), (3, 5), (2, 7), (4, 5)]


def _higher_terms(rng, n, m, count, max_j=None):
    """Random monomials x^i y^j of weighted degree n*i + m*j > n*m."""
    out = {}
    max_j = n - 1 if max_j is None else max_j
    while len(out) < count:
        j = rng.randint(0, max_j)
        i = rng.randint(1, m + 3)
        if n * i + m * j > n * m:
            out[(i, j)] = Fraction(rng.choice([-3, -2, -1, 1, 2, 5]), rng.choice([1, 1, 2, 3]))
    return BiSeries(out)


def family_curve(rng, n, m, extra=2, max_j=None):
    return P(f"y^{n} - x^{m}") + _higher_terms(rng, n, m, extra, max_j)


def random_poly(rng, deg, terms, const=False):
    out = {}
    while len(out) < terms:
        i, j = rng.randint(0, deg), rng.randint(0, deg)
        if (i, j) == (0, 0) and not const:
            continue
        if i + j <= deg:
            out[(i, j)] = Fraction(rng.randint(-4, 4) or 1, rng.choice([1, 2]))
    return BiSeries(out)


def random_unit(rng):
    return BiSeries.const(rng.choice([1, 2, -1, Fraction(1, 3)])) + random_poly(rng, 2, 2)


def _teissier(rng):
    n, m = rng.choice(COPRIME + [(2, 4), (3, 6), (2, 2), (4, 6)])
    f = family_curve(rng, n, m, extra=rng.randint(0, 2))
    mu = milnor_number(f, crosscheck=False)
    lhs = intersection_number(f, f.dy())
    rhs = mu.value + intersection_number(f, P("x")).value - 1
    assert lhs.value == rhs, f
    return 1


def _resultant_vs_parametric(rng):
    n, m = rng.choice(COPRIME)
    f = family_curve(rng, n, m)
    h = random_poly(rng, 4, 3)
    a = intersection_number(f, h)
    b = parametric_intersection(f, h)
    assert b is not None and a.value == b.value, (f, h)
    return 1


def _hamiltonian(rng):
    n, m = rng.choice(COPRIME)
    f = family_curve(rng, n, m)
    W = OneForm.exact_differential(f)
    assert gsv_index(W, f).value == 0
    assert check_gc_general(W, f).result == HOLDS
    return 1


def _difference_identity(rng):
    n, m = rng.choice(COPRIME)
    f = family_curve(rng, n, m)
    u = random_unit(rng)
    W = OneForm(u * f.dx(), u * f.dy()) + OneForm(f * random_poly(rng, 3, 2, True), f * random_poly(rng, 3, 2, True))
    wf = weierstrass_form(W, f, 48)
    if wf.A.is_zero() and wf.B.is_zero():
        return 0
    iA, iB = intersection_number(wf.A, f), intersection_number(wf.B, f)
    ifx, ify = intersection_number(f.dx(), f), intersection_number(f.dy(), f)
    assert iA.value - ifx.value == iB.value - ify.value, (f, W)
    return 1


def _coefficient_lemma(rng):
    n, m = rng.choice(COPRIME)
    f = family_curve(rng, n, m, max_j=n - 2)
    assert newton_polygon(f).vertices == ((0, n), (m, 0))
    u = random_unit(rng)
    W = OneForm(u * f.dx() + f * random_poly(rng, 3, 2, True), u * f.dy() + f * random_poly(rng, 3, 2, True))
    wf = weierstrass_form(W, f, 48)
    assert wf.A[(m - 1, 0)] == 0, (f, W)
    return 1


def _differ_lemma(rng):
    n, m = rng.choice([(3, 4), (3, 5), (4, 5), (5, 6), (3, 7)])
    f = family_curve(rng, n, m)
    B = BiSeries({})
    while B.is_zero():
        B = BiSeries({(i, j): c for (i, j), c in random_poly(rng, 6, 3).coeffs.items() if j < n - 1})
    assert intersection_number(B, f).value != intersection_number(f.dy(), f).value, (f, B)
    return 1


PROPERTIES = [
    ("Teissier identity", _teissier, 40),
    ("resultant vs parametric i0", _resultant_vs_parametric, 40),
    ("Hamiltonian GSV = 0 and gc_general", _hamiltonian, 35),
    ("difference identity", _difference_identity, 35),
    ("A_{m,0} = 0", _coefficient_lemma, 30),
    ("i0(B,f) != i0(f_y,f)", _differ_lemma, 30),
]


def test_criterion_5_property_suite():
    with record_criterion(5, "randomized property suite") as rec:
        rng = random.Random(SEED)
        total = 0
        counts = {}
        for name, fn, k in PROPERTIES:
            done = 0
            while done < k:
                done += timed(fn, rng)
            counts[name] = done
            total += done
        assert total >= 200
        rec.detail = f"{total} instances: " + ", ".join(f"{k} {v}" for k, v in counts.items())


# ---------------------------------------------------------------------------
# criterion 6

F_GENUS2 = P("(y^2-x^3)^2 - x^5*y")
OTHER_V2 = 19


def test_criterion_6_semigroup_and_semiroots():
    with record_criterion(6, "(4,6,7) -> <4,6,13>, mu = 16; approximate root y^2-x^3 with i0 = v_2") as rec:
        vs, _, ns = semigroup_from_exponents((4, 6, 7))
        assert vs == (4, 6, 13)
        # gap-counting oracle
        limit = 200
        member = [False] * (limit + 1)
        member[0] = True
        for k in range(1, limit + 1):
            member[k] = any(k >= g and member[k - g] for g in vs)
        gaps = [k for k in range(limit + 1) if not member[k]]
        assert milnor_from_semigroup(vs, ns) == 16 == 2 * len(gaps) == max(gaps) + 1
        (b,) = newton_puiseux(F_GENUS2)
        assert b.char_exponents == (4, 6, 7)
        assert milnor_number(F_GENUS2).value == 16
        root = approximate_root(F_GENUS2, 2)
        assert root == P("y^2 - x^3")
        i0 = intersection_number(F_GENUS2, root)
        assert i0.value == vs[2]
        assert approximate_root(F_GENUS2, 1) == P("y")
        assert intersection_number(F_GENUS2, P("y")).value == vs[1]
        # 19 is v_2 of <4,6,19>, the semigroup of (y^2-x^3)^2 - x^8*y, not of this branch.
        rec.detail = f"i0(f, y^2-x^3) = {i0.value} = v_2; {OTHER_V2} is v_2 of <4,6,19> instead"
        other = P("(y^2-x^3)^2 - x^8*y")
        assert semigroup_from_exponents((4, 6, 13))[0][2] == OTHER_V2
        assert intersection_number(other, approximate_root(other, 2)).value == OTHER_V2


# ---------------------------------------------------------------------------
# criterion 7: checker agreement on generated foliations

PAIRS = [(2, 3), (3, 4), (2, 5)]


def _delta(rng, n, m):
    """Random Delta; about half the time with weighted order below nm - n - m."""
    out = {}
    low = rng.random() < 0.5
    target = n * m - n - m
    while not out:
        for _ in range(rng.randint(1, 3)):
            i, j = rng.randint(0, m), rng.randint(0, n)
            if i + j < n - 2:
                continue  # keeps mult(W) >= ord(f) - 1
            w = n * i + m * j
            if (w < target) == low:
                out[(i, j)] = Fraction(rng.choice([-2, -1, 1, 3]), rng.choice([1, 2]))
    return BiSeries(out)


def generated_case(rng):
    """(W, f, oracle): a Loray model moved by y -> y + phi(x) and scaled by a unit."""
    n, m = rng.choice(PAIRS)
    delta = _delta(rng, n, m)
    g = random_poly(rng, 2, rng.randint(0, 2)) if rng.random() < 0.5 else BiSeries({})
    setup = MonomialSetup(n, m, delta, g)
    W, f = setup.W, setup.f
    if rng.random() < 0.6:
        phi = BiSeries({(k, 0): Fraction(rng.choice([-1, 1, 2])) for k in rng.sample(range(1, 4), rng.randint(1, 2))})
        W, f = shift_y(W, phi), substitute_y(f, phi)
    u = random_unit(rng)
    W = OneForm(u * W.A, u * W.B)
    oracle = setup.delta_weighted_order().value >= n * m - n - m
    return W, f, (n, m), oracle


def test_criterion_7_checker_agreement():
    with record_criterion(7, "50 generated W in [Fol(f)], f in K(n,m): general <=> irreducible <=> genus1") as rec:
        rng = random.Random(SEED + 7)
        holds = 0
        for k in range(50):
            W, f, nm, oracle = generated_case(rng)
            assert is_K_nm(f) == nm
            ctx = Analysis(W, f)
            general = timed(check_gc_general, W, f, _ctx=ctx)
            irred = check_gc_irreducible(W, f, _ctx=ctx)
            genus1 = check_gc_genus1(W, f, _ctx=ctx)
            results = (general.result, irred.result, genus1.result)
            assert results in ((HOLDS,) * 3, (FAILS,) * 3), (k, results, W, f)
            assert (general.result == HOLDS) == oracle, (k, W, f)
            if general.result == HOLDS:
                holds += 1
                assert mult(W).value == mult(OneForm.exact_differential(f)).value
        assert 0 < holds < 50
        rec.detail = f"{holds} Holds, {50 - holds} Fails, all three checkers agree"

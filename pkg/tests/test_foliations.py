from fractions import Fraction

import pytest
import sympy

from folcheck.errors import HypothesisFailed, NotInvariant, NotLorayShape
from folcheck.foliations import (
    MonomialSetup,
    OneForm,
    classify_linear_part,
    cofactor,
    factor_gsv,
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
from folcheck.curves import CurveSpec
from folcheck.exact import UPoly
from folcheck.series import BiSeries, make_y_general

from conftest import P

W_C = OneForm(P("-4*x^3-4*x^2*y^2"), P("3*y^2+3*x^3*y"))


def df(text):
    return OneForm.exact_differential(P(text))


def test_mult():
    assert mult(OneForm(P("y^2"), P("x"))).value == 1
    assert mult(W_C).value == 2
    assert mult(df("y^4 - x^5")).value == 3


def test_linear_part_saddle_node():
    c = classify_linear_part(OneForm(P("y^2"), P("x")))
    assert c.jacobian == ((-1, 0), (0, 0))
    assert c.kind == "SaddleNode"


def test_linear_part_simple_and_node():
    c = classify_linear_part(OneForm(P("y"), P("x")))
    assert c.jacobian == ((-1, 0), (0, 1)) and c.kind == "Simple" and c.eigenvalue_ratio == -1
    c = classify_linear_part(OneForm(P("-3*y"), P("2*x")))
    assert c.jacobian == ((-2, 0), (0, -3))
    assert c.kind == "NotIrreducibleSingularity"
    assert c.eigenvalue_ratio in (Fraction(3, 2), Fraction(2, 3))


def test_linear_part_irrational_eigenvalues():
    # x' = x + 2y, y' = x: eigenvalues 1 +- sqrt(3)
    c = classify_linear_part(OneForm(P("-x"), P("x + 2*y")))
    assert c.kind == "Simple"


def test_cofactor_examples():
    assert cofactor(df("y^2 - x^3"), P("y^2 - x^3")).is_zero()
    g = cofactor(OneForm(P("-3*y"), P("2*x")), P("y^2 - x^3"))
    assert g.exact and g.total_degree() == 0 and abs(g.const_term()) == 6
    assert cofactor(OneForm(P("y^2"), P("x")), P("y")) == P("y")


def test_cofactor_identity():
    f = P("y^3 - x^4")
    g = cofactor(W_C, f)
    assert W_C.wedge_df(f) == g * f


def test_not_invariant():
    with pytest.raises(NotInvariant):
        cofactor(df("y^2 - x^3") + OneForm(P("y"), P("0")), P("y^2 - x^3"))


def test_weierstrass_form_final_example():
    wf = weierstrass_form(W_C, P("y^3 - x^4"))
    assert wf.h == P("1") and wf.p.is_zero()
    assert wf.A == P("-4*x^2*y^2") and wf.B == P("3*x^3*y")


def test_weierstrass_form_trivial_cases():
    f = P("y^3 - x^4")
    wf = weierstrass_form(OneForm.exact_differential(f), f)
    assert (wf.h, wf.p) == (P("1"), BiSeries({})) and wf.A.is_zero() and wf.B.is_zero()
    wf = weierstrass_form(OneForm(f, BiSeries({})), f)
    assert wf.h.is_zero() and wf.p == P("1") and wf.A.is_zero() and wf.B.is_zero()


def test_weierstrass_form_reconstructs_generic_form():
    f = P("(y^2-x^3)^2 - x^5*y")
    W = OneForm(f * P("1 + x") + P("x^2*y^3 + x^9"), f.dy() * P("2 - y") + P("x^4*y^2 + x^7"))
    wf = weierstrass_form(W, f, 40)
    assert wf.B.ydeg() < 3 and wf.A.ydeg() < 4
    assert wf.reconstruct().same_to(W)


def test_gsv_examples():
    assert gsv_index(df("y^3 - x^4"), P("y^3 - x^4")).value == 0
    assert gsv_index(W_C, P("y^3 - x^4")).value == 0
    spec = CurveSpec([P("y - x"), P("y + x")])
    W = df("y^2 - x^2")
    assert [factor_gsv(W, g).value for g in spec.factors] == [1, 1]
    assert gsv_index(W, spec).value == 0


def test_gsv_saddle_node_is_positive():
    W = OneForm(P("y^2"), P("x"))
    assert gsv_index(W, CurveSpec([P("x"), P("y")])).value == 1


def test_milnor_foliation_examples():
    assert milnor_foliation(df("y^2 - x^3")).value == 2
    assert milnor_foliation(OneForm(P("y^2"), P("x"))).value == 2
    assert milnor_foliation(OneForm(P("y"), P("x"))).value == 1
    assert milnor_foliation(W_C).value == 6


def _ejcg(a):
    return df("y^3 - x^6") + OneForm(P(f"-6*({a})*x*y^2"), P(f"3*({a})*x^2*y"))


def test_loray_decompose_example():
    s = loray_decompose(_ejcg("7/2"), 3, 6)
    assert s.delta == P("7/2*x*y") and s.g.is_zero()
    s = loray_decompose(df("y^3 - x^6"), 3, 6)
    assert s.delta.is_zero() and s.g.is_zero()
    with pytest.raises(NotLorayShape):
        loray_decompose(df("y^2 - x^3") + OneForm(P("y"), P("0")), 2, 3)


def test_loray_decompose_moves_multiples_of_f_into_g():
    setup = MonomialSetup(3, 4, P("x^2*y"), P("x + y"))
    back = loray_decompose(setup.W, 3, 4)
    assert back.delta == P("x^2*y") and back.g == P("x + y")


@pytest.mark.parametrize("a", ["-3", "-2", "-1", "-1/2", "0", "1", "2"])
def test_toric_example_family(a):
    T = toric_strict_transform(MonomialSetup(3, 6, P(f"{a}*x*y")))
    assert T.exceptional == (2, 5)
    # W' = ((3 - 6u^3) - 3au) v du + 6(1 - u^3) u dv, with (u, v) stored as (x, y)
    assert T.Wprime.A == P(f"(3 - 6*x^3 - 3*({a})*x)*y")
    assert T.Wprime.B == P("6*(1 - x^3)*x")
    assert T.jacobian_origin == ((-6, 0), (0, 3))


def test_toric_zero_delta_value():
    T = toric_strict_transform(MonomialSetup(3, 6, BiSeries({})))
    assert T.value.as_upoly(1) == UPoly([1])


def test_toric_hypothesis():
    with pytest.raises(HypothesisFailed):
        toric_strict_transform(MonomialSetup(3, 4, P("x")))


def _sympy_strict_transform(n, m, delta, g="0"):
    """Direct pullback in sympy; returns (exceptional exponents, A', B')."""
    x, y, u, v = sympy.symbols("x y u v")
    setup = MonomialSetup(n, m, P(delta), P(g))
    d, p, q = setup.d, setup.p, setup.q
    f = y**n - x**m
    M = sympy.sympify(delta.replace("^", "**")) + f * sympy.sympify(g.replace("^", "**"))
    A = sympy.diff(f, x) - m * y * M
    B = sympy.diff(f, y) + n * x * M
    X, Y = u**p * v ** (n // d), u**q * v ** (m // d)
    sub = {x: X, y: Y}
    Au = sympy.expand(A.subs(sub) * sympy.diff(X, u) + B.subs(sub) * sympy.diff(Y, u))
    Bv = sympy.expand(A.subs(sub) * sympy.diff(X, v) + B.subs(sub) * sympy.diff(Y, v))
    polys = [sympy.Poly(e, u, v) for e in (Au, Bv)]
    eu = min(mon[0] for pl in polys for mon in pl.monoms())
    ev = min(mon[1] for pl in polys for mon in pl.monoms())
    out = []
    for pl in polys:
        out.append({(i - eu, j - ev): Fraction(int(c.p), int(c.q)) for (i, j), c in pl.as_dict().items()})
    return (eu, ev), BiSeries(out[0]), BiSeries(out[1])


@pytest.mark.parametrize(
    "n,m,delta,g",
    [
        (3, 6, "-2*x*y", "0"),
        (2, 4, "5*x", "0"),
        (2, 3, "x + 3*y", "0"),
        (3, 4, "x^2 - 2*x*y + 7*y^2", "0"),
        (4, 6, "x^3*y - 1/2*x^2*y^2 + x^4", "x"),
        (2, 5, "x^2 + 2*y", "y"),
    ],
)
def test_toric_against_direct_pullback(n, m, delta, g):
    setup = MonomialSetup(n, m, P(delta), P(g))
    T = toric_strict_transform(setup)
    exc, A1, B1 = _sympy_strict_transform(n, m, delta, g)
    assert T.exceptional == exc == (setup.q * n - 1, m * n // setup.d - 1)
    assert T.Wprime.A == A1 and T.Wprime.B == B1
    # the closed-form value agrees with the transform's entry along v = 0
    assert setup.singular_point_value().as_upoly(1) == T.value.as_upoly(1)


def test_critical_terms_use_weighted_degree():
    # n(r+1) + m(s+1) = nm selects x for (2,4)
    setup = MonomialSetup(2, 4, P("5*x"))
    assert setup.critical_terms() == {(1, 0): 5}
    T = toric_strict_transform(setup)
    assert T.value.as_upoly(1) == UPoly([1, 5])


def test_pullback_linear_matches_substitution():
    W = W_C
    L, _, _ = make_y_general(P("x*y"))
    W1 = pullback_linear(W, L)
    f = P("y^3 - x^4")
    # invariance is preserved by the change of coordinates
    assert cofactor(W1, L.apply(f)) is not None


def test_shift_y_preserves_invariance():
    f = P("y^2 - x^3")
    W = OneForm(P("-3*x^2*y"), P("3*y^2 - x^3"))
    s = P("x^2")
    W2, f2 = shift_y(W, s), substitute_y(f, s)
    assert f2 == P("(y + x^2)^2 - x^3")
    assert W2.wedge_df(f2) == substitute_y(cofactor(W, f), s) * f2

from fractions import Fraction

import pytest
import sympy

from folcheck.errors import CommonFactor
from folcheck.exact import (
    CycloValue,
    UPoly,
    classify_cyclo_values,
    cyclotomic_polynomial,
    resultant_order_x,
    resultant_y,
)

x = sympy.Symbol("x")
y = sympy.Symbol("y")


def U(*c):
    return UPoly([Fraction(a) for a in c])


def test_upoly_arithmetic():
    a = U(1, 1)  # 1 + x
    assert a * a == U(1, 2, 1)
    assert (a ** 3)(2) == 27
    q, r = U(-1, 0, 1).divmod(U(-1, 1))
    assert q == U(1, 1) and not r
    assert U(0, 0, 5).order() == 2
    assert U().degree < 0


def test_resultant_disjoint_roots_is_constant():
    # y and y + 1 as y-polynomials with constant coefficients
    r = resultant_y([U(0), U(1)], [U(1), U(1)])
    assert r.degree == 0 and r[0] != 0


def test_resultant_cusp_against_y():
    F = [U(0, 0, 0, -1), U(0), U(1)]  # y^2 - x^3
    G = [U(0), U(1)]
    r = resultant_y(F, G)
    assert r.order() == 3
    assert abs(r[3]) == 1


def test_resultant_common_factor():
    F = [U(0, 0, 0, -1), U(0), U(1)]
    with pytest.raises(CommonFactor):
        resultant_y(F, F)


@pytest.mark.parametrize(
    "f,g",
    [
        ("y^3 - x^4", "3*y^2 + 3*x^3*y"),
        ("y^2 - x^3 + x*y^2", "y - x^2"),
        ("(y^2-x^3)^2 - x^5*y", "y^2 - x^3"),
        ("y^4 + x*y - 2*x^3", "2*y^3 - x + y"),
    ],
)
def test_resultant_matches_sympy(f, g):
    from folcheck.parse import parse_polynomial

    F, G = parse_polynomial(f).as_ypoly(), parse_polynomial(g).as_ypoly()
    ours = resultant_y(F, G)
    oracle = sympy.Poly(sympy.resultant(sympy.sympify(f.replace("^", "**")), sympy.sympify(g.replace("^", "**")), y), x)
    expected = [Fraction(int(c.p), int(c.q)) for c in reversed(oracle.all_coeffs())]
    assert ours == UPoly(expected)


def test_resultant_order_x_agrees_with_full_resultant():
    from folcheck.parse import parse_polynomial

    F = parse_polynomial("(y^2-x^3)^2 - x^5*y").as_ypoly()
    G = parse_polynomial("y^2 - x^3").as_ypoly()
    full = resultant_y(F, G).order()
    cut = resultant_order_x(F, G, 40)
    assert cut.exact and cut.value == full == 13


def test_resultant_order_x_reports_lower_bound():
    from folcheck.parse import parse_polynomial

    F = parse_polynomial("(y^2-x^3)^2 - x^5*y").as_ypoly()
    G = parse_polynomial("y^2 - x^3").as_ypoly()
    cut = resultant_order_x(F, G, 6)
    assert not cut.exact and cut.value <= 13


@pytest.mark.parametrize("e,coeffs", [(1, [-1, 1]), (3, [1, 1, 1]), (4, [1, 0, 1]), (6, [1, -1, 1])])
def test_cyclotomic(e, coeffs):
    assert cyclotomic_polynomial(e) == U(*coeffs)


def _kinds(v):
    return [(c.root_index, c.kind, c.value) for c in classify_cyclo_values(v)]


def test_cyclo_negative_at_trivial_root():
    got = _kinds(CycloValue(Fraction(1), ((Fraction(-2), 1),), 3))
    assert got == [(0, "NegativeRational", -1), (1, "Irrational", None), (2, "Irrational", None)]


def test_cyclo_positive():
    got = _kinds(CycloValue(Fraction(1), ((Fraction(1), 1),), 3))
    assert got[0] == (0, "PositiveRational", 2)
    assert [k for _, k, _ in got[1:]] == ["Irrational", "Irrational"]


def test_cyclo_empty_sum():
    got = _kinds(CycloValue(Fraction(1), (), 5))
    assert got == [(k, "PositiveRational", 1) for k in range(5)]


def test_cyclo_real_value_at_primitive_root():
    # 1 + xi + xi^2 vanishes at primitive cube roots and is 3 at xi = 1
    got = _kinds(CycloValue(Fraction(1), ((Fraction(1), 1), (Fraction(1), 2)), 3))
    assert got == [(0, "PositiveRational", 3), (1, "Zero", 0), (2, "Zero", 0)]


def test_cyclo_minus_one_root():
    # 1 + 2 xi at xi = -1 (d = 2, k = 1) is -1
    got = _kinds(CycloValue(Fraction(1), ((Fraction(2), 1),), 2))
    assert got == [(0, "PositiveRational", 3), (1, "NegativeRational", -1)]

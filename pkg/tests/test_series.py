from fractions import Fraction

import pytest

from folcheck.errors import NotDistinguished
from folcheck.foliations import OneForm
from folcheck.series import (
    SWAP,
    BiSeries,
    WPoly,
    make_y_general,
    newton_polygon,
    order,
    weierstrass_divide,
    weierstrass_polynomial,
    weighted_order,
)

from conftest import P


def test_partial_derivatives():
    assert P("y^3 - x^4").dy() == P("3*y^2")
    assert P("y^3 - x^4").dx() == P("-4*x^3")


def test_product():
    assert P("y^2-x^3") * P("y^2+x^3") == P("y^4 - x^6")


def test_unit_inverse_geometric():
    inv = P("1 + x").inverse(4)
    assert inv.same_to(P("1 - x + x^2 - x^3"))
    assert inv.prec is not None and inv.prec >= 3


def test_unit_inverse_multiplies_to_one():
    u = P("2 + x - 3*y + x*y^2")
    inv = u.inverse(20)
    assert (u * inv).same_to(BiSeries.const(1))
    assert inv.const_term() == Fraction(1, 2)


def test_truncated_arithmetic_tracks_precision():
    a = BiSeries({(0, 0): 1, (1, 0): 1}, prec=3)
    b = a * P("x")
    assert b.prec == 4
    assert not b.exact


@pytest.mark.parametrize("text,k", [("y^2 - x^3", 2), ("x^2*y - x*y^2", 3), ("1 + x", 0)])
def test_order(text, k):
    o = order(P(text))
    assert o.exact and o.value == k


def test_order_of_truncated_zero():
    o = order(BiSeries.zero(32))
    assert not o.exact and o.value >= 32


def test_weighted_order_examples():
    assert weighted_order(P("y^2 - x^3"), 2, 3).value == 6
    assert weighted_order(P("x*y"), 3, 6).value == 9
    w = OneForm(P("-4*x^2*y^2"), P("3*x^3*y"))
    assert weighted_order(w, 3, 4).value == 17


def test_newton_polygon_examples():
    assert newton_polygon(P("y^2 - x^3")).vertices == ((0, 2), (3, 0))
    sar = OneForm(P("x*y - y^3"), P("x*y - 2*x^2 + x*y^2"))
    assert newton_polygon(sar).vertices == ((1, 2), (2, 1))
    assert newton_polygon(sar) == newton_polygon(P("x*y*(x-y)"))


def test_newton_polygon_unit_invariance():
    f = P("y^2 - x^3")
    assert newton_polygon(P("1 + x + y") * f) == newton_polygon(f)


def test_divide_simple():
    h, R = weierstrass_divide(P("y^2 + y^3 + x"), P("2*y"))
    assert h == P("1/2*y + 1/2*y^2")
    assert R == P("x")


def test_divide_final_example_step():
    h, R = weierstrass_divide(P("3*y^2 + 3*x^3*y"), P("3*y^2"))
    assert h == P("1") and R == P("3*x^3*y")


def test_divide_by_itself():
    g = P("y^3 - x^4 + x*y^2")
    h, R = weierstrass_divide(g, g)
    assert h.same_to(P("1")) and R.is_zero()


def test_divide_reconstructs_with_unit_divisor():
    S = P("x^2*y^3 + 7*y + x^5 - y^6")
    g = P("y^2 + x^3 + x*y^2 + y^5")
    h, R = weierstrass_divide(S, g, 24)
    assert R.ydeg() < 2
    assert (h * g + R).same_to(S)


def test_weierstrass_polynomial():
    f = P("y^2 - x^3 + x*y^3 + y^4")
    W, u = weierstrass_polynomial(f, 24)
    assert W.ydeg == 2
    assert (u * W.series).same_to(f)


def test_make_y_general_examples():
    L, f1, _ = make_y_general(P("y^2 - x^3"))
    assert L.is_identity and f1 == P("y^2 - x^3")
    L, f1, _ = make_y_general(P("x^2"))
    assert f1 == P("y^2")
    assert L == SWAP
    L, f1, _ = make_y_general(P("x*y"))
    assert f1 == P("x*y + y^2")
    assert L.apply(P("x*y")) == f1
    assert L.inverse().apply(f1) == P("x*y")


def test_wpoly_requires_distinguished():
    assert WPoly(P("y^3 - x^4")).ydeg == 3
    with pytest.raises(NotDistinguished):
        WPoly(P("y + y^2"))

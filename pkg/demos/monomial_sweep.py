"""Sweep the parameter a in W = df + a*x*y*(3x dy - 6y dx), f = y^3 - x^6.

For each a this prints the weighted-order clause, the values of 1 + Sigma at
the points of the toric strict transform, and the monomial verdict next to
the general one.  Negative rational values at a <= -1 make it fail.

Run:  python demos/monomial_sweep.py
"""
from fractions import Fraction

from folcheck import CurveSpec, MonomialSetup, check_gc_monomial, full_report, parse_polynomial
from folcheck.report import display_result, table

rows = []
for a in (Fraction(-3), Fraction(-2), Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1), Fraction(2)):
    setup = MonomialSetup(3, 6, parse_polynomial(f"({a})*x*y"))
    mono = check_gc_monomial(setup)
    values = [str(x) for name, x in mono.evidence if name.startswith("1+Sigma")]
    try:
        general = display_result(full_report(setup.W, CurveSpec([setup.f])).gc_general)
    except ValueError as exc:
        general = f"error: {exc}"
    rows.append((a, mono.get("upsilon(Delta)"), "; ".join(values) or "-", mono.result, general))

print(table(rows, ("a", "upsilon(Delta)", "1+Sigma values", "monomial", "general")))

"""Approximate roots and semiroot expansions for f = (y^2 - x^3)^2 - x^5 y.

The branch has characteristic exponents (4, 6, 7) and semigroup <4, 6, 13>.
The first approximate root y^2 - x^3 meets f with multiplicity 13.  Expanding
B = y^2 + x*y in the semiroots shows where the minimum order i0(B, f) comes
from.

Run:  python demos/semiroots.py
"""
from folcheck import (
    approximate_root,
    format_polynomial,
    intersection_number,
    newton_puiseux,
    parse_polynomial,
    semiroot_expansion,
)
from folcheck.report import table

f = parse_polynomial("(y^2 - x^3)^2 - x^5*y")
(branch,) = newton_puiseux(f, terms=12)
print("characteristic exponents:", branch.char_exponents)
print("semigroup generators:   ", branch.semigroup)
print("genus:                  ", branch.genus)
print()

for k in range(1, branch.genus + 1):
    root = approximate_root(f, k)
    print(f"approximate root k={k}: {format_polynomial(root)}  i0 = {intersection_number(f, root)}")
print()

B = parse_polynomial("y^2 + x*y")
exp = semiroot_expansion(B, f)
rows = [(alpha, format_polynomial(coef), exp.term_order(alpha)) for alpha, coef in sorted(exp.terms.items())]
print(table(rows, ("alpha", "a_alpha(x)", "order along f")))
print("i0(B, f) =", intersection_number(B, f))

"""Full report for a one-parameter family over the cusp-like curve y^3 = x^6.

Prints the text report for a = 1 (a generalized curve) and a = -2 (a node
with positive rational eigenvalue ratio appears after the toric blow-up, so
membership is no longer certified), then the same analysis as JSON.

Run:  python demos/final_example.py
"""
from folcheck import CurveSpec, MonomialSetup, full_report, parse_polynomial
from folcheck.report import dumps, report_json, report_text

for a in ("1", "-2"):
    setup = MonomialSetup(3, 6, parse_polynomial(f"{a}*x*y"))
    report = full_report(setup.W, CurveSpec([setup.f]))
    print(f"=== a = {a} ===")
    print(report_text(report))
    print()

print(dumps(report_json(full_report(setup.W, CurveSpec([setup.f])))))

"""Rendering of reports as deterministic JSON and as aligned text tables.

JSON conventions (schema version 1):

* integers are decimal strings, rationals are ``"num/den"``;
* certified integers are ``"k"``, ``">=k"`` (lower bound only) or ``"inf"``;
* booleans and ``null`` are native JSON;
* tuples and lists become arrays.

Keys are emitted sorted so the output is byte-stable.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .cert import CertInt
from .classify import UNKNOWN, Report, Verdict
from .parse import format_polynomial
from .series import BiSeries

SCHEMA_VERSION = "1"
RAISE_TRUNC = "Unknown (raise --trunc)"


def encode(value):
    """Map evidence values onto JSON-safe data."""
    if value is None or isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, CertInt):
        return str(value)
    if isinstance(value, BiSeries):
        return format_polynomial(value) if value.exact else f"{format_polynomial(value)} + O({value.prec + 1})"
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    return str(value)


def _has_lower_bound(v: Verdict) -> bool:
    return any(isinstance(x, CertInt) and not x.exact for _, x in v.evidence)


def display_result(v: Verdict) -> str:
    if v.result == UNKNOWN and _has_lower_bound(v):
        return RAISE_TRUNC
    return v.result


def verdict_json(v: Verdict) -> dict:
    return {
        "criterion": v.criterion,
        "result": v.result,
        "display": display_result(v),
        "evidence": [[name, encode(x)] for name, x in v.evidence],
        "caveats": list(v.caveats),
    }


def report_json(report: Report) -> dict:
    return {
        "indices": {k: encode(x) for k, x in report.indices.items()},
        "verdicts": [verdict_json(v) for v in report.verdicts()],
    }


def gc_summary(report: Report) -> str:
    """One word for the generalized-curve question, taken from gc_general."""
    return display_result(report.gc_general)


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)


def table(rows: list[tuple], header: tuple | None = None) -> str:
    """Left-aligned columns separated by two spaces."""
    rows = [tuple(str(c) for c in r) for r in rows]
    if header is not None:
        rows.insert(0, tuple(header))
    if not rows:
        return ""
    widths = [max(len(r[i]) for r in rows if i < len(r)) for i in range(max(len(r) for r in rows))]
    out = []
    for r in rows:
        out.append("  ".join(c.ljust(widths[i]) for i, c in enumerate(r)).rstrip())
    if header is not None:
        out.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(out)


def _fmt(x) -> str:
    e = encode(x)
    if isinstance(e, list):
        return json.dumps(e).replace('"', "")
    if e is None:
        return "-"
    return str(e)


def report_text(report: Report) -> str:
    parts = [f"GC: {gc_summary(report)}", ""]
    parts.append(table([(k, _fmt(x)) for k, x in report.indices.items()], ("index", "value")))
    parts.append("")
    parts.append(table([(v.criterion, display_result(v)) for v in report.verdicts()], ("criterion", "result")))
    for v in report.verdicts():
        parts.append("")
        parts.append(f"[{v.criterion}] {display_result(v)}")
        if v.evidence:
            parts.append(table([("  " + name, _fmt(x)) for name, x in v.evidence]))
        for c in v.caveats:
            parts.append(f"  note: {c}")
    return "\n".join(parts)


def verdict_text(v: Verdict) -> str:
    lines = [f"GC: {display_result(v)}" if v.criterion.startswith("gc_") else f"{v.criterion}: {display_result(v)}"]
    if v.evidence:
        lines.append(table([("  " + name, _fmt(x)) for name, x in v.evidence]))
    for c in v.caveats:
        lines.append(f"  note: {c}")
    return "\n".join(lines)

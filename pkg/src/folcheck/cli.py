"""Command line front end: ``folcheck <command> [options]``.

Exit status is 0 on success, 1 on input errors and 2 when a corpus case
disagrees with its expected verdicts.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources

from .classify import Analysis, check_gc_monomial, full_report
from .curves import CurveSpec, char_exponents, newton_puiseux, semigroup_from_exponents
from .errors import FolError
from .foliations import MonomialSetup, OneForm, factor_gsv, gsv_index, toric_strict_transform
from .parse import format_polynomial, parse_polynomial
from .report import (
    SCHEMA_VERSION,
    dumps,
    encode,
    report_json,
    report_text,
    table,
    verdict_json,
    verdict_text,
)
from .series import DEFAULT_TRUNC, BiSeries

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def default_trunc() -> int:
    raw = os.environ.get("FOLCHECK_TRUNC")
    if raw is None:
        return DEFAULT_TRUNC
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"FOLCHECK_TRUNC must be an integer, got {raw!r}") from None
    return value


# ---------------------------------------------------------------------------
# input cases


@dataclass
class InputCase:
    name: str
    form: dict
    curve: list = field(default_factory=list)
    trunc: int = DEFAULT_TRUNC
    expected: dict | None = None

    @classmethod
    def from_json(cls, obj: dict, trunc: int) -> "InputCase":
        if not isinstance(obj, dict) or "form" not in obj:
            raise InputError("case must be an object with a 'form' entry")
        return cls(
            name=str(obj.get("name", "")),
            form=obj["form"],
            curve=list(obj.get("curve", [])),
            trunc=int(obj.get("trunc", trunc)),
            expected=obj.get("expected"),
        )

    def build(self) -> tuple[OneForm, CurveSpec, dict]:
        """(W, C, echo of the parsed input)."""
        if self.trunc < 8:
            raise InputError("trunc must be at least 8")
        form = self.form
        echo: dict = {}
        if "hamiltonian" in form:
            H = _poly(form["hamiltonian"], "hamiltonian")
            W = OneForm.exact_differential(H)
            echo["hamiltonian"] = format_polynomial(H)
            default_curve = [H]
        elif "loray" in form:
            setup = _setup(form["loray"])
            W = setup.W
            echo["loray"] = {
                "n": str(setup.n),
                "m": str(setup.m),
                "delta": format_polynomial(setup.delta),
                "g": format_polynomial(setup.g),
            }
            default_curve = [setup.f]
        elif "dx" in form and "dy" in form:
            W = OneForm(_poly(form["dx"], "dx"), _poly(form["dy"], "dy"))
            default_curve = None
        else:
            raise InputError("form needs dx and dy, hamiltonian, or loray")
        echo["dx"], echo["dy"] = format_polynomial(W.A), format_polynomial(W.B)
        factors = [_poly(c, "curve") for c in self.curve] if self.curve else default_curve
        if not factors:
            raise InputError("a curve is required")
        echo["curve"] = [format_polynomial(g) for g in factors]
        echo["trunc"] = str(self.trunc)
        return W, CurveSpec(factors, self.trunc), echo


def _poly(text, what: str) -> BiSeries:
    if isinstance(text, BiSeries):
        return text
    if not isinstance(text, str):
        raise InputError(f"{what}: expected polynomial text")
    try:
        return parse_polynomial(text)
    except SyntaxError as exc:
        raise InputError(f"{what}: {exc}") from None


def _setup(spec: dict) -> MonomialSetup:
    try:
        n, m = int(spec["n"]), int(spec["m"])
    except (KeyError, TypeError, ValueError):
        raise InputError("loray needs integers n and m") from None
    delta = _poly(spec.get("delta", "0"), "delta")
    g = _poly(spec.get("g", "0"), "g")
    try:
        return MonomialSetup(n, m, delta, g)
    except ValueError as exc:
        raise InputError(str(exc)) from None


# ---------------------------------------------------------------------------
# commands


def _case_from_args(args) -> InputCase:
    if args.hamiltonian is not None:
        form = {"hamiltonian": args.hamiltonian}
    elif args.loray:
        if args.n is None or args.m is None:
            raise InputError("--loray needs --n and --m")
        form = {"loray": {"n": args.n, "m": args.m, "delta": args.delta or "0", "g": args.g or "0"}}
    elif args.dx is not None and args.dy is not None:
        form = {"dx": args.dx, "dy": args.dy}
    else:
        raise InputError("give --dx and --dy, --hamiltonian, or --loray")
    return InputCase(name="", form=form, curve=args.curve or [], trunc=args.trunc)


def run_case(case: InputCase, timing: bool = False) -> tuple[dict, str, bool | None]:
    """(json document, text, matches expectations or None when none given)."""
    t0 = time.perf_counter()
    W, C, echo = case.build()
    report = full_report(W, C, case.trunc)
    doc = {"schema_version": SCHEMA_VERSION, "case": case.name, "input": echo}
    doc.update(report_json(report))
    text = report_text(report)
    if case.name:
        text = f"== {case.name}\n{text}"
    ok = None
    if case.expected is not None:
        got = {v.criterion: v.holds for v in report.verdicts()}
        mismatches = []
        for key, want in sorted(case.expected.items()):
            have = got.get(key)
            if have is not want:
                mismatches.append({"verdict": key, "expected": want, "got": encode(have)})
        ok = not mismatches
        doc["expectations"] = {"matched": ok, "mismatches": mismatches}
        text += "\n\nexpectations: " + ("all matched" if ok else f"{len(mismatches)} mismatch(es)")
        for mm in mismatches:
            text += f"\n  {mm['verdict']}: expected {mm['expected']}, got {mm['got']}"
    if timing:
        doc["timing"] = {"seconds": f"{time.perf_counter() - t0:.3f}"}
    return doc, text, ok


def cmd_classify(args) -> int:
    doc, text, _ = run_case(_case_from_args(args), args.timing)
    print(dumps(doc) if args.json else text)
    return EXIT_OK


def cmd_weierstrass(args) -> int:
    case = _case_from_args(args)
    W, C, echo = case.build()
    ctx = Analysis(W, C, case.trunc)
    L, _, P = ctx.prepared
    wf = ctx.wform
    if wf is None:
        raise InputError("Weierstrass form needs a singular curve (deg_y f > 1)")
    rows = [("f", P.series), ("h", wf.h), ("p", wf.p), ("A", wf.A), ("B", wf.B)]
    doc = {
        "schema_version": SCHEMA_VERSION,
        "input": echo,
        "coordinate_change": L.describe(),
        "weierstrass_form": {k: encode(v) for k, v in rows},
    }
    if args.json:
        print(dumps(doc))
    else:
        print(f"coordinate change: {L.describe()}")
        print("W = h df + p f dx + A dx + B dy")
        print(table([(k, encode(v)) for k, v in rows]))
    return EXIT_OK


def cmd_gsv(args) -> int:
    case = _case_from_args(args)
    W, C, echo = case.build()
    rows = [(format_polynomial(g), factor_gsv(W, g, case.trunc)) for g in C.factors]
    total = gsv_index(W, C, case.trunc)
    if args.json:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "input": echo,
            "factors": [[g, encode(v)] for g, v in rows],
            "GSV": encode(total),
        }
        print(dumps(doc))
    else:
        print(table([(g, encode(v)) for g, v in rows] + [("GSV(W, C)", encode(total))], ("branch", "index")))
    return EXIT_OK


def cmd_toric(args) -> int:
    if args.n is None or args.m is None:
        raise InputError("toric needs --n and --m")
    setup = _setup({"n": args.n, "m": args.m, "delta": args.delta or "0", "g": args.g or "0"})
    verdict = check_gc_monomial(setup)
    T = toric_strict_transform(setup)
    info = [
        ("exceptional factor", f"u^{T.exceptional[0]} v^{T.exceptional[1]}"),
        ("W' dx-coefficient", format_polynomial(T.Wprime.A).replace("x", "u").replace("y", "v")),
        ("W' dy-coefficient", format_polynomial(T.Wprime.B).replace("x", "u").replace("y", "v")),
        ("Jacobian at origin", [[encode(a) for a in row] for row in T.jacobian_origin]),
    ]
    if args.json:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "input": {"n": str(setup.n), "m": str(setup.m), "delta": format_polynomial(setup.delta),
                      "g": format_polynomial(setup.g)},
            "toric": {k: encode(v) for k, v in info},
            "verdict": verdict_json(verdict),
        }
        print(dumps(doc))
    else:
        print(verdict_text(verdict))
        print()
        print(table([(k, encode(v) if not isinstance(v, str) else v) for k, v in info]))
    return EXIT_OK


def _branch_row(b, shown: int):
    if b.vertical:
        return {"x": "0", "y": "t", "mult": "1", "char_exponents": None, "semigroup": None}
    terms = [(j, a) for j, a in enumerate(b.y) if a][:shown]
    y = " + ".join(f"{encode(a)}*t^{j}" for j, a in terms) or "0"
    row = {"x": f"{encode(b.xcoef)}*t^{b.n}", "y": y, "mult": str(b.mult)}
    try:
        betas = char_exponents(b)
        row["char_exponents"] = [str(e) for e in betas]
        row["semigroup"] = [str(v) for v in semigroup_from_exponents(betas)[0]]
    except (FolError, ValueError):
        row["char_exponents"] = row["semigroup"] = None
    return row


def cmd_puiseux(args) -> int:
    if not args.curve or len(args.curve) != 1:
        raise InputError("puiseux needs exactly one --curve")
    f = _poly(args.curve[0], "curve")
    branches = newton_puiseux(f, args.trunc)
    rows = [_branch_row(b, args.terms) for b in branches]
    if args.json:
        print(dumps({"schema_version": SCHEMA_VERSION, "curve": format_polynomial(f), "branches": rows}))
    else:
        for i, r in enumerate(rows):
            print(f"branch {i}: x = {r['x']}, y = {r['y']} + ...")
            print(f"  multiplicity {r['mult']}", end="")
            if r["char_exponents"]:
                print(f", characteristic exponents ({', '.join(r['char_exponents'])})"
                      f", semigroup <{', '.join(r['semigroup'])}>", end="")
            print()
    return EXIT_OK


def _corpus_worker(payload):
    obj, trunc, timing = payload
    case = InputCase.from_json(obj, trunc)
    try:
        return run_case(case, timing)
    except (InputError, FolError) as exc:
        doc = {"schema_version": SCHEMA_VERSION, "case": case.name, "error": str(exc)}
        return doc, f"== {case.name}\nerror: {exc}", False


def read_cases(path: str) -> list[dict]:
    try:
        if path == "-":
            lines = sys.stdin.read().splitlines()
        else:
            with open(path, encoding="utf-8") as fh:
                lines = fh.read().splitlines()
    except OSError as exc:
        raise InputError(str(exc)) from None
    out = []
    for lineno, line in enumerate(lines, 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            out.append(json.loads(line))
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}:{lineno}: {exc.msg}") from None
    return out


def bundled_corpus() -> str:
    return str(resources.files("folcheck") / "data" / "paper.cases")


def cmd_corpus(args) -> int:
    objs = read_cases(args.file or bundled_corpus())
    for o in objs:
        InputCase.from_json(o, args.trunc)
    payloads = [(o, args.trunc, args.timing) for o in objs]
    if args.jobs > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_corpus_worker, payloads))
    else:
        results = [_corpus_worker(p) for p in payloads]
    failed = [doc.get("case", "") for doc, _, ok in results if ok is False]
    if args.json:
        for doc, _, _ in results:
            print(json.dumps(doc, sort_keys=True, ensure_ascii=False))
    else:
        for _, text, _ in results:
            print(text)
            print()
        print(f"{len(results) - len(failed)}/{len(results)} cases matched expectations")
        for name in failed:
            print(f"  mismatch: {name}")
    return EXIT_MISMATCH if failed else EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="folcheck", description="Generalized-curve and second-type tests for plane foliations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--trunc", type=int, default=None, help="truncation degree (default 64 or $FOLCHECK_TRUNC)")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--timing", action="store_true", help="include wall-clock timing in the output")

    form = _Parser(add_help=False)
    form.add_argument("--dx", help="coefficient of dx")
    form.add_argument("--dy", help="coefficient of dy")
    form.add_argument("--hamiltonian", metavar="F", help="use W = dF")
    form.add_argument("--loray", action="store_true", help="use the quasi-homogeneous model given by --n --m --delta --g")
    form.add_argument("--curve", action="append", metavar="G", help="curve factor; repeat for several branches")

    loray = _Parser(add_help=False)
    loray.add_argument("--n", type=int, help="exponent of y in f = y^n - x^m")
    loray.add_argument("--m", type=int, help="exponent of x in f = y^n - x^m (n <= m)")
    loray.add_argument("--delta", metavar="D", help="polynomial Delta (default 0)")
    loray.add_argument("--g", metavar="G", help="polynomial g multiplying f (default 0)")

    for name, fn, extra, hlp in (
        ("classify", cmd_classify, [form, loray], "full report"),
        ("weierstrass", cmd_weierstrass, [form, loray], "print the Weierstrass form"),
        ("gsv", cmd_gsv, [form, loray], "GSV index along the curve"),
        ("toric", cmd_toric, [loray], "toric strict transform of a quasi-homogeneous model"),
    ):
        p = sub.add_parser(name, parents=[common, *extra], help=hlp)
        p.set_defaults(func=fn)

    p = sub.add_parser("puiseux", parents=[common], help="Newton-Puiseux branches of a curve")
    p.add_argument("--curve", action="append", metavar="G", help="curve factor; repeat for several branches")
    p.add_argument("--terms", type=int, default=12, help="number of nonzero y-terms shown")
    p.set_defaults(func=cmd_puiseux)

    p = sub.add_parser("corpus", parents=[common], help="run a line-oriented JSON case file")
    p.add_argument("file", nargs="?", help="case file ('-' for stdin; default: bundled paper.cases)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    p.set_defaults(func=cmd_corpus)
    return parser


_POLY_FLAGS = ("--dx", "--dy", "--hamiltonian", "--curve", "--delta", "--g")


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--dx -4*x^3`` into ``--dx=-4*x^3`` so argparse accepts it."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _POLY_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_negative_values(list(sys.argv[1:] if argv is None else argv)))
    try:
        if args.trunc is None:
            args.trunc = default_trunc()
        if args.trunc < 8:
            raise InputError("--trunc must be at least 8")
        return args.func(args)
    except (InputError, FolError, ValueError) as exc:
        print(f"folcheck: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

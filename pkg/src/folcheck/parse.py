"""Polynomial expressions in x and y with exact rational coefficients.

Grammar::

    expr  := term (('+' | '-') term)*
    term  := unary ('*' unary)*
    unary := ('+' | '-') unary | power
    power := atom ('^' INT)?
    atom  := INT ('/' INT)? | 'x' | 'y' | '(' expr ')'

Implicit multiplication (``2x``) is rejected.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple

from .errors import PolynomialSyntaxError
from .series import BiSeries

_TOKEN = re.compile(r"\s*(?:(\d+)|([xy])|(\^|\*|\+|-|/|\(|\))|(\S))")


class Token(NamedTuple):
    kind: str  # INT, VAR, OP, END
    text: str
    pos: int


def _tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(1):
            out.append(Token("INT", m.group(1), m.start(1)))
        elif m.group(2):
            out.append(Token("VAR", m.group(2), m.start(2)))
        elif m.group(3):
            out.append(Token("OP", m.group(3), m.start(3)))
        elif m.group(4):
            raise _error(text, m.start(4), f"unexpected character {m.group(4)!r}")
        pos = m.end()
    out.append(Token("END", "", len(text.rstrip()) if text.strip() else len(text)))
    return out


def _error(text: str, pos: int, msg: str) -> PolynomialSyntaxError:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return PolynomialSyntaxError(msg, text, line, col)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, tok: Token, msg: str):
        raise _error(self.text, tok.pos, msg)

    def parse(self) -> BiSeries:
        if self.peek().kind == "END":
            self.fail(self.peek(), "empty expression")
        e = self.expr()
        t = self.peek()
        if t.kind != "END":
            if t.kind in ("INT", "VAR") or t.text == "(":
                self.fail(t, "implicit multiplication is not allowed; use '*'")
            self.fail(t, f"unexpected {t.text!r}")
        return e

    def expr(self) -> BiSeries:
        acc = self.term()
        while self.peek().text in ("+", "-") and self.peek().kind == "OP":
            op = self.take().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> BiSeries:
        acc = self.unary()
        while self.peek().kind == "OP" and self.peek().text == "*":
            self.take()
            acc = acc * self.unary()
        return acc

    def unary(self) -> BiSeries:
        t = self.peek()
        if t.kind == "OP" and t.text in ("+", "-"):
            self.take()
            v = self.unary()
            return -v if t.text == "-" else v
        return self.power()

    def power(self) -> BiSeries:
        base = self.atom()
        if self.peek().kind == "OP" and self.peek().text == "^":
            self.take()
            t = self.peek()
            if t.kind != "INT":
                self.fail(t, "expected a nonnegative integer exponent")
            self.take()
            return base ** int(t.text)
        return base

    def atom(self) -> BiSeries:
        t = self.take()
        if t.kind == "INT":
            val = Fraction(int(t.text))
            if self.peek().kind == "OP" and self.peek().text == "/":
                self.take()
                d = self.peek()
                if d.kind != "INT":
                    self.fail(d, "expected an integer denominator")
                self.take()
                if int(d.text) == 0:
                    self.fail(d, "zero denominator")
                val = val / int(d.text)
            return BiSeries.const(val)
        if t.kind == "VAR":
            return BiSeries.x() if t.text == "x" else BiSeries.y()
        if t.kind == "OP" and t.text == "(":
            e = self.expr()
            close = self.peek()
            if not (close.kind == "OP" and close.text == ")"):
                self.fail(close, "expected ')'")
            self.take()
            return e
        if t.kind == "END":
            self.fail(t, "unexpected end of input")
        self.fail(t, f"unexpected {t.text!r}")


def parse_polynomial(text: str) -> BiSeries:
    """Parse ``text`` into an exact polynomial."""
    return _Parser(text).parse()


def _fmt_coeff(a: Fraction) -> str:
    return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


def _monomial(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    return "*".join(parts)


def format_polynomial(f: BiSeries) -> str:
    """Deterministic text form that ``parse_polynomial`` reads back."""
    if not f.coeffs:
        return "0"
    out = []
    for (i, j) in sorted(f.coeffs, key=lambda ij: (ij[0] + ij[1], -ij[0])):
        a = f.coeffs[(i, j)]
        mono = _monomial(i, j)
        mag = abs(a)
        if mono:
            body = mono if mag == 1 else f"{_fmt_coeff(mag)}*{mono}"
        else:
            body = _fmt_coeff(mag)
        if not out:
            out.append(("-" if a < 0 else "") + body)
        else:
            out.append(("- " if a < 0 else "+ ") + body)
    return " ".join(out)

"""Text syntax for graded polynomials.

Grammar (whitespace ignored)::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor ('*'? factor)*
    factor  := atom ('^' int)?
    atom    := number ('/' number)? | var | '[' expr (',' expr)+ ']'
             | 's' int '(' var (',' var)* ')' | '(' expr ')'
    var     := 'x' int ('@' int (',' int)*)?

Brackets with more than two entries are left-normed commutators.  Inside
brackets a comma followed by a digit continues a degree vector, so
``[x1@1,0,x2]`` reads as the commutator of ``x1@(1,0)`` and ``x2``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..algebra.group import GradingGroup
from ..errors import InputError, StructureError
from .polynomial import GradedPolynomial, GradedVariable, left_normed, standard_polynomial

_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d+(?:@-?\d+(?:,-?\d+)*)?)|(s\d+)|(.))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        num, var, std, other = m.groups()
        if num:
            out.append(("num", num))
        elif var:
            out.append(("var", var))
        elif std:
            out.append(("std", std))
        elif other and not other.isspace():
            out.append(("op", other))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, group: GradingGroup | None):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.group = group

    def error(self, msg: str) -> InputError:
        return InputError(f"cannot parse polynomial {self.text!r}: {msg}")

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise self.error(f"expected {value or kind}, found {tok[1]!r}")
        self.pos += 1
        return tok

    def variable(self, token: str) -> GradedVariable:
        name, _, deg = token.partition("@")
        index = int(name[1:])
        if index < 1:
            raise self.error("variable indices start at 1")
        degree = tuple(int(d) for d in deg.split(",")) if deg else ()
        if self.group is not None:
            if not degree:
                degree = self.group.identity
            try:
                degree = self.group.element(degree)
            except StructureError as exc:
                raise self.error(str(exc)) from None
        return GradedVariable(index, degree)

    def expr(self) -> GradedPolynomial:
        sign = 1
        if self.peek() in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        out = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
            out = out + self.term() * sign
        return out

    def starts_atom(self) -> bool:
        kind, val = self.peek()
        return kind in ("num", "var", "std") or (kind == "op" and val in "([")

    def term(self) -> GradedPolynomial:
        out = self.factor()
        while True:
            if self.peek() == ("op", "*"):
                self.take()
                out = out * self.factor()
            elif self.starts_atom():
                out = out * self.factor()
            else:
                return out

    def factor(self) -> GradedPolynomial:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            k = int(self.take("num")[1])
            out = GradedPolynomial.const(1)
            for _ in range(k):
                out = out * base
            return out
        return base

    def atom(self) -> GradedPolynomial:
        kind, val = self.peek()
        if kind == "num":
            self.take()
            value = Fraction(int(val))
            if self.peek() == ("op", "/"):
                self.take()
                den = int(self.take("num")[1])
                if den == 0:
                    raise self.error("zero denominator")
                value /= den
            return GradedPolynomial.const(value)
        if kind == "var":
            self.take()
            return GradedPolynomial.var(self.variable(val))
        if kind == "std":
            self.take()
            n = int(val[1:])
            self.take("op", "(")
            vs = [self.variable(self.take("var")[1])]
            while self.peek() == ("op", ","):
                self.take()
                vs.append(self.variable(self.take("var")[1]))
            self.take("op", ")")
            if len(vs) != n:
                raise self.error(f"s{n} needs {n} arguments, got {len(vs)}")
            return standard_polynomial(vs)
        if (kind, val) == ("op", "["):
            self.take()
            parts = [self.expr()]
            while self.peek() == ("op", ","):
                self.take()
                parts.append(self.expr())
            self.take("op", "]")
            if len(parts) < 2:
                raise self.error("a commutator needs at least two entries")
            return left_normed(*parts)
        if (kind, val) == ("op", "("):
            self.take()
            out = self.expr()
            self.take("op", ")")
            return out
        raise self.error(f"unexpected {val!r}")


def parse_polynomial(text: str, group: GradingGroup | None = None) -> GradedPolynomial:
    """Parse ``text``; with ``group`` given, degrees are normalized in it."""
    p = _Parser(text, group)
    if not p.tokens:
        raise p.error("empty input")
    out = p.expr()
    if p.pos != len(p.tokens):
        raise p.error(f"trailing input at {p.peek()[1]!r}")
    return out

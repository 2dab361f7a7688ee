"""Elements of the free graded algebra F<X|G>."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Mapping

from ..algebra.group import Element
from ..linalg import rat


@dataclass(frozen=True, order=True)
class GradedVariable:
    index: int
    degree: Element = ()

    def __str__(self) -> str:
        if not self.degree:
            return f"x{self.index}"
        return f"x{self.index}@" + ",".join(str(d) for d in self.degree)


Word = tuple  # tuple[GradedVariable, ...]


class GradedPolynomial:
    """Rational combination of words; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        for w, c in (terms or {}).items():
            c = rat(c)
            if c:
                clean[tuple(w)] = c
        self.terms: dict = dict(sorted(clean.items()))

    # -- constructors --------------------------------------------------------
    @classmethod
    def var(cls, v: GradedVariable) -> "GradedPolynomial":
        return cls({(v,): 1})

    @classmethod
    def const(cls, c) -> "GradedPolynomial":
        return cls({(): c})

    # -- arithmetic ------------------------------------------------------------
    def __add__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GradedPolynomial(out)

    def __neg__(self) -> "GradedPolynomial":
        return GradedPolynomial({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "GradedPolynomial":
        if not isinstance(other, GradedPolynomial):
            return GradedPolynomial({w: c * rat(other) for w, c in self.terms.items()})
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return GradedPolynomial(out)

    def __rmul__(self, other) -> "GradedPolynomial":
        return self * other

    def __eq__(self, other) -> bool:
        return isinstance(other, GradedPolynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"GradedPolynomial({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.terms.items():
            mono = "*".join(str(v) for v in w) or "1"
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{Fraction(c)}*{mono}" if w else str(Fraction(c)))
        return " + ".join(parts).replace("+ -", "- ")

    # -- structure -------------------------------------------------------------
    def variables(self) -> list[GradedVariable]:
        return sorted({v for w in self.terms for v in w})

    def multidegree(self, word: Word) -> tuple:
        counts: dict = {}
        for v in word:
            counts[v] = counts.get(v, 0) + 1
        return tuple(sorted(counts.items()))

    def homogeneous_components(self) -> list["GradedPolynomial"]:
        """Split by multidegree (multiset of variables), in canonical order."""
        parts: dict = {}
        for w, c in self.terms.items():
            parts.setdefault(self.multidegree(w), {})[w] = c
        return [GradedPolynomial(parts[k]) for k in sorted(parts)]

    def is_multilinear(self) -> bool:
        if not self.terms:
            return True
        var_sets = set()
        for w in self.terms:
            if len(set(w)) != len(w):
                return False
            var_sets.add(frozenset(w))
        return len(var_sets) == 1

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def substitute(self, mapping: Mapping) -> "GradedPolynomial":
        """Replace variables by polynomials (endomorphism of the free algebra)."""
        out = GradedPolynomial()
        for w, c in self.terms.items():
            term = GradedPolynomial.const(c)
            for v in w:
                term = term * mapping.get(v, GradedPolynomial.var(v))
            out = out + term
        return out

    def to_records(self) -> list[dict]:
        return [
            {"word": [str(v) for v in w], "coefficient": str(Fraction(c))}
            for w, c in self.terms.items()
        ]

    def to_dict(self) -> dict:
        return {"polynomial": str(self), "terms": self.to_records()}


def commutator(f: GradedPolynomial, g: GradedPolynomial) -> GradedPolynomial:
    return f * g - g * f


def left_normed(*fs: GradedPolynomial) -> GradedPolynomial:
    """[f1, f2, ..., fk] = [[f1, f2], ..., fk]."""
    out = fs[0]
    for f in fs[1:]:
        out = commutator(out, f)
    return out


def _sign(perm) -> int:
    sgn = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sgn = -sgn
    return sgn


def standard_polynomial(variables: Iterable[GradedVariable]) -> GradedPolynomial:
    """s_n(x_1..x_n) = sum over S_n of sign(sigma) x_sigma(1) ... x_sigma(n)."""
    vs = list(variables)
    terms = {}
    for perm in permutations(range(len(vs))):
        terms[tuple(vs[i] for i in perm)] = _sign(perm)
    return GradedPolynomial(terms)


def x(index: int, degree: Element = ()) -> GradedPolynomial:
    return GradedPolynomial.var(GradedVariable(index, tuple(degree)))

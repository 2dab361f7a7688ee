"""Exact rational linear algebra on sparse rows.

Vectors are ``dict`` objects mapping a column key to a nonzero rational
(``int`` or ``Fraction``).  Column keys must be mutually comparable; the
column order fixes the pivot choice, so every echelon form produced here is
the unique reduced row-echelon form of the spanned subspace.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Hashable, Iterable, Mapping

Rational = int | Fraction
SparseVec = dict


def rat(x) -> Rational:
    """Coerce ``x`` (int, Fraction, or "p/q" string) to an exact rational.

    Integral values come back as ``int`` so that integer-only workloads avoid
    ``Fraction`` overhead.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return rat(Fraction(x.strip()))
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; pass 'p/q' strings")
    return rat(Fraction(x))


def rat_str(x: Rational) -> str:
    return str(Fraction(x))


def div(a: Rational, b: Rational) -> Rational:
    if isinstance(a, int) and isinstance(b, int) and a % b == 0:
        return a // b
    return rat(Fraction(a) / b)


def add_scaled(target: dict, row: Mapping, coef: Rational) -> None:
    """target += coef * row, in place, dropping exact zeros."""
    for col, val in row.items():
        new = target.get(col, 0) + coef * val
        if new:
            target[col] = new
        else:
            target.pop(col, None)


def scale(row: Mapping, coef: Rational) -> dict:
    if not coef:
        return {}
    return {c: coef * v for c, v in row.items()}


def primitive(row: Mapping) -> tuple:
    """Canonical hashable representative of the line spanned by ``row``.

    Scales to coprime integers with a positive leading entry (in column
    order).  Used to deduplicate functionals before elimination.
    """
    if not row:
        return ()
    cols = sorted(row)
    den = 1
    for c in cols:
        v = row[c]
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(row[c] * den) for c in cols]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if ints[0] < 0:
        g = -g
    return tuple((c, v // g) for c, v in zip(cols, ints))


class Echelon:
    """Incrementally maintained reduced row-echelon form.

    Rows may carry a tag when added; :meth:`express` then writes any vector
    in the span as a combination of the tags of the rows that were accepted.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self._rows: dict = {}  # pivot column -> row (pivot entry == 1)
        self._combo: dict = {}  # pivot column -> tag combination
        self._order: list = []  # pivot columns, kept sorted lazily
        self.tags: list = []

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list:
        return sorted(self._rows)

    def rows(self) -> list[dict]:
        return [dict(self._rows[p]) for p in self.pivots]

    def _reduce(self, row: Mapping, combo: dict | None):
        row = dict(row)
        for col in [c for c in row if c in self._rows]:
            coef = row.get(col)
            if coef:
                add_scaled(row, self._rows[col], -coef)
                if combo is not None:
                    add_scaled(combo, self._combo[col], -coef)
        return row

    def reduce(self, row: Mapping) -> dict:
        """Remainder of ``row`` modulo the current span."""
        return self._reduce(row, None)

    def contains(self, row: Mapping) -> bool:
        return not self._reduce(row, None)

    def add(self, row: Mapping, tag: Hashable = None) -> bool:
        """Insert ``row``; return True when it enlarged the span."""
        combo = {tag: 1} if self.track else None
        rem = self._reduce(row, combo)
        if not rem:
            return False
        piv = min(rem)
        inv = div(1, rem[piv])
        rem = {c: v * inv for c, v in rem.items()}
        if combo is not None:
            combo = {t: v * inv for t, v in combo.items()}
        for p, prow in self._rows.items():
            coef = prow.get(piv)
            if coef:
                add_scaled(prow, rem, -coef)
                if combo is not None:
                    add_scaled(self._combo[p], combo, -coef)
        self._rows[piv] = rem
        if combo is not None:
            self._combo[piv] = combo
        if self.track:
            self.tags.append(tag)
        return True

    def express(self, row: Mapping) -> dict | None:
        """Coefficients over accepted tags, or None if ``row`` is outside the span."""
        if not self.track:
            raise ValueError("express() needs an Echelon built with track=True")
        combo: dict = {}
        row = dict(row)
        for col in [c for c in row if c in self._rows]:
            coef = row.get(col)
            if coef:
                add_scaled(row, self._rows[col], -coef)
                add_scaled(combo, self._combo[col], coef)
        if row:
            return None
        return combo

    def nullspace(self, columns: Iterable) -> list[dict]:
        """Basis of {x : row . x = 0 for every row}, one vector per free column."""
        out = []
        piv = self.pivots
        for f in columns:
            if f in self._rows:
                continue
            vec = {f: 1}
            for p in piv:
                v = self._rows[p].get(f)
                if v:
                    vec[p] = -v
            out.append(vec)
        return out


def echelon_of(rows: Iterable[Mapping]) -> Echelon:
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech


def rank(rows: Iterable[Mapping]) -> int:
    return echelon_of(rows).rank


def nullspace(rows: Iterable[Mapping], columns: Iterable) -> list[dict]:
    return echelon_of(rows).nullspace(columns)


def rref_basis(vectors: Iterable[Mapping]) -> list[dict]:
    """Canonical basis (reduced row-echelon form) of the span of ``vectors``."""
    return echelon_of(vectors).rows()


def span_contains(big: Iterable[Mapping], small: Iterable[Mapping]) -> dict | None:
    """Return None if span(small) is inside span(big), else a witness vector."""
    ech = echelon_of(big)
    for v in small:
        if not ech.contains(v):
            return dict(v)
    return None


def same_span(a: list[Mapping], b: list[Mapping]) -> bool:
    return rref_basis(a) == rref_basis(b)


def dense(vec: Mapping, n: int) -> list:
    return [vec.get(i, 0) for i in range(n)]


def sparse(vec: Iterable) -> dict:
    return {i: rat(v) for i, v in enumerate(vec) if v}


def mat_vec(matrix: list[list], vec: list) -> list:
    return [sum((a * b for a, b in zip(row, vec) if a and b), 0) for row in matrix]


def mat_mul(a: list[list], b: list[list]) -> list[list]:
    cols = list(zip(*b)) if b else []
    return [[sum((x * y for x, y in zip(row, col) if x and y), 0) for col in cols] for row in a]


def identity(n: int) -> list[list]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matrix_rank(matrix: list[list]) -> int:
    return rank(sparse(r) for r in matrix)


def solve_inverse(matrix: list[list]) -> list[list] | None:
    """Exact inverse of a square matrix, or None when singular."""
    n = len(matrix)
    ech = Echelon(track=True)
    for i, r in enumerate(matrix):
        if not ech.add(sparse(r), i):
            return None
    # row i of the inverse expresses e_i as a combination of the input rows
    inv = []
    for i in range(n):
        combo = ech.express({i: 1})
        inv.append([combo.get(k, 0) for k in range(n)])
    return inv


def determinant_is_zero(matrix: list[list]) -> bool:
    return matrix_rank(matrix) < len(matrix)

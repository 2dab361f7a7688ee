"""Center, Jacobson radical and the locality test for finite-dimensional algebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

import sympy

from ..linalg import Echelon, matrix_rank, rat, sparse
from ..report import INCONCLUSIVE, Verdict
from .core import FiniteGradedAlgebra, quotient_algebra


def center(A: FiniteGradedAlgebra) -> list[list]:
    """Basis of {z : z b = b z for every basis b}."""
    ech = Echelon()
    n = A.dim
    for b in range(n):
        # row for coordinate k of z b - b z, as a functional of z
        rows: dict = {}
        for i in range(n):
            for k, c in A.basis_product(i, b):
                rows.setdefault(k, {})
                rows[k][i] = rows[k].get(i, 0) + c
            for k, c in A.basis_product(b, i):
                rows.setdefault(k, {})
                rows[k][i] = rows[k].get(i, 0) - c
        for r in rows.values():
            r = {i: v for i, v in r.items() if v}
            if r:
                ech.add(r)
    return [[v.get(i, 0) for i in range(n)] for v in _canonical(ech.nullspace(range(n)))]


def _canonical(vectors):
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rows()


def trace_form(A: FiniteGradedAlgebra) -> list[list]:
    """T_ij = trace of left multiplication by b_i b_j."""
    n = A.dim
    tr = [sum(c for p in range(n) for q, c in A.basis_product(k, p) if q == p) for k in range(n)]
    return [[sum(c * tr[k] for k, c in A.basis_product(i, j)) for j in range(n)] for i in range(n)]


def radical(A: FiniteGradedAlgebra) -> list[list]:
    """Jacobson radical via the characteristic-0 trace criterion."""
    n = A.dim
    T = trace_form(A)
    ech = Echelon()
    for j in range(n):
        ech.add({i: T[i][j] for i in range(n) if T[i][j]})
    return [[v.get(i, 0) for i in range(n)] for v in _canonical(ech.nullspace(range(n)))]


def minimal_polynomial(A: FiniteGradedAlgebra, z: list) -> list:
    """Coefficients (constant term first, monic) of the minimal polynomial of z."""
    ech = Echelon(track=True)
    power = A.unit_vector()
    k = 0
    while True:
        combo = ech.express(sparse(power))
        if combo is not None:
            return [-combo.get(i, 0) for i in range(k)] + [1]
        ech.add(sparse(power), k)
        power = A.mul(power, z)
        k += 1


def _poly_eval(A: FiniteGradedAlgebra, coeffs, z: list) -> list:
    out = A.zero()
    power = A.unit_vector()
    for c in coeffs:
        out = [o + c * p for o, p in zip(out, power)]
        power = A.mul(power, z)
    return out


@dataclass
class LocalityResult:
    center: list
    radical: list
    is_local: Verdict
    witness: dict | None = None
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "center_dim": len(self.center),
            "radical_dim": len(self.radical),
            "is_local": self.is_local,
            "witness": self.witness,
            "notes": self.notes,
        }


def _candidate_elements(basis: list[list], n: int, tries: int = 40):
    for v in basis:
        yield v
    for t in range(2, tries):
        vec = [0] * n
        w = 1
        for b in basis:
            vec = [x + w * y for x, y in zip(vec, b)]
            w *= t
        yield vec


def division_test(S: FiniteGradedAlgebra) -> tuple[Verdict, dict | None, list]:
    """Decide whether a semisimple algebra S has no idempotents besides 0 and 1."""
    notes: list = []
    if S.dim == 0:
        return False, {"reason": "zero ring"}, notes
    Z = center(S)
    zdim = len(Z)
    primitive_found = False
    for z in _candidate_elements(Z, S.dim):
        mp = minimal_polynomial(S, z)
        x = sympy.Symbol("x")
        poly = sympy.Poly(list(reversed(mp)), x, domain="QQ")
        _, factors = poly.factor_list()
        if len(factors) > 1:
            f = factors[0][0] ** factors[0][1]
            g = sympy.prod(fac ** m for fac, m in factors[1:])
            s, t, h = sympy.gcdex(f.as_expr(), g.as_expr(), x)
            e_poly = sympy.Poly(sympy.expand(t * g.as_expr()), x, domain="QQ")
            coeffs = [_to_frac(sympy.Rational(c)) for c in reversed(e_poly.all_coeffs())]
            e = _poly_eval(S, coeffs, z)
            return False, {"central_idempotent": e, "minimal_polynomial": [str(c) for c in mp]}, notes
        if len(mp) - 1 == zdim:
            primitive_found = True
            break
    if not primitive_found:
        notes.append("no primitive central element found; center may not be a field")
        return INCONCLUSIVE, None, notes
    if S.dim == zdim:
        return True, None, notes
    # simple, noncommutative: look for a zero divisor
    for v in _candidate_elements([S.basis_vector(i) for i in range(S.dim)], S.dim, tries=6):
        if any(v) and matrix_rank(S.left_matrix(v)) < S.dim:
            return False, {"zero_divisor": v}, notes
    n = S.dim
    for i in range(n):
        for j in range(i + 1, n):
            for sgn in (1, -1, 2):
                v = [0] * n
                v[i], v[j] = 1, sgn
                if matrix_rank(S.left_matrix(v)) < n:
                    return False, {"zero_divisor": v}, notes
    ratio = S.dim // zdim
    if S.dim % zdim == 0 and isqrt(ratio) ** 2 == ratio and ratio > 1:
        notes.append(
            f"simple quotient of dimension {ratio} over its center with no zero divisor found"
        )
        return INCONCLUSIVE, None, notes
    notes.append("simple quotient with non-square dimension over its center")
    return INCONCLUSIVE, None, notes


def _to_frac(c):
    return rat(Fraction(int(c.p), int(c.q)))


def center_radical_local(A: FiniteGradedAlgebra) -> LocalityResult:
    Z = center(A)
    R = radical(A)
    S, _, _ = quotient_algebra(A, R, graded=False)
    verdict, witness, notes = division_test(S)
    if witness and "central_idempotent" in witness:
        witness = dict(witness, note="idempotent of A/rad, in quotient coordinates")
    return LocalityResult(Z, R, verdict, witness, notes)

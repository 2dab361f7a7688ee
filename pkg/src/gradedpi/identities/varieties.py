"""Variety membership, codimension tables and T-ideal consequences."""

from __future__ import annotations

from itertools import permutations, product

from ..algebra.core import FiniteGradedAlgebra
from ..algebra.group import TRIVIAL
from ..errors import GroupMismatch
from ..linalg import Echelon, rref_basis
from ..report import VerificationReport
from .grassmann import GrassmannOracle
from .engine import MultilinearPattern, all_patterns, identity_kernel, normalize_polynomial
from .polynomial import GradedPolynomial


def _name(A) -> str:
    return getattr(A, "name", "") or "algebra"


def variety_contains(A, B, max_degree: int, degrees=None, budget=None) -> VerificationReport:
    """Truncated test of Id^G(A) ⊆ Id^G(B) through all patterns of degree <= d.

    Degrees default to those occurring in A or B: a variable of any other
    degree evaluates to zero in both, so those patterns have full kernels
    on both sides.
    """
    if A.group != B.group:
        raise GroupMismatch(f"{_name(A)} is graded by {A.group}, {_name(B)} by {B.group}")
    if degrees is None:
        degrees = sorted(set(A.occurring_degrees()) | set(B.occurring_degrees()))
    else:
        degrees = [A.group.element(g) for g in degrees]
    checked = 0
    for n in range(1, max_degree + 1):
        for pattern in all_patterns(n, degrees):
            ka = identity_kernel(pattern, A, budget)
            kb = identity_kernel(pattern, B, budget)
            checked += 1
            ech = Echelon()
            for v in kb.vectors:
                ech.add(v)
            for v in ka.vectors:
                if not ech.contains(v):
                    return VerificationReport(
                        "variety_contains", False,
                        witness={
                            "pattern": pattern.to_dict(),
                            "separating_identity": str(pattern.to_polynomial(v)),
                        },
                        invariants={"patterns_checked": checked},
                        truncation_degree=max_degree,
                        notes=[f"identity of {_name(A)} that fails in {_name(B)}"],
                    )
    return VerificationReport(
        "variety_contains", True,
        invariants={"patterns_checked": checked, "degrees": [list(g) for g in degrees]},
        truncation_degree=max_degree,
        notes=[f"kernels of {_name(A)} contained in those of {_name(B)} up to degree {max_degree}"],
    )


def codimension_table(A, n_max: int, budget=None) -> list[tuple[int, int]]:
    """Classical codimensions c_1..c_{n_max}, ignoring the grading of A."""
    if isinstance(A, FiniteGradedAlgebra):
        source = A.forget_grading()
    elif isinstance(A, GrassmannOracle):
        source = GrassmannOracle(TRIVIAL)
    else:
        source = A
    group = source.group
    return [
        (n, identity_kernel(MultilinearPattern.trivial(n, group), source, budget).codimension)
        for n in range(1, n_max + 1)
    ]


def graded_codimensions(A, n: int, degrees=None, budget=None) -> list[tuple[MultilinearPattern, int]]:
    """Codimension at every (sorted) degree pattern of length n."""
    degrees = degrees or A.occurring_degrees()
    return [(p, identity_kernel(p, A, budget).codimension) for p in all_patterns(n, degrees)]


def consequences(generators, pattern: MultilinearPattern, group=TRIVIAL) -> list[dict]:
    """RREF basis of the T-ideal generated by multilinear ``generators`` inside ``pattern``.

    Multilinear consequences are spanned by u * g(m_1, ..., m_k) * v where
    the m_i are nonempty words and u, v words, jointly using each pattern
    variable once, with deg m_i = deg of the i-th variable of g.  The result
    is closed under the S_n action by construction.
    """
    pvars = pattern.variables
    n = pattern.n
    ech = Echelon()
    for g in generators:
        g = normalize_polynomial(g, group)
        gvars = g.variables()
        k = len(gvars)
        if k > n:
            continue
        # slot 0 = left word, 1..k = substituted words, k+1 = right word
        for labels in product(range(k + 2), repeat=n):
            if any(i not in labels for i in range(1, k + 1)):
                continue
            blocks = [[p for p in range(n) if labels[p] == s] for s in range(k + 2)]
            ok = True
            for i, gv in enumerate(gvars, start=1):
                if group.sum(pvars[p].degree for p in blocks[i]) != gv.degree:
                    ok = False
                    break
            if not ok:
                continue
            for orders in product(*(permutations(b) for b in blocks)):
                words = [tuple(pvars[p] for p in o) for o in orders]
                sub = {gv: GradedPolynomial({words[i]: 1}) for i, gv in enumerate(gvars, start=1)}
                poly = GradedPolynomial({words[0]: 1}) * g.substitute(sub) * GradedPolynomial({words[-1]: 1})
                if poly:
                    ech.add(pattern.to_vector(poly))
    return rref_basis(ech.rows())

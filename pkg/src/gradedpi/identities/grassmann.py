"""Exact identity kernels of the infinite-dimensional Grassmann algebra E.

Reduction used: on basis monomials a multilinear word is nonzero only when
the supports are pairwise disjoint, and then a_{s(1)}...a_{s(n)} equals
eps(s, p) a_1...a_n where p is the parity vector of the supports and eps
collects (-1)^{p_i p_j} over the inversions of s.  Hence the kernel at a
pattern is cut out by one functional per realizable parity vector: all of
{0,1}^n without grading, the degree sequence itself for the canonical
Z2-grading.  Every parity vector of length n is realized inside E_{2n}.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..algebra.builders import grassmann
from ..algebra.group import TRIVIAL, Z2, GradingGroup
from ..errors import GroupMismatch
from ..linalg import Echelon, rref_basis
from ..report import VerificationReport
from .engine import (
    IdentityKernel,
    MultilinearPattern,
    _budget,
    _check_budget,
    _perms,
    multilinearize,
    normalize_polynomial,
    pattern_of,
)
from .polynomial import GradedPolynomial


def reorder_sign(sigma, parity) -> int:
    sgn = 1
    n = len(sigma)
    for s in range(n):
        for t in range(s + 1, n):
            a, b = sigma[s], sigma[t]
            if a > b and parity[a] and parity[b]:
                sgn = -sgn
    return sgn


@dataclass(frozen=True)
class GrassmannOracle:
    """The Grassmann algebra E on countably many generators, as a kernel source."""

    group: GradingGroup = Z2
    name: str = "E"

    def __post_init__(self):
        if self.group not in (TRIVIAL, Z2):
            raise GroupMismatch("the Grassmann oracle supports the trivial and canonical Z2 gradings")

    @property
    def graded(self) -> bool:
        return self.group == Z2

    def occurring_degrees(self) -> list:
        return self.group.elements()

    def parity_vectors(self, pattern: MultilinearPattern) -> list[tuple]:
        if self.graded:
            return [tuple(g[0] for g in pattern.degree_sequence)]
        return list(product((0, 1), repeat=pattern.n))

    def kernel(self, pattern: MultilinearPattern, budget=None) -> IdentityKernel:
        _check_budget(pattern, _budget(budget))
        pattern = pattern.normalized(self.group)
        perms = _perms(pattern.n)
        ech = Echelon()
        for p in self.parity_vectors(pattern):
            ech.add({k: reorder_sign(sigma, p) for k, sigma in enumerate(perms)})
        vecs = rref_basis(ech.nullspace(range(len(perms))))
        note = "disjoint-support reduction over parity vectors"
        return IdentityKernel(pattern, self.name, vecs, [note])

    def model_algebra(self, degree: int):
        """E_{2d}: carries the same multilinear identities as E up to degree d."""
        return grassmann(max(2 * degree, 1), graded=self.graded)

    def is_identity(self, f: GradedPolynomial, budget=None) -> VerificationReport:
        f = normalize_polynomial(f, self.group)
        checked = []
        for h in multilinearize(f):
            if not h.variables():
                return VerificationReport("graded_identity", False, witness={"polynomial": str(h)})
            pattern = pattern_of(h)
            checked.append(str(pattern))
            if not self.kernel(pattern, budget).contains(h):
                return VerificationReport(
                    "graded_identity", False, witness={"polynomial": str(h)},
                    invariants={"patterns": checked},
                    notes=["oracle verdict: some parity vector gives a nonzero value"],
                )
        return VerificationReport("graded_identity", True, invariants={"patterns": checked})

    def to_dict(self) -> dict:
        return {"oracle": self.name, "grading": str(self.group)}


def grassmann_oracle(pattern: MultilinearPattern, graded: bool | None = None, budget=None) -> IdentityKernel:
    """Kernel of E at ``pattern``; the grading is read off the pattern by default."""
    if graded is None:
        graded = any(len(g) for g in pattern.degree_sequence)
    return GrassmannOracle(Z2 if graded else TRIVIAL).kernel(pattern, budget=budget)

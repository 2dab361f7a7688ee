"""Homogeneous graded Morita data and the induced morphism of ringed spaces."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .algebra.builders import corner_algebra, corner_basis
from .algebra.core import (
    FiniteGradedAlgebra,
    GradedAlgebraMorphism,
    HomogeneousElement,
    verify_graded_iso,
)
from .algebra.group import GradingGroup
from .errors import GroupMismatch, PreconditionError
from .identities.engine import Budget, MultilinearPattern, all_patterns, identity_kernel
from .identities.polynomial import GradedVariable, standard_polynomial
from .linalg import rat
from .report import INCONCLUSIVE, VerificationReport

GROUP_NOTE = (
    "a single abelian grading group G is used throughout; the mixed H/G variety "
    "hypothesis is read with H = G"
)


def matrix_over(B: FiniteGradedAlgebra, n: int) -> FiniteGradedAlgebra:
    """M_n(B) with deg(e_ij (x) b) = deg(b); basis index (i*n + j)*dim B + k."""
    if not isinstance(n, int) or n < 1:
        raise PreconditionError("matrix size must be a positive integer")
    if n == 1:
        return B
    m = B.dim
    consts = {}
    for i in range(n):
        for j in range(n):
            for l in range(n):
                for a, b, c, v in B.constants():
                    consts[((i * n + j) * m + a, (j * n + l) * m + b, (i * n + l) * m + c)] = v
    degs = [B.degrees[k] for _ in range(n * n) for k in range(m)]
    unit = [B.unit[k] if i == j else 0 for i in range(n) for j in range(n) for k in range(m)]
    labels = [f"e{i + 1}{j + 1}*{B.labels[k]}" if n < 10 else f"e{i + 1}_{j + 1}*{B.labels[k]}"
              for i in range(n) for j in range(n) for k in range(m)]
    return FiniteGradedAlgebra(B.group, degs, consts, unit, labels, name=f"M{n}({B.name})")


def diagonal_idempotent(B: FiniteGradedAlgebra, n: int, entries) -> list:
    """diag(entries) (x) 1_B as coordinates in M_n(B); ``entries`` are 0/1 flags."""
    m = B.dim
    v = [0] * (n * n * m)
    for i, flag in enumerate(entries):
        if flag:
            for k in range(m):
                v[(i * n + i) * m + k] = B.unit[k]
    return v


def first_corner_iso(B: FiniteGradedAlgebra, n: int) -> list:
    """Matrix of b -> e11 (x) b from B into e M_n(B) e, e = diag(1, 0, ..., 0), in the corner basis."""
    from .linalg import Echelon, sparse

    M = matrix_over(B, n)
    e = diagonal_idempotent(B, n, [1] + [0] * (n - 1))
    basis = corner_basis(M, e)
    ech = Echelon(track=True)
    for t, v in enumerate(basis):
        ech.add(sparse(v), t)
    cols = []
    for k in range(B.dim):
        combo = ech.express({k: 1})  # e11 (x) b_k has index k
        cols.append([combo.get(t, 0) for t in range(len(basis))])
    return [[cols[c][r] for c in range(B.dim)] for r in range(len(basis))]


@dataclass
class MoritaContext:
    """A graded isomorphic to e M_n(B) e for a degree-neutral idempotent e."""

    A: FiniteGradedAlgebra
    B: FiniteGradedAlgebra
    n: int
    e: list
    iso: list | None = None  # matrix corner.dim x A.dim
    notes: list = field(default_factory=lambda: [GROUP_NOTE])

    def __post_init__(self):
        if not isinstance(self.A.group, GradingGroup) or self.A.group != self.B.group:
            raise GroupMismatch("A and B must be graded by the same abelian group")
        self.e = [rat(c) for c in (self.e.coords if isinstance(self.e, HomogeneousElement) else self.e)]
        self._Mn = None
        self._corner = None

    @property
    def Mn(self) -> FiniteGradedAlgebra:
        if self._Mn is None:
            self._Mn = matrix_over(self.B, self.n)
        return self._Mn

    @property
    def corner(self) -> FiniteGradedAlgebra:
        if self._corner is None:
            self._corner = corner_algebra(self.Mn, self.e)
        return self._corner

    def validate(self) -> VerificationReport:
        M = self.Mn
        inv = {"n": self.n, "dim_Mn": M.dim}
        if len(self.e) != M.dim:
            return VerificationReport("morita_context", False, {"reason": "idempotent has the wrong length"}, inv)
        if not any(self.e):
            return VerificationReport("morita_context", False, {"reason": "idempotent is zero"}, inv)
        deg = M.degree_of(self.e)
        if deg is None or not M.group.is_identity(deg):
            return VerificationReport(
                "morita_context", False, {"reason": "idempotent is not of neutral degree", "degree": deg}, inv
            )
        if M.mul(self.e, self.e) != self.e:
            return VerificationReport("morita_context", False, {"reason": "e^2 != e"}, inv)
        inv["dim_corner"] = len(corner_basis(M, self.e))
        if self.iso is not None:
            rep = verify_graded_iso(GradedAlgebraMorphism(self.A, self.corner, self.iso))
            if not rep:
                return VerificationReport("morita_context", False, {"reason": "iso", "detail": rep.witness}, inv)
            inv["iso"] = "verified"
        return VerificationReport("morita_context", True, invariants=inv, notes=list(self.notes))

    def to_dict(self) -> dict:
        return {"A": self.A.name, "B": self.B.name, "n": self.n, "e": [str(c) for c in self.e],
                "iso": None if self.iso is None else [[str(c) for c in r] for r in self.iso]}


def find_graded_iso(A: FiniteGradedAlgebra, C: FiniteGradedAlgebra, coefficients=(0, 1, -1)):
    """Brute-force search for a graded isomorphism A -> C, for dimensions <= 3.

    Columns range over homogeneous vectors with entries in ``coefficients``.
    Returns (matrix or None, report); a miss is inconclusive, not a proof of
    non-isomorphism, unless the component dimensions already differ.
    """
    if A.dim != C.dim or A.component_dims() != C.component_dims():
        return None, VerificationReport("iso_search", False, {"reason": "component dimensions differ"})
    if A.dim > 3:
        raise PreconditionError("isomorphism search is limited to dimension <= 3")
    cands = []
    for i in range(A.dim):
        comp = C.component(A.degrees[i])
        cols = []
        for vals in product(coefficients, repeat=len(comp)):
            if any(vals):
                col = [0] * C.dim
                for k, v in zip(comp, vals):
                    col[k] = v
                cols.append(col)
        cands.append(cols)
    tried = 0
    for cols in product(*cands):
        tried += 1
        M = [[cols[c][r] for c in range(A.dim)] for r in range(C.dim)]
        if [sum(M[r][c] * A.unit[c] for c in range(A.dim)) for r in range(C.dim)] != list(C.unit):
            continue
        if verify_graded_iso(GradedAlgebraMorphism(A, C, M)):
            return M, VerificationReport("iso_search", True, invariants={"tried": tried})
    return None, VerificationReport(
        "iso_search", INCONCLUSIVE, invariants={"tried": tried, "coefficients": [str(c) for c in coefficients]},
        notes=["no isomorphism with the searched coefficients"],
    )


def _degrees_of(*algebras):
    out = set()
    for X in algebras:
        out.update(X.occurring_degrees())
    return sorted(out)


def corner_variety_certificate(ctx: MoritaContext, degree: int, budget: Budget | None = None) -> VerificationReport:
    """Truncated certificate of var(A) inside var(M_n(B)).

    At every pattern of degree <= ``degree`` over the occurring degrees:
    ker M_n(B) inside ker eM_n(B)e, and ker eM_n(B)e = ker A when an
    isomorphism is supplied.  The standard polynomial s_d is tested in both
    kernels for the trivial-degree pattern of length ``degree``.
    """
    base = ctx.validate()
    if not base:
        return VerificationReport("corner_certificate", False, {"hypothesis": "morita_context", "detail": base.witness},
                                  truncation_degree=degree, notes=list(ctx.notes))
    M, C, A = ctx.Mn, ctx.corner, ctx.A
    degrees = _degrees_of(M, C, A)
    checked = 0
    for k in range(1, degree + 1):
        for pat in all_patterns(k, degrees):
            kM = identity_kernel(pat, M, budget)
            kC = identity_kernel(pat, C, budget)
            checked += 1
            if not kM.is_subspace_of(kC):
                missing = next(v for v in kM.vectors if not _contains(kC, v))
                return VerificationReport(
                    "corner_certificate", False,
                    {"hypothesis": "Mn_in_corner", "pattern": pat.to_dict(), "identity": str(pat.to_polynomial(missing))},
                    truncation_degree=degree, notes=list(ctx.notes),
                )
            if ctx.iso is not None:
                kA = identity_kernel(pat, A, budget)
                if not kA.same_as(kC):
                    return VerificationReport(
                        "corner_certificate", False, {"hypothesis": "corner_equals_A", "pattern": pat.to_dict()},
                        truncation_degree=degree, notes=list(ctx.notes),
                    )
    inv = {"patterns_checked": checked, "degrees": [list(g) for g in degrees], "iso_supplied": ctx.iso is not None}
    if degree >= 1:
        s = standard_polynomial([GradedVariable(i, M.group.identity) for i in range(1, degree + 1)])
        pat = MultilinearPattern.trivial(degree, M.group)
        inv[f"s{degree}_in_Mn"] = identity_kernel(pat, M, budget).contains(s)
        inv[f"s{degree}_in_corner"] = identity_kernel(pat, C, budget).contains(s)
    notes = list(ctx.notes)
    if ctx.iso is None:
        notes.append("no isomorphism A -> eM_n(B)e supplied; only the corner inclusion is certified")
    return VerificationReport("corner_certificate", True, invariants=inv, truncation_degree=degree, notes=notes)


def _contains(kernel, v) -> bool:
    from .linalg import Echelon

    ech = Echelon()
    for w in kernel.vectors:
        ech.add(w)
    return ech.contains(v)


def morita_ringed_morphism(X, F, G, ctx: MoritaContext, degree: int, components=None, budget=None):
    """(id_X, j*) between F (in var A) and G (in var M_n(B)) via the corner certificate.

    The per-open identity inclusion of the recovering construction is
    replaced by the Morita-derived inclusion Id(M_n(B)) inside Id(A); the
    sections are checked to lie in var(A) and var(M_n(B)) respectively.
    Returns ``(RingedMorphism | None, report)`` with a hypothesis ledger.
    """
    from .sheaves.ringed import build_recovering_morphism
    from .sheaves.topology import validate_topology

    ledger = {}
    ctx_rep = ctx.validate()
    ledger["morita_context"] = ctx_rep.verdict
    if not ctx_rep:
        return None, VerificationReport(
            "morita_morphism", False, {"hypothesis": "morita_context", "detail": ctx_rep.witness},
            {"ledger": ledger}, truncation_degree=degree, notes=list(ctx.notes),
        )
    top = validate_topology(X)
    ledger["topology"] = top.verdict
    if not top or F.topology is not X and F.topology.opens != X.opens:
        return None, VerificationReport("morita_morphism", False, {"hypothesis": "topology"}, {"ledger": ledger},
                                        truncation_degree=degree)
    cert = corner_variety_certificate(ctx, degree, budget)
    ledger["corner_certificate"] = cert.verdict
    if not cert:
        return None, VerificationReport(
            "morita_morphism", False, {"hypothesis": "corner_certificate", "detail": cert.witness},
            {"ledger": ledger}, truncation_degree=degree, notes=list(ctx.notes),
        )
    morph, rep = build_recovering_morphism(
        F, G, degree, components=components, reference_source=ctx.A, reference_target=ctx.Mn,
        variety_certificate=lambda U: cert,
    )
    ledger["recovering_morphism"] = rep.verdict
    ledger["h1_hom"] = rep.invariants.get("h1_hom")
    notes = list(ctx.notes) + list(rep.notes)
    notes.append("variety inclusion per open supplied by the corner certificate")
    if morph is None:
        return None, VerificationReport(
            "morita_morphism", False, rep.witness, {"ledger": ledger}, truncation_degree=degree, notes=notes
        )
    report = VerificationReport(
        "morita_morphism", True, invariants={"ledger": ledger, "corner": cert.invariants, **rep.invariants},
        truncation_degree=degree, notes=notes,
    )
    morph.report = report
    return morph, report

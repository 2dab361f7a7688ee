"""Odd-ideal and commutator filtrations of finite-dimensional algebras."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra.core import FiniteGradedAlgebra, ideal_closure, quotient_algebra, span_product
from ..algebra.group import Z, Z2
from ..errors import GroupMismatch
from ..linalg import Echelon, sparse
from ..report import VerificationReport


def _same_span(a, b) -> bool:
    ea, eb = Echelon(), Echelon()
    for v in a:
        ea.add(sparse(v))
    for v in b:
        eb.add(sparse(v))
    return ea.rank == eb.rank and all(ea.contains(sparse(v)) for v in b)


def _inside(small, big) -> bool:
    ech = Echelon()
    for v in big:
        ech.add(sparse(v))
    return all(ech.contains(sparse(v)) for v in small)


@dataclass
class FiltrationChain:
    """levels[i] is a basis of F^i (F^0 = A); ``label`` names the construction."""

    algebra: FiniteGradedAlgebra
    levels: list
    label: str
    stabilized: bool = False
    notes: list = field(default_factory=list)

    @property
    def dims(self) -> list:
        return [len(L) for L in self.levels]

    def to_dict(self) -> dict:
        return {"label": self.label, "dims": self.dims, "stabilized": self.stabilized, "notes": self.notes}


def _ideal_powers(A: FiniteGradedAlgebra, J: list, max_steps: int):
    """[A, J, J^2, ...] until 0 or stabilization."""
    levels = [[A.basis_vector(i) for i in range(A.dim)], J]
    stabilized = False
    while levels[-1] and len(levels) <= max_steps:
        nxt = span_product(A, levels[-1], J)
        if _same_span(nxt, levels[-1]):
            stabilized = True
            break
        levels.append(nxt)
    return levels, stabilized


@dataclass
class AssociatedGraded:
    chain: FiltrationChain
    algebra: FiniteGradedAlgebra
    report: VerificationReport


def odd_ideal_filtration(A: FiniteGradedAlgebra) -> AssociatedGraded:
    """J = ideal generated by A^1; Gr = sum of J^i / J^(i+1), Z-graded by i."""
    if A.group != Z2:
        raise GroupMismatch(f"odd ideal filtration needs a Z2-graded algebra, got {A.group}")
    odd = [A.basis_vector(i) for i in A.component((1,))]
    J = ideal_closure(A, odd)
    levels, stabilized = _ideal_powers(A, J, A.dim + 2)
    chain = FiltrationChain(A, levels, "odd-ideal", stabilized)
    if stabilized:
        chain.notes.append("powers of J stabilize at a nonzero ideal; Gr covers only the quotient by it")

    # representatives of J^i / J^(i+1); a stable last level contributes nothing
    padded = [L for L in levels if L]
    reps, level_of = [], []
    for i in range(len(padded)):
        below = padded[i + 1] if i + 1 < len(padded) else (padded[i] if stabilized else [])
        ech = Echelon()
        for v in below:
            ech.add(sparse(v))
        for v in padded[i]:
            if ech.add(sparse(v)):
                reps.append(v)
                level_of.append(i)

    def level(i):
        if i < len(padded):
            return padded[i]
        return padded[-1] if stabilized else []

    consistent = True
    for i in range(len(padded)):
        for j in range(len(padded)):
            target = level(i + j + 1)
            if not _inside(span_product(A, level(i), level(j + 1)), target) or \
                    not _inside(span_product(A, level(i + 1), level(j)), target):
                consistent = False

    # coordinates modulo the next level
    trackers = {}
    for i in set(level_of):
        ech = Echelon(track=True)
        for v in level(i + 1):
            ech.add(sparse(v), ("low", None))
        for t, v in enumerate(reps):
            if level_of[t] == i:
                ech.add(sparse(v), ("rep", t))
        trackers[i] = ech
    consts = {}
    for a, u in enumerate(reps):
        for b, v in enumerate(reps):
            k = level_of[a] + level_of[b]
            if k not in trackers:
                continue
            combo = trackers[k].express(A.mul_sparse(sparse(u), sparse(v)))
            for tag, c in (combo or {}).items():
                if tag[0] == "rep" and c:
                    consts[(a, b, tag[1])] = c
    unit = {}
    if 0 in trackers:
        combo = trackers[0].express(sparse(A.unit)) or {}
        unit = {tag[1]: c for tag, c in combo.items() if tag[0] == "rep"}
    labels = [_label(A, v, t) for t, v in enumerate(reps)]
    Gr = FiniteGradedAlgebra(Z, [(i,) for i in level_of], consts,
                             [unit.get(t, 0) for t in range(len(reps))], labels, name=f"Gr({A.name})")
    gr_dims = [level_of.count(i) for i in range(len(padded))]
    total_ok = sum(gr_dims) == A.dim
    rep = VerificationReport(
        "odd_ideal_filtration", consistent and (total_ok or stabilized),
        None if consistent else {"axiom": "J^i J^j inside J^(i+j)"},
        {"ideal_dims": chain.dims[1:], "graded_dims": gr_dims, "sum_matches_dim": total_ok},
        notes=list(chain.notes),
    )
    return AssociatedGraded(chain, Gr, rep)


def _label(A, v, t) -> str:
    support = [k for k, x in enumerate(v) if x]
    if len(support) == 1 and v[support[0]] == 1:
        return A.labels[support[0]]
    return f"g{t}"


# -- commutator filtration -------------------------------------------------------------

@dataclass
class CommutatorFiltration:
    chain: FiltrationChain
    abelianization: FiniteGradedAlgebra
    projection: list
    order: int | str
    report: VerificationReport


def _lie_layers(A: FiniteGradedAlgebra, depth: int) -> list:
    """layers[w] spans the Lie monomials with w brackets (layer 0 = A)."""
    basis = [A.basis_vector(i) for i in range(A.dim)]
    layers = [basis]
    for _ in range(depth):
        ech = Echelon()
        nxt = []
        for u in layers[-1]:
            for b in basis:
                c = A.commutator(u, b)
                if any(c) and ech.add(sparse(c)):
                    nxt.append(c)
        layers.append(nxt)
    return layers


def _lie_weight_level(A, layers, k):
    """Sum over i_1 + ... + i_m = k of ideals A L_{i_1} A ... A L_{i_m} A."""
    full = [A.basis_vector(i) for i in range(A.dim)]
    ech = Echelon()
    out = []

    def rec(remaining, current):
        if remaining == 0:
            for v in current:
                if ech.add(sparse(v)):
                    out.append(v)
            return
        for w in range(1, remaining + 1):
            if not layers[w]:
                continue
            gens = span_product(A, span_product(A, current, layers[w]), full)
            if gens:
                rec(remaining - w, gens)

    rec(k, full)
    return [[r.get(i, 0) for i in range(A.dim)] for r in ech.rows()]


def commutator_filtration(A: FiniteGradedAlgebra, k_max: int = 6, mode: str = "ideal_power") -> CommutatorFiltration:
    """F^{-1} = ideal of [A, A]; deeper levels by ``mode``.

    ``ideal_power``: F^{-k} = (F^{-1})^k.  ``lie_weight``: the sum of products
    of ideals generated by Lie monomials of total bracket weight k.  The
    nilcommutative order is the least l with F^{-(l+1)} = 0.
    """
    commutators = []
    for i in range(A.dim):
        for j in range(i + 1, A.dim):
            c = A.commutator(A.basis_vector(i), A.basis_vector(j))
            if any(c):
                commutators.append(c)
    F1 = ideal_closure(A, commutators)
    full = [A.basis_vector(i) for i in range(A.dim)]
    levels = [full, F1]
    if mode == "ideal_power":
        while levels[-1] and len(levels) <= k_max:
            levels.append(span_product(A, levels[-1], F1))
    elif mode == "lie_weight":
        layers = _lie_layers(A, k_max)
        while levels[-1] and len(levels) <= k_max:
            levels.append(_lie_weight_level(A, layers, len(levels)))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    order: int | str
    zero_at = next((k for k, L in enumerate(levels) if k >= 1 and not L), None)
    order = zero_at - 1 if zero_at is not None else f"order > {k_max}"
    chain = FiltrationChain(A, levels, "commutator", stabilized=zero_at is None)
    Q, proj, _ = quotient_algebra(A, F1, name=f"{A.name}^ab", graded=True)
    notes = [f"mode {mode}"]
    if Q.dim == 0 and A.dim:
        notes.append("abelianization is zero: the unit lies in the commutator ideal")
    ideal_ok = all(_inside(span_product(A, full, L), L) and _inside(span_product(A, L, full), L) for L in levels)
    rep = VerificationReport(
        "commutator_filtration", ideal_ok and Q.is_commutative(),
        None if ideal_ok else {"axiom": "levels are ideals"},
        {"dims": chain.dims, "order": order, "abelianization_dim": Q.dim, "mode": mode},
        notes=notes,
    )
    return CommutatorFiltration(chain, Q, proj, order, rep)

"""Presheaves of graded algebras on finite spaces: checks, stalks, sheafification."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from ..algebra.builders import direct_product, function_algebra, tensor_with_commutative
from ..algebra.core import FiniteGradedAlgebra, GradedAlgebraMorphism, subalgebra, verify_graded_iso, verify_morphism, zero_algebra
from ..algebra.group import TRIVIAL
from ..errors import GroupMismatch, PresheafError
from ..linalg import Echelon, identity, mat_mul, matrix_rank, sparse
from ..report import VerificationReport, combine
from .topology import FiniteTopology, bits, check_continuous, validate_topology


class PresheafOfAlgebras:
    """Sections per open (bitmask) and restriction matrices per pair V ⊆ U.

    ``restrictions[(U, V)]`` has shape dim F(V) x dim F(U).
    """

    def __init__(self, topology: FiniteTopology, sections: dict, restrictions: dict, name: str = ""):
        self.topology = topology
        self.sections = dict(sections)
        self.restrictions = {k: [list(r) for r in m] for k, m in restrictions.items()}
        self.name = name
        self.notes: list = []
        self.truncation_degree: int | None = None
        # set by builders of A (x) Fun(parts of U) sheaves
        self.base_algebra: FiniteGradedAlgebra | None = None
        self.parts: dict | None = None
        missing = [U for U in topology.opens if U not in self.sections]
        if missing:
            raise PresheafError(f"no section algebra for open {topology.label(missing[0])}")
        groups = {A.group for A in self.sections.values()}
        if len(groups) > 1:
            raise GroupMismatch("section algebras are graded by different groups")

    @property
    def group(self):
        return next(iter(self.sections.values())).group if self.sections else TRIVIAL

    def __call__(self, U: int) -> FiniteGradedAlgebra:
        return self.sections[U]

    def matrix(self, U: int, V: int) -> list[list]:
        try:
            return self.restrictions[(U, V)]
        except KeyError:
            T = self.topology
            raise PresheafError(f"missing restriction {T.label(U)} -> {T.label(V)}") from None

    def res(self, U: int, V: int) -> GradedAlgebraMorphism:
        return GradedAlgebraMorphism(self.sections[U], self.sections[V], self.matrix(U, V))

    def restrict_vector(self, U: int, V: int, vec) -> list:
        M = self.matrix(U, V)
        return [sum(r[i] * vec[i] for i in range(len(vec)) if vec[i]) for r in M]

    def pairs(self):
        T = self.topology
        for U in T.opens:
            for V in T.subopens(U):
                yield U, V

    def dims(self) -> dict:
        return {U: A.dim for U, A in self.sections.items()}

    def to_dict(self) -> dict:
        T = self.topology
        return {
            "name": self.name,
            "topology": T.to_dict(),
            "sections": {T.label(U): self.sections[U].to_dict() for U in T.opens},
            "restrictions": [
                {"from": bits(U), "to": bits(V), "matrix": [[str(x) for x in r] for r in self.restrictions[(U, V)]]}
                for U, V in self.pairs() if (U, V) in self.restrictions
            ],
        }


def _zero_matrix(rows: int, cols: int) -> list[list]:
    return [[0] * cols for _ in range(rows)]


def presheaf_from_maps(T: FiniteTopology, sections: dict, restrict: Callable, name: str = "") -> PresheafOfAlgebras:
    """Fill every restriction with ``restrict(U, V)``."""
    res = {}
    for U in T.opens:
        for V in T.subopens(U):
            res[(U, V)] = restrict(U, V)
    return PresheafOfAlgebras(T, sections, res, name)


# -- builders ----------------------------------------------------------------------

def constant_presheaf(A: FiniteGradedAlgebra, T: FiniteTopology) -> PresheafOfAlgebras:
    """A on every nonempty open, 0 on the empty set, identity restrictions."""
    Z = zero_algebra(A.group)
    sections = {U: (A if U else Z) for U in T.opens}

    def restrict(U, V):
        if not V:
            return []
        return identity(A.dim)

    return presheaf_from_maps(T, sections, restrict, name=f"const_{A.name}")


def _local_functions(A: FiniteGradedAlgebra, parts_of: Callable, T: FiniteTopology, name: str):
    """Sections A (x) Fun(parts(U)); restriction sends the indicator of a part of U
    to the sum of indicators of the parts of V contained in it."""
    parts = {U: parts_of(U) for U in T.opens}
    sections = {}
    for U in T.opens:
        if parts[U]:
            C = function_algebra([T.label(p) for p in parts[U]])
            sections[U] = tensor_with_commutative(A, C)
        else:
            sections[U] = zero_algebra(A.group)

    def restrict(U, V):
        pu, pv = parts[U], parts[V]
        M = _zero_matrix(A.dim * len(pv), A.dim * len(pu))
        for b, q in enumerate(pv):
            owners = [a for a, p in enumerate(pu) if q & ~p == 0]
            for a in owners:
                for i in range(A.dim):
                    M[i * len(pv) + b][i * len(pu) + a] = 1
        return M

    F = presheaf_from_maps(T, sections, restrict, name=name)
    F.base_algebra = A
    F.parts = parts
    return F


def build_function_sheaf(A: FiniteGradedAlgebra, T: FiniteTopology) -> PresheafOfAlgebras:
    """O_A(U) = A (x) Fun(U) with restriction of functions."""
    return _local_functions(A, lambda U: [1 << i for i in bits(U)], T, f"O_{A.name}")


def constant_sheaf(A: FiniteGradedAlgebra, T: FiniteTopology) -> PresheafOfAlgebras:
    """Locally constant A-valued functions: A (x) Fun(connected components of U)."""
    return _local_functions(A, T.components, T, f"const_sheaf_{A.name}")


def label_presheaf(A: FiniteGradedAlgebra, T: FiniteTopology, supports, rule: str = "meets") -> PresheafOfAlgebras:
    """F(U) = A (x) Fun(S(U)) with S(U) = labels whose support meets (or lies in) U.

    S is monotone in U for both rules, so projection onto S(V) is a
    restriction; "inside" with singleton supports gives the function sheaf,
    while "meets" usually violates the sheaf axioms.
    """
    supports = [int(s) for s in supports]

    def S(U):
        if rule == "meets":
            return [k for k, K in enumerate(supports) if K & U]
        if rule == "inside":
            return [k for k, K in enumerate(supports) if K and K & ~U == 0]
        raise ValueError(f"unknown rule {rule!r}")

    labels = {U: S(U) for U in T.opens}
    sections = {}
    for U in T.opens:
        if labels[U]:
            sections[U] = tensor_with_commutative(A, function_algebra([str(k) for k in labels[U]]))
        else:
            sections[U] = zero_algebra(A.group)

    def restrict(U, V):
        lu, lv = labels[U], labels[V]
        M = _zero_matrix(A.dim * len(lv), A.dim * len(lu))
        for b, k in enumerate(lv):
            a = lu.index(k)
            for i in range(A.dim):
                M[i * len(lv) + b][i * len(lu) + a] = 1
        return M

    return presheaf_from_maps(T, sections, restrict, name=f"labels_{rule}_{A.name}")


def random_presheaf(T: FiniteTopology, seed: int, algebras=None) -> PresheafOfAlgebras:
    """Seeded label presheaf: random supports, random rule, algebra from ``algebras``."""
    from ..algebra.builders import base_field, truncated_polynomial

    rng = random.Random(seed)
    algebras = algebras or [base_field(), truncated_polynomial(2)]
    A = rng.choice(algebras)
    rule = rng.choice(["meets", "inside"])
    k = rng.randint(1, T.n + 2)
    supports = [rng.randint(1, T.full) for _ in range(k)] if T.n else []
    return label_presheaf(A, T, supports, rule)


# -- presheaf checks ------------------------------------------------------------------

def check_presheaf(F: PresheafOfAlgebras, reference=None, degree: int | None = None, monotone: bool = False) -> VerificationReport:
    """Functoriality and morphism validity; optional variety bookkeeping.

    With ``reference`` (an algebra or oracle) and ``degree`` every section is
    tested for membership in the variety of the reference; with ``monotone``
    each restriction is tested for Id(F(U)) ⊆ Id(F(V)).  Variety findings are
    reported under ``invariants["variety"]`` and flagged in the notes; they do
    not change the presheaf verdict.
    """
    T = F.topology
    top = validate_topology(T)
    if not top:
        return VerificationReport("check_presheaf", False, {"topology": top.witness})
    for U, V in F.pairs():
        F.matrix(U, V)
    for U, V in F.pairs():
        rep = verify_morphism(F.res(U, V))
        if not rep:
            return VerificationReport(
                "check_presheaf", False,
                {"axiom": "morphism", "restriction": [T.label(U), T.label(V)], "detail": rep.witness},
            )
    for U in T.opens:
        if F.matrix(U, U) != identity(F(U).dim):
            return VerificationReport("check_presheaf", False, {"axiom": "identity", "open": T.label(U)})
    for U in T.opens:
        for V in T.subopens(U):
            for W in T.subopens(V):
                lhs = F.matrix(U, W)
                rhs = _apply_chain(F.matrix(V, W), F.matrix(U, V), F(U).dim)
                if [list(r) for r in lhs] != [list(r) for r in rhs]:
                    return VerificationReport(
                        "check_presheaf", False,
                        {"axiom": "composition", "opens": [T.label(U), T.label(V), T.label(W)]},
                    )
    inv: dict = {"opens": len(T.opens)}
    notes: list = []
    if degree is not None and (reference is not None or monotone):
        from ..identities.varieties import variety_contains

        variety: dict = {}
        if reference is not None:
            for U in T.opens:
                if F(U).dim == 0:
                    continue
                r = variety_contains(reference, F(U), degree)
                variety[f"in_var:{T.label(U)}"] = r.verdict
                if not r:
                    notes.append(f"F{T.label(U)} leaves the variety of the reference: {r.witness}")
        if monotone:
            for U, V in F.pairs():
                if U == V or F(V).dim == 0:
                    continue
                r = variety_contains(F(U), F(V), degree)
                variety[f"{T.label(U)}>{T.label(V)}"] = r.verdict
                if not r:
                    notes.append(
                        f"Id(F{T.label(U)}) not inside Id(F{T.label(V)}) at degree <= {degree}: {r.witness}"
                    )
        inv["variety"] = variety
        inv["variety_verdict"] = combine(variety.values())
    return VerificationReport(
        "check_presheaf", True, invariants=inv, truncation_degree=degree, notes=notes
    )


def irredundant_covers(T: FiniteTopology, U: int) -> list[list[int]]:
    """Antichains of proper subopens of U covering U in which every member is needed."""
    if U == 0:
        return [[]]
    cands = [V for V in T.subopens(U) if V != U and V]
    out = []

    def rec(start, chosen, covered):
        if covered == U:
            for i, V in enumerate(chosen):
                rest = 0
                for j, W in enumerate(chosen):
                    if j != i:
                        rest |= W
                if V & ~rest == 0:
                    return
            out.append(list(chosen))
            return
        for k in range(start, len(cands)):
            V = cands[k]
            if V & ~covered == 0:
                continue
            if any((V & ~W == 0) or (W & ~V == 0) for W in chosen):
                continue
            chosen.append(V)
            rec(k + 1, chosen, covered | V)
            chosen.pop()

    rec(0, [], 0)
    return out


def _cover_data(F: PresheafOfAlgebras, U: int, cover: list[int]):
    dims = [F(V).dim for V in cover]
    offsets = [sum(dims[:i]) for i in range(len(cover))]
    total = sum(dims)
    # restriction-tuple map as rows over F(U) coordinates
    r_rows = []
    for V in cover:
        r_rows.extend(F.matrix(U, V))
    constraints = []
    for i, Vi in enumerate(cover):
        for j in range(i + 1, len(cover)):
            Vj = cover[j]
            W = Vi & Vj
            Mi, Mj = F.matrix(Vi, W), F.matrix(Vj, W)
            for k in range(F(W).dim):
                row = {}
                for c, v in enumerate(Mi[k]):
                    if v:
                        row[offsets[i] + c] = v
                for c, v in enumerate(Mj[k]):
                    if v:
                        row[offsets[j] + c] = row.get(offsets[j] + c, 0) - v
                row = {c: v for c, v in row.items() if v}
                if row:
                    constraints.append(row)
    return total, r_rows, constraints


def check_sheaf(F: PresheafOfAlgebras) -> VerificationReport:
    """Monopresheaf and gluing axioms over every irredundant cover."""
    T = F.topology
    checked = 0
    for U in T.opens:
        dimU = F(U).dim
        for cover in irredundant_covers(T, U):
            checked += 1
            total, r_rows, constraints = _cover_data(F, U, cover)
            ech = Echelon()
            for row in r_rows:
                s = sparse(row)
                if s:
                    ech.add(s)
            rank_r = ech.rank
            labels = [T.label(V) for V in cover]
            if rank_r < dimU:
                kernel = ech.nullspace(range(dimU))[0]
                return VerificationReport(
                    "check_sheaf", False,
                    {"axiom": "monopresheaf", "open": T.label(U), "cover": labels,
                     "section": [kernel.get(i, 0) for i in range(dimU)]},
                    {"covers_checked": checked},
                )
            cech = Echelon()
            for c in constraints:
                cech.add(c)
            compat_dim = total - cech.rank
            if rank_r != compat_dim:
                image = Echelon()
                for i in range(dimU):
                    image.add({k: r_rows[k][i] for k in range(len(r_rows)) if r_rows[k][i]})
                family = next(v for v in cech.nullspace(range(total)) if not image.contains(v))
                return VerificationReport(
                    "check_sheaf", False,
                    {"axiom": "gluing", "open": T.label(U), "cover": labels,
                     "family": [family.get(i, 0) for i in range(total)]},
                    {"covers_checked": checked},
                )
    return VerificationReport("check_sheaf", True, invariants={"covers_checked": checked})


# -- morphisms of presheaves ------------------------------------------------------------

@dataclass
class PresheafMorphism:
    source: PresheafOfAlgebras
    target: PresheafOfAlgebras
    components: dict  # open -> matrix dim target(U) x dim source(U)

    def component(self, U: int) -> GradedAlgebraMorphism:
        return GradedAlgebraMorphism(self.source(U), self.target(U), self.components[U])

    def check(self) -> VerificationReport:
        T = self.source.topology
        for U in T.opens:
            rep = verify_morphism(self.component(U))
            if not rep:
                return VerificationReport("presheaf_morphism", False, {"open": T.label(U), "detail": rep.witness})
        for U, V in self.source.pairs():
            lhs = _apply_chain(self.target.matrix(U, V), self.components[U], self.source(U).dim)
            rhs = _apply_chain(self.components[V], self.source.matrix(U, V), self.source(U).dim)
            if lhs != rhs:
                return VerificationReport(
                    "presheaf_morphism", False, {"axiom": "naturality", "pair": [T.label(U), T.label(V)]}
                )
        return VerificationReport("presheaf_morphism", True)

    def is_isomorphism(self) -> VerificationReport:
        base = self.check()
        if not base:
            return base
        T = self.source.topology
        for U in T.opens:
            rep = verify_graded_iso(self.component(U))
            if not rep:
                return VerificationReport("presheaf_isomorphism", False, {"open": T.label(U), "detail": rep.witness})
        return VerificationReport("presheaf_isomorphism", True)


def _apply_chain(second, first, cols) -> list:
    """second @ first, tolerating empty matrices."""
    if not second or not first:
        return [[0] * cols for _ in range(len(second))]
    return mat_mul(second, first)


# -- stalks -----------------------------------------------------------------------------

@dataclass
class Stalk:
    presheaf: PresheafOfAlgebras
    point: int
    algebra: FiniteGradedAlgebra
    neighbourhood: int
    projections: dict = field(default_factory=dict)  # open containing x -> matrix

    def germ(self, U: int, section) -> list:
        M = self.projections[U]
        return [sum(r[i] * section[i] for i in range(len(section))) for r in M]

    def check_cocone(self) -> bool:
        F = self.presheaf
        for U, pU in self.projections.items():
            for V, pV in self.projections.items():
                if V & ~U == 0:
                    if _apply_chain(pV, F.matrix(U, V), F(U).dim) != [list(r) for r in pU]:
                        return False
        return True

    def check_universal(self, target: FiniteGradedAlgebra, cocone: dict) -> VerificationReport:
        """Given maps psi_U: F(U) -> target compatible with restrictions, the induced
        map is psi at the minimal neighbourhood; verify psi_U = psi_{U_x} o pi_U."""
        F = self.presheaf
        base = cocone[self.neighbourhood]
        for U, psi in cocone.items():
            if _apply_chain(base, self.projections[U], F(U).dim) != [list(r) for r in psi]:
                return VerificationReport(
                    "stalk_universal", False, {"open": F.topology.label(U)}
                )
        rep = verify_morphism(GradedAlgebraMorphism(self.algebra, target, base))
        return VerificationReport("stalk_universal", rep.verdict, rep.witness)

    def to_dict(self) -> dict:
        T = self.presheaf.topology
        return {
            "point": T.points[self.point],
            "neighbourhood": T.label(self.neighbourhood),
            "dim": self.algebra.dim,
        }


def stalk_at(F: PresheafOfAlgebras, x) -> Stalk:
    T = F.topology
    xi = T._index(x)
    Ux = T.minimal_open(xi)
    proj = {U: F.matrix(U, Ux) for U in T.opens if U >> xi & 1}
    st = Stalk(F, xi, F(Ux), Ux, proj)
    if not st.check_cocone():
        raise PresheafError(f"restrictions are not functorial near point {T.points[xi]}")
    return st


def germ_colimit_dim(F: PresheafOfAlgebras, x) -> int:
    """Dimension of the colimit of F(U), U ∋ x, computed from germ relations
    (independent of the minimal-neighbourhood shortcut)."""
    T = F.topology
    xi = T._index(x)
    nbhds = [U for U in T.opens if U >> xi & 1]
    offsets = {}
    total = 0
    for U in nbhds:
        offsets[U] = total
        total += F(U).dim
    ech = Echelon()
    for U in nbhds:
        for V in nbhds:
            if V == U or V & ~U:
                continue
            M = F.matrix(U, V)
            for i in range(F(U).dim):
                row = {offsets[U] + i: 1}
                for k in range(F(V).dim):
                    if M[k][i]:
                        row[offsets[V] + k] = -M[k][i]
                ech.add(row)
    return total - ech.rank


# -- sheafification -------------------------------------------------------------------

def sheafify(F: PresheafOfAlgebras):
    """Compatible families over minimal neighbourhoods; returns (Sff(F), eta)."""
    T = F.topology
    G = F.group
    info = {}
    sections = {}
    for U in T.opens:
        pts = bits(U)
        nbhd = [T.minimal_open(x) for x in pts]
        factors = [F(V) for V in nbhd]
        dims = [A.dim for A in factors]
        offsets = [sum(dims[:i]) for i in range(len(pts))]
        total = sum(dims)
        ech = Echelon()
        for a, x in enumerate(pts):
            for b, y in enumerate(pts):
                if a == b or not (nbhd[a] >> y & 1):
                    continue
                M = F.matrix(nbhd[a], nbhd[b])
                for k in range(dims[b]):
                    row = {offsets[a] + c: v for c, v in enumerate(M[k]) if v}
                    row[offsets[b] + k] = row.get(offsets[b] + k, 0) - 1
                    row = {c: v for c, v in row.items() if v}
                    if row:
                        ech.add(row)
        basis = [[v.get(i, 0) for i in range(total)] for v in ech.nullspace(range(total))]
        if pts:
            P = direct_product(factors) if len(factors) > 1 else factors[0]
            S, incl = subalgebra(P, basis, name=f"Sff{T.label(U)}")
        else:
            S, incl = zero_algebra(G), []
        track = Echelon(track=True)
        for t, v in enumerate(basis):
            track.add(sparse(v), t)
        info[U] = (pts, offsets, dims, basis, track)
        sections[U] = S

    def coords_in(V, family_of_point: dict) -> list:
        pts, offsets, dims, basis, track = info[V]
        vec = {}
        for a, x in enumerate(pts):
            for c, v in enumerate(family_of_point[x]):
                if v:
                    vec[offsets[a] + c] = v
        combo = track.express(vec)
        if combo is None:
            raise PresheafError("family is not compatible")
        return [combo.get(t, 0) for t in range(len(basis))]

    def restrict(U, V):
        pts, offsets, dims, basis, _ = info[U]
        cols = []
        for v in basis:
            fam = {x: v[offsets[a]:offsets[a] + dims[a]] for a, x in enumerate(pts)}
            cols.append(coords_in(V, fam))
        return [list(r) for r in zip(*cols)] if cols else [[] for _ in range(len(info[V][3]))]

    Sff = presheaf_from_maps(T, sections, restrict, name=f"Sff({F.name})")
    eta = {}
    for U in T.opens:
        pts = info[U][0]
        cols = []
        for i in range(F(U).dim):
            e = [0] * F(U).dim
            e[i] = 1
            fam = {x: F.restrict_vector(U, T.minimal_open(x), e) for x in pts}
            cols.append(coords_in(U, fam))
        eta[U] = [list(r) for r in zip(*cols)] if cols else [[] for _ in range(len(info[U][3]))]
    return Sff, PresheafMorphism(F, Sff, eta)


def stalk_isomorphism(F: PresheafOfAlgebras, Sff: PresheafOfAlgebras, eta: PresheafMorphism, x) -> VerificationReport:
    """eta at the minimal neighbourhood identifies F_x with Sff(F)_x."""
    Ux = F.topology.minimal_open(F.topology._index(x))
    return verify_graded_iso(eta.component(Ux))


# -- pushforward -------------------------------------------------------------------------

def pushforward(f, X: FiniteTopology, Y: FiniteTopology, F: PresheafOfAlgebras) -> PresheafOfAlgebras:
    """(f_* F)(V) = F(f^{-1} V); ``f`` maps point names (dict) or indices (list) of X to Y."""
    pre = check_continuous(f, X, Y)
    sections = {V: F(pre[V]) for V in Y.opens}
    return presheaf_from_maps(Y, sections, lambda U, V: F.matrix(pre[U], pre[V]), name=f"push({F.name})")

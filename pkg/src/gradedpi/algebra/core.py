"""Finite-dimensional graded algebras given by exact structure constants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from ..errors import DegreeMismatch, GradingError, PreconditionError, StructureError
from ..linalg import Echelon, add_scaled, rat, sparse
from ..report import VerificationReport
from .group import TRIVIAL, Element, GradingGroup


class FiniteGradedAlgebra:
    """Associative algebra b_i b_j = sum_k c_ij^k b_k with a homogeneous basis.

    Instances are treated as immutable.  Coefficients are ``int`` or
    ``Fraction``; the zero algebra (dim 0) is allowed and plays the role of
    the value of a sheaf on the empty open set.
    """

    def __init__(
        self,
        group: GradingGroup,
        degrees: Iterable,
        constants: Mapping | Iterable,
        unit: Iterable,
        labels: Iterable[str] | None = None,
        name: str = "",
    ):
        self.group = group
        self.degrees: tuple[Element, ...] = tuple(group.element(g) for g in degrees)
        n = len(self.degrees)
        self.labels = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(n))
        if len(self.labels) != n:
            raise StructureError(f"{len(self.labels)} labels for dimension {n}")
        self.unit = tuple(rat(u) for u in unit)
        if len(self.unit) != n:
            raise StructureError(f"unit has length {len(self.unit)}, expected {n}")
        self.name = name

        items = constants.items() if isinstance(constants, Mapping) else (
            ((i, j, k), c) for i, j, k, c in constants
        )
        table: dict = {}
        for (i, j, k), c in items:
            for idx in (i, j, k):
                if not isinstance(idx, int) or not 0 <= idx < n:
                    raise StructureError(f"structure constant index {(i, j, k)} outside [0,{n})")
            c = rat(c)
            if not c:
                continue
            row = table.setdefault((i, j), {})
            row[k] = row.get(k, 0) + c
            if not row[k]:
                del row[k]
        self._table = {
            key: tuple(sorted(row.items())) for key, row in sorted(table.items()) if row
        }
        self._rows = [[self._table.get((i, j), ()) for j in range(n)] for i in range(n)]
        self._cache: dict = {}

    # -- basic data -------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.degrees)

    def __repr__(self) -> str:
        tag = self.name or "algebra"
        return f"<{tag}: dim {self.dim}, graded by {self.group}>"

    def constants(self):
        """Iterate (i, j, k, c) in canonical order."""
        for (i, j), row in self._table.items():
            for k, c in row:
                yield i, j, k, c

    def basis_product(self, i: int, j: int) -> tuple:
        return self._rows[i][j]

    def basis_vector(self, i: int) -> list:
        v = [0] * self.dim
        v[i] = 1
        return v

    def zero(self) -> list:
        return [0] * self.dim

    def unit_vector(self) -> list:
        return list(self.unit)

    def label_index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise StructureError(f"{self.name or 'algebra'} has no basis element {label!r}") from None

    # -- arithmetic ---------------------------------------------------------
    def mul_sparse(self, u: Mapping, v: Mapping) -> dict:
        out: dict = {}
        rows = self._rows
        for i, a in u.items():
            ri = rows[i]
            for j, b in v.items():
                ab = a * b
                for k, c in ri[j]:
                    val = out.get(k, 0) + ab * c
                    if val:
                        out[k] = val
                    else:
                        del out[k]
        return out

    def mul(self, u: list, v: list) -> list:
        w = self.mul_sparse(sparse(u), sparse(v))
        return [w.get(k, 0) for k in range(self.dim)]

    def left_matrix(self, a: list) -> list[list]:
        """Matrix of x -> a x (columns indexed by basis of x)."""
        cols = [self.mul(a, self.basis_vector(j)) for j in range(self.dim)]
        return [list(r) for r in zip(*cols)] if cols else []

    def right_matrix(self, a: list) -> list[list]:
        cols = [self.mul(self.basis_vector(j), a) for j in range(self.dim)]
        return [list(r) for r in zip(*cols)] if cols else []

    def commutator(self, u: list, v: list) -> list:
        return [x - y for x, y in zip(self.mul(u, v), self.mul(v, u))]

    # -- grading ------------------------------------------------------------
    def component(self, g: Element) -> list[int]:
        g = self.group.element(g)
        return [i for i, d in enumerate(self.degrees) if d == g]

    def components(self) -> dict:
        out: dict = {}
        for i, d in enumerate(self.degrees):
            out.setdefault(d, []).append(i)
        return dict(sorted(out.items()))

    def occurring_degrees(self) -> list[Element]:
        return sorted(set(self.degrees))

    def component_dims(self) -> dict:
        return {g: len(ix) for g, ix in self.components().items()}

    def degree_of(self, vec) -> Element | None:
        """Degree of a nonzero homogeneous vector; None if zero or inhomogeneous."""
        support = {self.degrees[i] for i, v in enumerate(vec) if v}
        return support.pop() if len(support) == 1 else None

    def is_trivially_graded(self) -> bool:
        return all(self.group.is_identity(d) for d in self.degrees)

    def is_commutative(self) -> bool:
        return all(
            self._rows[i][j] == self._rows[j][i]
            for i in range(self.dim)
            for j in range(i + 1, self.dim)
        )

    def regraded(self, group: GradingGroup, degrees, name: str | None = None) -> "FiniteGradedAlgebra":
        return FiniteGradedAlgebra(
            group, degrees, dict(((i, j, k), c) for i, j, k, c in self.constants()),
            self.unit, self.labels, self.name if name is None else name,
        )

    def forget_grading(self) -> "FiniteGradedAlgebra":
        return self.regraded(TRIVIAL, [()] * self.dim)

    def embed_trivially(self, group: GradingGroup) -> "FiniteGradedAlgebra":
        """View a trivially graded algebra as graded by ``group`` (everything in degree 1_G)."""
        if not self.is_trivially_graded():
            raise GradingError("only trivially graded algebras can be embedded in degree 1_G")
        return self.regraded(group, [group.identity] * self.dim)

    def same_structure(self, other: "FiniteGradedAlgebra") -> bool:
        return (
            self.group == other.group
            and self.degrees == other.degrees
            and self._table == other._table
            and self.unit == other.unit
        )

    def to_dict(self) -> dict:
        return {
            "group": self.group.to_dict(),
            "dim": self.dim,
            "labels": list(self.labels),
            "degrees": [list(d) for d in self.degrees],
            "unit": [str(Fraction(u)) for u in self.unit],
            "mul": [[i, j, k, str(Fraction(c))] for i, j, k, c in self.constants()],
        }


def zero_algebra(group: GradingGroup = TRIVIAL) -> FiniteGradedAlgebra:
    return FiniteGradedAlgebra(group, [], {}, [], [], name="0")


# -- homogeneous elements -----------------------------------------------------

@dataclass(frozen=True)
class HomogeneousElement:
    algebra: FiniteGradedAlgebra
    coords: tuple
    degree: Element

    def __post_init__(self):
        A = self.algebra
        object.__setattr__(self, "coords", tuple(rat(c) for c in self.coords))
        object.__setattr__(self, "degree", A.group.element(self.degree))
        if len(self.coords) != A.dim:
            raise StructureError(f"element has {len(self.coords)} coordinates, algebra has dim {A.dim}")
        for i, c in enumerate(self.coords):
            if c and A.degrees[i] != self.degree:
                raise DegreeMismatch(
                    f"coordinate on {A.labels[i]} (degree {A.degrees[i]}) in an element of degree {self.degree}"
                )


def homogeneous(A: FiniteGradedAlgebra, coords, degree=None) -> HomogeneousElement:
    """Wrap ``coords`` as a homogeneous element, inferring the degree when possible."""
    if degree is None:
        degree = A.degree_of(coords)
        if degree is None:
            if any(coords):
                raise DegreeMismatch("element is not homogeneous")
            degree = A.group.identity
    return HomogeneousElement(A, tuple(coords), degree)


def basis_element(A: FiniteGradedAlgebra, label_or_index) -> HomogeneousElement:
    i = label_or_index if isinstance(label_or_index, int) else A.label_index(label_or_index)
    return HomogeneousElement(A, tuple(A.basis_vector(i)), A.degrees[i])


# -- morphisms ------------------------------------------------------------------

class GradedAlgebraMorphism:
    """Linear map given by a target.dim x source.dim matrix."""

    def __init__(self, source: FiniteGradedAlgebra, target: FiniteGradedAlgebra, matrix):
        self.source = source
        self.target = target
        self.matrix = [[rat(x) for x in row] for row in matrix]
        if len(self.matrix) != target.dim or any(len(r) != source.dim for r in self.matrix):
            raise StructureError(
                f"morphism matrix must be {target.dim} x {source.dim}"
            )

    def apply(self, vec) -> list:
        return [sum((a * b for a, b in zip(row, vec) if a and b), 0) for row in self.matrix]

    def column(self, i: int) -> list:
        return [row[i] for row in self.matrix]

    def compose(self, first: "GradedAlgebraMorphism") -> "GradedAlgebraMorphism":
        """self o first."""
        cols = [self.apply(first.column(i)) for i in range(first.source.dim)]
        mat = [[cols[j][i] for j in range(len(cols))] for i in range(self.target.dim)]
        return GradedAlgebraMorphism(first.source, self.target, mat)

    def to_dict(self) -> dict:
        return {"matrix": [[str(Fraction(x)) for x in row] for row in self.matrix]}


def identity_morphism(A: FiniteGradedAlgebra) -> GradedAlgebraMorphism:
    return GradedAlgebraMorphism(A, A, [[1 if i == j else 0 for j in range(A.dim)] for i in range(A.dim)])


def unit_morphism(A: FiniteGradedAlgebra, B: FiniteGradedAlgebra) -> GradedAlgebraMorphism:
    """The structure map F -> B for a one-dimensional A spanned by its unit."""
    if A.dim != 1 or not A.unit[0]:
        raise PreconditionError("unit morphism needs a one-dimensional source spanned by its unit")
    scale_ = 1 / Fraction(A.unit[0])
    return GradedAlgebraMorphism(A, B, [[rat(u * scale_)] for u in B.unit])


def verify_morphism(phi: GradedAlgebraMorphism) -> VerificationReport:
    """Multiplicative, unital and degree-preserving, with a witness on failure."""
    A, B = phi.source, phi.target
    if A.group != B.group:
        return VerificationReport("morphism", False, {"axiom": "group", "source": str(A.group), "target": str(B.group)})
    for i in range(A.dim):
        col = phi.column(i)
        for k, v in enumerate(col):
            if v and B.degrees[k] != A.degrees[i]:
                return VerificationReport(
                    "morphism", False,
                    {"axiom": "degree", "basis": A.labels[i], "image_support": B.labels[k]},
                )
    if phi.apply(A.unit) != [rat(u) for u in B.unit]:
        return VerificationReport("morphism", False, {"axiom": "unit"})
    images = [phi.column(i) for i in range(A.dim)]
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = phi.apply(A.mul(A.basis_vector(i), A.basis_vector(j)))
            rhs = B.mul(images[i], images[j])
            if lhs != rhs:
                return VerificationReport(
                    "morphism", False,
                    {"axiom": "multiplicative", "pair": [A.labels[i], A.labels[j]]},
                )
    return VerificationReport("morphism", True)


def verify_graded_iso(phi: GradedAlgebraMorphism) -> VerificationReport:
    """True iff phi is a bijective, multiplicative, unital, degree-preserving map."""
    A, B = phi.source, phi.target
    if A.dim != B.dim:
        return VerificationReport(
            "graded_iso", False, {"axiom": "dimension", "source": A.dim, "target": B.dim}
        )
    from ..linalg import matrix_rank

    base = verify_morphism(phi)
    if not base:
        return VerificationReport("graded_iso", False, base.witness)
    if matrix_rank(phi.matrix) != A.dim:
        return VerificationReport("graded_iso", False, {"axiom": "bijective"})
    return VerificationReport("graded_iso", True, invariants={"dim": A.dim})


# -- validation ------------------------------------------------------------------

def validate_algebra(A: FiniteGradedAlgebra) -> VerificationReport:
    """Check grading compatibility, the unit, and associativity, in that order."""
    G = A.group
    n = A.dim
    inv = {"dim": n, "component_dims": {str(list(g)): d for g, d in A.component_dims().items()}}
    for i, j, k, c in A.constants():
        if A.degrees[k] != G.add(A.degrees[i], A.degrees[j]):
            return VerificationReport(
                "validate_algebra", False,
                {"axiom": "grading", "triple": [A.labels[i], A.labels[j], A.labels[k]], "indices": [i, j, k]},
                inv,
            )
    if n:
        if A.degree_of(A.unit) != G.identity:
            return VerificationReport("validate_algebra", False, {"axiom": "unit_degree"}, inv)
        for i in range(n):
            b = A.basis_vector(i)
            if A.mul(A.unit_vector(), b) != b or A.mul(b, A.unit_vector()) != b:
                return VerificationReport(
                    "validate_algebra", False, {"axiom": "unit", "basis": A.labels[i]}, inv
                )
    rows = A._rows
    nonzero_right = [[k for k in range(n) if rows[j][k]] for j in range(n)]
    for j in range(n):
        left_live = {i for i in range(n) if rows[i][j]}
        right_live = nonzero_right[j]
        for i in range(n):
            ks = range(n) if i in left_live else right_live
            for k in ks:
                lhs: dict = {}
                for p, c in rows[i][j]:
                    for q, d in rows[p][k]:
                        lhs[q] = lhs.get(q, 0) + c * d
                rhs: dict = {}
                for p, c in rows[j][k]:
                    for q, d in rows[i][p]:
                        rhs[q] = rhs.get(q, 0) + c * d
                lhs = {q: v for q, v in lhs.items() if v}
                rhs = {q: v for q, v in rhs.items() if v}
                if lhs != rhs:
                    return VerificationReport(
                        "validate_algebra", False,
                        {"axiom": "associativity", "triple": [A.labels[i], A.labels[j], A.labels[k]],
                         "indices": [i, j, k]},
                        inv,
                    )
    return VerificationReport("validate_algebra", True, invariants=inv)


def is_associativity_violation(A: FiniteGradedAlgebra, i: int, j: int, k: int) -> bool:
    bi, bj, bk = (A.basis_vector(x) for x in (i, j, k))
    return A.mul(A.mul(bi, bj), bk) != A.mul(bi, A.mul(bj, bk))


# -- sub- and quotient algebras -------------------------------------------------

def subalgebra(A: FiniteGradedAlgebra, vectors, name: str = "", labels=None):
    """Algebra structure on the span of homogeneous ``vectors`` (assumed a unital subalgebra).

    Returns the algebra and the inclusion matrix (A.dim x len(basis)).  The
    first independent vectors are kept, in the order given.
    """
    ech = Echelon(track=True)
    basis = []
    for v in vectors:
        if ech.add(sparse(v), len(basis)):
            basis.append(list(v))
    degs = []
    for v in basis:
        d = A.degree_of(v)
        if d is None:
            raise GradingError("subalgebra basis vectors must be homogeneous and nonzero")
        degs.append(d)
    consts = {}
    for a, u in enumerate(basis):
        su = sparse(u)
        for b, v in enumerate(basis):
            prod = A.mul_sparse(su, sparse(v))
            combo = ech.express(prod)
            if combo is None:
                raise PreconditionError("span is not closed under multiplication")
            for c, val in combo.items():
                consts[(a, b, c)] = val
    unit = ech.express(sparse(A.unit)) if A.dim else {}
    if unit is None:
        raise PreconditionError("span does not contain the unit")
    if labels is None:
        labels = [_vector_label(A, v, i) for i, v in enumerate(basis)]
    S = FiniteGradedAlgebra(A.group, degs, consts, [unit.get(i, 0) for i in range(len(basis))], labels, name)
    inclusion = [[basis[c][r] for c in range(len(basis))] for r in range(A.dim)]
    return S, inclusion


def _vector_label(A: FiniteGradedAlgebra, v, i: int) -> str:
    support = [k for k, x in enumerate(v) if x]
    if len(support) == 1 and v[support[0]] == 1:
        return A.labels[support[0]]
    return f"v{i}"


def is_graded_subspace(A: FiniteGradedAlgebra, vectors) -> bool:
    ech = Echelon()
    for v in vectors:
        ech.add(sparse(v))
    for v in vectors:
        for idx in A.components().values():
            part = {i: v[i] for i in idx if v[i]}
            if part and not ech.contains(part):
                return False
    return True


def quotient_algebra(A: FiniteGradedAlgebra, ideal_vectors, name: str = "", graded: bool = True):
    """A / I for a two-sided ideal I spanned by ``ideal_vectors``.

    Returns (quotient, projection matrix Q.dim x A.dim, representatives).
    Representatives are standard basis vectors chosen greedily, component
    by component when ``graded``.  Raises GradingError when ``graded`` and
    I is not a graded subspace.
    """
    ideal_vectors = [list(v) for v in ideal_vectors]
    if graded and not is_graded_subspace(A, ideal_vectors):
        raise GradingError("ideal is not graded; pass graded=False for an ungraded quotient")
    ech = Echelon(track=True)
    for t, v in enumerate(ideal_vectors):
        ech.add(sparse(v), ("I", t))
    reps = []
    order = [i for idx in A.components().values() for i in idx] if graded else range(A.dim)
    for i in order:
        if ech.add({i: 1}, ("Q", len(reps))):
            reps.append(i)
    group = A.group if graded else TRIVIAL
    degs = [A.degrees[i] if graded else () for i in reps]

    def project(vec: Mapping) -> dict:
        combo = ech.express(vec)
        return {t[1]: c for t, c in combo.items() if t[0] == "Q"}

    consts = {}
    for a, i in enumerate(reps):
        for b, j in enumerate(reps):
            for c, val in project(dict(A.basis_product(i, j))).items():
                consts[(a, b, c)] = val
    unit = project(sparse(A.unit))
    Q = FiniteGradedAlgebra(
        group, degs, consts, [unit.get(a, 0) for a in range(len(reps))],
        [A.labels[i] for i in reps], name,
    )
    proj = [[0] * A.dim for _ in reps]
    for k in range(A.dim):
        for a, c in project({k: 1}).items():
            proj[a][k] = c
    return Q, proj, reps


def ideal_closure(A: FiniteGradedAlgebra, generators) -> list[list]:
    """Basis of the two-sided ideal generated by ``generators`` (RREF rows, dense)."""
    ech = Echelon()
    queue = []
    for g in generators:
        if ech.add(sparse(g)):
            queue.append(sparse(g))
    while queue:
        v = queue.pop()
        for i in range(A.dim):
            bi = {i: 1}
            for w in (A.mul_sparse(bi, v), A.mul_sparse(v, bi)):
                if w and ech.add(w):
                    queue.append(w)
    return [[r.get(k, 0) for k in range(A.dim)] for r in ech.rows()]


def span_product(A: FiniteGradedAlgebra, left, right) -> list[list]:
    """Basis of span{u v : u in left, v in right}."""
    ech = Echelon()
    for u in left:
        su = sparse(u)
        for v in right:
            w = A.mul_sparse(su, sparse(v))
            if w:
                ech.add(w)
    return [[r.get(k, 0) for k in range(A.dim)] for r in ech.rows()]


def add_vectors(*vs):
    out: dict = {}
    for v in vs:
        add_scaled(out, sparse(v), 1)
    return out

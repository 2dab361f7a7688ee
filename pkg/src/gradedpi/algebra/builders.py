"""Standard test algebras and constructions on them."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from ..errors import GradingError, GroupMismatch, PreconditionError, StructureError
from ..linalg import Echelon, rat, sparse
from .core import (
    FiniteGradedAlgebra,
    HomogeneousElement,
    validate_algebra,
    _vector_label,
)
from .group import TRIVIAL, Z2, GradingGroup


def base_field(group: GradingGroup = TRIVIAL) -> FiniteGradedAlgebra:
    return FiniteGradedAlgebra(group, [group.identity], {(0, 0, 0): 1}, [1], ["1"], name="F")


def _unit_label(i: int, j: int, n: int) -> str:
    return f"e{i}{j}" if n < 10 else f"e{i}_{j}"


def _check_compatible(A: FiniteGradedAlgebra) -> FiniteGradedAlgebra:
    rep = validate_algebra(A)
    if not rep:
        raise GradingError(f"degree assignment is not compatible: {rep.witness}")
    return A


def matrix_algebra(n: int, degrees=None, group: GradingGroup | None = None) -> FiniteGradedAlgebra:
    """M_n(F) on matrix units e_ij (1-based labels), optionally graded.

    ``degrees`` maps (i, j) (0-based) or a flat basis index to a group element.
    """
    if not isinstance(n, int) or n < 1:
        raise StructureError("matrix size must be a positive integer")
    group = group or TRIVIAL
    idx = lambda i, j: i * n + j  # noqa: E731
    consts = {(idx(i, j), idx(j, l), idx(i, l)): 1 for i in range(n) for j in range(n) for l in range(n)}
    if degrees is None:
        degs = [group.identity] * (n * n)
    elif isinstance(degrees, dict):
        degs = [group.element(degrees.get((i, j), degrees.get(idx(i, j), group.identity)))
                for i in range(n) for j in range(n)]
    else:
        degs = [group.element(d) for d in degrees]
    unit = [1 if i == j else 0 for i in range(n) for j in range(n)]
    labels = [_unit_label(i + 1, j + 1, n) for i in range(n) for j in range(n)]
    A = FiniteGradedAlgebra(group, degs, consts, unit, labels, name=f"M{n}")
    if degrees is not None:
        _check_compatible(A)
    return A


def elementary_grading(n: int, group: GradingGroup, row_degrees: Sequence) -> FiniteGradedAlgebra:
    """M_n with deg(e_ij) = g_i - g_j."""
    gs = [group.element(g) for g in row_degrees]
    degs = {(i, j): group.sub(gs[i], gs[j]) for i in range(n) for j in range(n)}
    return matrix_algebra(n, degs, group)


def upper_triangular(l: int) -> FiniteGradedAlgebra:
    if not isinstance(l, int) or l < 1:
        raise StructureError("size must be a positive integer")
    pairs = [(i, j) for i in range(l) for j in range(i, l)]
    pos = {p: k for k, p in enumerate(pairs)}
    consts = {}
    for (i, j) in pairs:
        for (j2, m) in pairs:
            if j == j2:
                consts[(pos[(i, j)], pos[(j2, m)], pos[(i, m)])] = 1
    unit = [1 if i == j else 0 for i, j in pairs]
    labels = [_unit_label(i + 1, j + 1, l) for i, j in pairs]
    return FiniteGradedAlgebra(TRIVIAL, [()] * len(pairs), consts, unit, labels, name=f"UT{l}")


def _subsets(k: int) -> list[tuple[int, ...]]:
    return [s for size in range(k + 1) for s in combinations(range(k), size)]


def _merge_sign(S, T) -> int:
    inversions = sum(1 for s in S for t in T if s > t)
    return -1 if inversions % 2 else 1


def grassmann(k: int, graded: bool = True) -> FiniteGradedAlgebra:
    """Truncated Grassmann algebra E_k on generators e_1..e_k.

    Basis: subset monomials ordered by size then lexicographically.  With
    ``graded`` the canonical Z2-grading by word-length parity is used,
    otherwise the trivial grading.
    """
    if not isinstance(k, int) or k < 0:
        raise StructureError("number of generators must be a nonnegative integer")
    subsets = _subsets(k)
    pos = {s: i for i, s in enumerate(subsets)}
    consts = {}
    for S in subsets:
        for T in subsets:
            if set(S) & set(T):
                continue
            U = tuple(sorted(S + T))
            consts[(pos[S], pos[T], pos[U])] = _merge_sign(S, T)
    group = Z2 if graded else TRIVIAL
    degs = [(len(S) % 2,) if graded else () for S in subsets]
    labels = ["".join(f"e{i + 1}" for i in S) or "1" for S in subsets]
    unit = [1] + [0] * (len(subsets) - 1)
    return FiniteGradedAlgebra(group, degs, consts, unit, labels, name=f"E{k}")


def clifford(q: Sequence) -> FiniteGradedAlgebra:
    """Clifford algebra of the diagonal form sum q_i x_i^2, Z2-graded by parity."""
    q = [rat(x) for x in q]
    if any(x == 0 for x in q):
        raise StructureError("degenerate form: Clifford coefficients must be nonzero")
    k = len(q)
    subsets = _subsets(k)
    pos = {s: i for i, s in enumerate(subsets)}
    consts = {}
    for S in subsets:
        for T in subsets:
            coef = _merge_sign(S, T)
            for i in set(S) & set(T):
                coef = coef * q[i]
            U = tuple(sorted(set(S) ^ set(T)))
            consts[(pos[S], pos[T], pos[U])] = coef
    degs = [(len(S) % 2,) for S in subsets]
    labels = ["".join(f"v{i + 1}" for i in S) or "1" for S in subsets]
    unit = [1] + [0] * (len(subsets) - 1)
    return FiniteGradedAlgebra(Z2, degs, consts, unit, labels, name="Cl(" + ",".join(map(str, q)) + ")")


def quaternions() -> FiniteGradedAlgebra:
    return clifford([-1, -1])


def truncated_polynomial(k: int) -> FiniteGradedAlgebra:
    """F[t]/(t^k)."""
    if not isinstance(k, int) or k < 1:
        raise StructureError("truncation order must be a positive integer")
    consts = {(i, j, i + j): 1 for i in range(k) for j in range(k) if i + j < k}
    labels = ["1"] + [f"t^{i}" if i > 1 else "t" for i in range(1, k)]
    return FiniteGradedAlgebra(TRIVIAL, [()] * k, consts, [1] + [0] * (k - 1), labels, name=f"F[t]/(t^{k})")


def function_algebra(points) -> FiniteGradedAlgebra:
    """Pointwise functions on a finite set, on the basis of point indicators."""
    if isinstance(points, int):
        points = [str(i) for i in range(points)]
    points = list(points)
    m = len(points)
    consts = {(i, i, i): 1 for i in range(m)}
    return FiniteGradedAlgebra(
        TRIVIAL, [()] * m, consts, [1] * m, [f"p[{p}]" for p in points], name=f"Fun({m})"
    )


def tensor_with_commutative(A: FiniteGradedAlgebra, C: FiniteGradedAlgebra) -> FiniteGradedAlgebra:
    """A (x) C with deg(a (x) c) = deg(a); C must be commutative, trivially graded and unital."""
    if not C.is_commutative():
        raise PreconditionError("second factor must be commutative")
    if not C.is_trivially_graded():
        raise PreconditionError("second factor must be trivially graded")
    if C.dim == 0 or not any(C.unit):
        raise PreconditionError("second factor must be unital and nonzero")
    m = C.dim
    consts = {}
    for i, j, k, a in A.constants():
        for p, r, s, c in C.constants():
            key = (i * m + p, j * m + r, k * m + s)
            consts[key] = consts.get(key, 0) + a * c
    degs = [A.degrees[i] for i in range(A.dim) for _ in range(m)]
    unit = [ua * uc for ua in A.unit for uc in C.unit]
    labels = [f"{A.labels[i]}*{C.labels[p]}" for i in range(A.dim) for p in range(m)]
    return FiniteGradedAlgebra(A.group, degs, consts, unit, labels, name=f"{A.name}(x){C.name}")


def direct_product(factors: Sequence[FiniteGradedAlgebra], regrade=None) -> FiniteGradedAlgebra:
    """Componentwise product of the factors.

    ``regrade`` is ``(group, [degrees of factor 1, degrees of factor 2, ...])``
    placing every factor into a common grading group; each factor's new
    degrees must be compatible with its multiplication.
    """
    factors = list(factors)
    if not factors:
        raise StructureError("direct product needs at least one factor")
    if regrade is None:
        group = factors[0].group
        if any(f.group != group for f in factors):
            raise GroupMismatch("factors are graded by different groups; supply regrade")
        per_factor = [list(f.degrees) for f in factors]
    else:
        group, per_factor = regrade
        per_factor = [[group.element(d) for d in degs] for degs in per_factor]
        for f, degs in zip(factors, per_factor):
            if len(degs) != f.dim:
                raise StructureError("regrade degree list has the wrong length")
            _check_compatible(f.regraded(group, degs))
    if len(factors) == 1:
        f = factors[0]
        return f if regrade is None else f.regraded(group, per_factor[0])
    consts, degs, unit, labels = {}, [], [], []
    offset = 0
    for t, (f, fd) in enumerate(zip(factors, per_factor)):
        for i, j, k, c in f.constants():
            consts[(offset + i, offset + j, offset + k)] = c
        degs.extend(fd)
        unit.extend(f.unit)
        labels.extend(f"{lab}@{t + 1}" for lab in f.labels)
        offset += f.dim
    name = "x".join(f.name or "A" for f in factors)
    return FiniteGradedAlgebra(group, degs, consts, unit, labels, name=name)


def corner_basis(A: FiniteGradedAlgebra, e) -> list[list]:
    """Homogeneous basis of eAe, chosen greedily among the vectors e b_i e."""
    ev = sparse(e.coords if isinstance(e, HomogeneousElement) else e)
    ech = Echelon()
    basis = []
    for idx in A.components().values():
        for i in idx:
            w = A.mul_sparse(A.mul_sparse(ev, {i: 1}), ev)
            if w and ech.add(w):
                basis.append([w.get(k, 0) for k in range(A.dim)])
    return basis


def corner_algebra(A: FiniteGradedAlgebra, e) -> FiniteGradedAlgebra:
    """eAe with unit e, for a degree-neutral idempotent e."""
    if not isinstance(e, HomogeneousElement):
        from .core import homogeneous

        e = homogeneous(A, e)
    if e.algebra is not A and not e.algebra.same_structure(A):
        raise PreconditionError("idempotent belongs to another algebra")
    ev = list(e.coords)
    if any(ev) and not A.group.is_identity(e.degree):
        raise PreconditionError(f"idempotent must have neutral degree, got {e.degree}")
    if A.mul(ev, ev) != [rat(x) for x in ev]:
        raise PreconditionError("element is not idempotent")
    return _corner_from_basis(A, corner_basis(A, e), ev)


def _corner_from_basis(A, basis, ev) -> FiniteGradedAlgebra:
    ech = Echelon(track=True)
    for t, v in enumerate(basis):
        ech.add(sparse(v), t)
    consts = {}
    for a, u in enumerate(basis):
        for b, v in enumerate(basis):
            combo = ech.express(A.mul_sparse(sparse(u), sparse(v)))
            for c, val in combo.items():
                consts[(a, b, c)] = val
    unit = ech.express(sparse(ev)) if any(ev) else {}
    degs = [A.degree_of(v) for v in basis]
    labels = [_vector_label(A, v, i) for i, v in enumerate(basis)]
    return FiniteGradedAlgebra(
        A.group, degs, consts, [unit.get(i, 0) for i in range(len(basis))], labels, name=f"e{A.name}e"
    )


def from_name(spec: str) -> FiniteGradedAlgebra:
    """Build an algebra from a short name such as "M:2", "UT:3", "E:4", "Cl:-1,-1".

    Also "F", "Fun:3", "Tp:2" (F[t]/(t^2)), "H" (quaternions).  Suffix
    "@triv" forgets the grading; "@z2" places a trivially graded algebra in
    Z2 degree 0.
    """
    spec = spec.strip()
    suffix = None
    if "@" in spec:
        spec, suffix = spec.split("@", 1)
    head, _, arg = spec.partition(":")
    head = head.strip()
    try:
        if head == "F":
            A = base_field()
        elif head == "M":
            A = matrix_algebra(int(arg))
        elif head == "UT":
            A = upper_triangular(int(arg))
        elif head == "E":
            A = grassmann(int(arg))
        elif head == "Cl":
            A = clifford([x for x in arg.split(",") if x.strip()])
        elif head == "H":
            A = quaternions()
        elif head == "Fun":
            A = function_algebra(int(arg))
        elif head == "Tp":
            A = truncated_polynomial(int(arg))
        else:
            raise StructureError(f"unknown algebra builder {head!r}")
    except ValueError as exc:
        if isinstance(exc, StructureError):
            raise
        raise StructureError(f"bad builder argument in {spec!r}: {exc}") from None
    if suffix == "triv":
        A = A.forget_grading()
    elif suffix == "z2":
        A = A.embed_trivially(Z2)
    elif suffix is not None:
        raise StructureError(f"unknown builder suffix @{suffix}")
    return A

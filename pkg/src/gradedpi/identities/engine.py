"""Evaluation of graded polynomials and multilinear identity kernels."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from math import factorial
from typing import Mapping

from ..algebra.core import FiniteGradedAlgebra, HomogeneousElement
from ..algebra.group import Element, GradingGroup
from ..errors import BudgetExceeded, DegreeMismatch, MissingAssignment, StructureError
from ..linalg import Echelon, primitive, rref_basis, sparse
from ..report import VerificationReport
from .polynomial import GradedPolynomial, GradedVariable

DEFAULT_MAX_DEGREE = 6
DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class Budget:
    max_degree: int = DEFAULT_MAX_DEGREE
    operations: int = DEFAULT_BUDGET


def _budget(budget) -> Budget:
    if budget is None:
        return Budget()
    if isinstance(budget, Budget):
        return budget
    return Budget(operations=int(budget))


# -- patterns -------------------------------------------------------------------

@dataclass(frozen=True)
class MultilinearPattern:
    """Multilinear words in n distinct variables x_{i_1},...,x_{i_n} of fixed degrees.

    Coordinates are indexed by permutations in lexicographic order; the
    permutation sigma stands for the word x_{sigma(1)} ... x_{sigma(n)}
    (positions counted from zero internally).
    """

    n: int
    degree_sequence: tuple
    indices: tuple = ()

    def __post_init__(self):
        degs = tuple(tuple(g) if not isinstance(g, int) else (g,) for g in self.degree_sequence)
        if len(degs) != self.n:
            raise StructureError(f"pattern of degree {self.n} needs {self.n} degrees, got {len(degs)}")
        object.__setattr__(self, "degree_sequence", degs)
        idx = tuple(self.indices) or tuple(range(1, self.n + 1))
        if len(idx) != self.n or len(set(idx)) != self.n:
            raise StructureError("pattern variable indices must be n distinct integers")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def trivial(cls, n: int, group: GradingGroup | None = None) -> "MultilinearPattern":
        ident = group.identity if group is not None else ()
        return cls(n, (ident,) * n)

    @classmethod
    def of(cls, degrees, group: GradingGroup | None = None) -> "MultilinearPattern":
        degrees = list(degrees)
        if group is not None:
            degrees = [group.element(g) for g in degrees]
        return cls(len(degrees), tuple(degrees))

    @property
    def variables(self) -> list[GradedVariable]:
        return [GradedVariable(i, g) for i, g in zip(self.indices, self.degree_sequence)]

    @property
    def dimension(self) -> int:
        return factorial(self.n)

    def permutations(self) -> list[tuple]:
        return _perms(self.n)

    def word(self, sigma) -> tuple:
        vs = self.variables
        return tuple(vs[s] for s in sigma)

    def to_polynomial(self, vec: Mapping) -> GradedPolynomial:
        perms = _perms(self.n)
        return GradedPolynomial({self.word(perms[k]): c for k, c in vec.items()})

    def to_vector(self, f: GradedPolynomial) -> dict:
        """Coordinates of ``f`` in this pattern; raises if ``f`` leaves the span."""
        pos = {v: i for i, v in enumerate(self.variables)}
        index = _perm_index(self.n)
        out = {}
        for w, c in f.terms.items():
            try:
                sigma = tuple(pos[v] for v in w)
            except KeyError:
                raise StructureError(f"word {w} uses a variable outside the pattern") from None
            if sigma not in index:
                raise StructureError(f"word {w} is not multilinear in the pattern variables")
            out[index[sigma]] = c
        return out

    def normalized(self, group: GradingGroup) -> "MultilinearPattern":
        return MultilinearPattern(self.n, tuple(group.element(g) if g else group.identity
                                                for g in self.degree_sequence), self.indices)

    def to_dict(self) -> dict:
        return {"n": self.n, "degrees": [list(g) for g in self.degree_sequence]}

    def __str__(self) -> str:
        return "(" + ", ".join(",".join(map(str, g)) or "e" for g in self.degree_sequence) + ")"


_PERMS: dict = {}


def _perms(n: int) -> list[tuple]:
    if n not in _PERMS:
        _PERMS[n] = list(permutations(range(n)))
    return _PERMS[n]


def _perm_index(n: int) -> dict:
    key = ("index", n)
    if key not in _PERMS:
        _PERMS[key] = {p: i for i, p in enumerate(_perms(n))}
    return _PERMS[key]


def pattern_of(f: GradedPolynomial) -> MultilinearPattern:
    """The pattern spanned by a multilinear polynomial's variables."""
    if not f.is_multilinear():
        raise StructureError(f"{f} is not multilinear")
    vs = f.variables()
    return MultilinearPattern(len(vs), tuple(v.degree for v in vs), tuple(v.index for v in vs))


def all_patterns(n: int, degrees) -> list[MultilinearPattern]:
    """Patterns with non-decreasing degree sequences drawn from ``degrees``.

    Relabelling variables is an automorphism of the free algebra, so these
    representatives cover every pattern up to isomorphism.
    """
    degrees = sorted(set(degrees))
    out = []

    def rec(prefix, start):
        if len(prefix) == n:
            out.append(MultilinearPattern(n, tuple(prefix)))
            return
        for k in range(start, len(degrees)):
            rec(prefix + [degrees[k]], k)

    rec([], 0)
    return out


# -- identity kernels -------------------------------------------------------------

@dataclass
class IdentityKernel:
    pattern: MultilinearPattern
    algebra: str
    vectors: list  # RREF rows over permutation coordinates
    notes: list = field(default_factory=list)

    @property
    def kernel_basis(self) -> list[GradedPolynomial]:
        return [self.pattern.to_polynomial(v) for v in self.vectors]

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    @property
    def codimension(self) -> int:
        return self.pattern.dimension - len(self.vectors)

    def contains_vector(self, vec: Mapping) -> bool:
        ech = Echelon()
        for v in self.vectors:
            ech.add(v)
        return ech.contains(vec)

    def contains(self, f: GradedPolynomial) -> bool:
        return self.contains_vector(self.pattern.to_vector(f))

    def is_subspace_of(self, other: "IdentityKernel") -> bool:
        ech = Echelon()
        for v in other.vectors:
            ech.add(v)
        return all(ech.contains(v) for v in self.vectors)

    def same_as(self, other: "IdentityKernel") -> bool:
        return self.vectors == other.vectors

    def to_dict(self) -> dict:
        return {
            "pattern": self.pattern.to_dict(),
            "algebra": self.algebra,
            "kernel_dim": self.dimension,
            "codimension": self.codimension,
            "kernel_basis": [p.to_records() for p in self.kernel_basis],
            "notes": list(self.notes),
        }


def _annihilating_pairs(A: FiniteGradedAlgebra) -> list[set]:
    """ann[i] = {j : b_i A b_j = 0 and b_j A b_i = 0}.

    Decided from supports, so a pair is only reported when the vanishing is
    certain; missed cancellations merely cost speed.
    """
    key = "annihilating_pairs"
    if key in A._cache:
        return A._cache[key]
    n = A.dim
    left_support = []  # support of b_i A
    nonzero_left = [set() for _ in range(n)]  # m with b_m b_j != 0
    for i in range(n):
        supp = set()
        for j in range(n):
            prod = A.basis_product(i, j)
            if prod:
                supp.update(k for k, _ in prod)
                nonzero_left[j].add(i)
        left_support.append(supp)
    kills = [[left_support[i].isdisjoint(nonzero_left[j]) for j in range(n)] for i in range(n)]
    ann = [{j for j in range(n) if kills[i][j] and kills[j][i]} for i in range(n)]
    A._cache[key] = ann
    return ann


def _right_mul_basis(A: FiniteGradedAlgebra, u: dict, j: int) -> dict:
    out: dict = {}
    rows = A._rows
    for i, a in u.items():
        for k, c in rows[i][j]:
            val = out.get(k, 0) + a * c
            if val:
                out[k] = val
            else:
                del out[k]
    return out


def _word_values(A: FiniteGradedAlgebra, tup: tuple) -> list[dict]:
    """Values of every word x_sigma(1)..x_sigma(n) at x_i -> b_{tup[i]}."""
    n = len(tup)
    if n == 0:
        return [sparse(A.unit)]
    cache: dict = {}
    out = []
    for sigma in _perms(n):
        prefix = sigma[:1]
        val = cache.get(prefix)
        if val is None:
            val = {tup[sigma[0]]: 1}
            cache[prefix] = val
        for length in range(2, n + 1):
            prefix = sigma[:length]
            nxt = cache.get(prefix)
            if nxt is None:
                nxt = _right_mul_basis(A, val, tup[sigma[length - 1]]) if val else {}
                cache[prefix] = nxt
            val = nxt
        out.append(val)
    return out


def _basis_by_degree(A: FiniteGradedAlgebra) -> dict:
    out: dict = {}
    for i, g in enumerate(A.degrees):
        out.setdefault(g, []).append(i)
    return out


def admissible_tuples(A: FiniteGradedAlgebra, degrees, canonical: bool = False, prune: bool = True):
    """Lexicographic basis-index tuples with deg b_{t_i} = degrees[i].

    With ``canonical`` only tuples non-decreasing within each block of equal
    degree are produced; with ``prune`` tuples containing a pair of basis
    elements that annihilate each other from both sides are skipped (every
    multilinear word vanishes on them).
    """
    by_deg = _basis_by_degree(A)
    ann = _annihilating_pairs(A) if prune else None
    cands = [by_deg.get(g, []) for g in degrees]
    n = len(degrees)
    last_in_block = {}
    prev = []
    for i, g in enumerate(degrees):
        prev.append(last_in_block.get(g))
        last_in_block[g] = i
    chosen: list = [None] * n

    def rec(i):
        if i == n:
            yield tuple(chosen)
            return
        lo = chosen[prev[i]] if canonical and prev[i] is not None else -1
        for j in cands[i]:
            if j < lo:
                continue
            if ann is not None and any(chosen[k] in ann[j] for k in range(i)):
                continue
            chosen[i] = j
            yield from rec(i + 1)
        chosen[i] = None

    yield from rec(0)


def _block_permutations(degrees) -> list[tuple]:
    """Permutations of positions preserving the degree sequence."""
    n = len(degrees)
    blocks: dict = {}
    for i, g in enumerate(degrees):
        blocks.setdefault(g, []).append(i)
    groups = list(blocks.values())
    out = []
    for choice in product(*(list(permutations(b)) for b in groups)):
        pi = [0] * n
        for block, image in zip(groups, choice):
            for a, b in zip(block, image):
                pi[a] = b
        out.append(tuple(pi))
    return sorted(out)


def _check_budget(pattern: MultilinearPattern, budget: Budget):
    if pattern.n > budget.max_degree:
        raise BudgetExceeded(
            f"pattern degree {pattern.n} exceeds the configured maximum {budget.max_degree}"
        )


def kernel_vectors(A: FiniteGradedAlgebra, degrees, budget=None) -> list[dict]:
    """RREF basis of the multilinear identities of A for the degree sequence."""
    budget = _budget(budget)
    degrees = tuple(A.group.element(g) if g else A.group.identity for g in degrees)
    n = len(degrees)
    pattern = MultilinearPattern(n, degrees)
    _check_budget(pattern, budget)
    key = ("kernel", degrees)
    if key in A._cache:
        return A._cache[key]
    total = factorial(n)
    perms = _perms(n)
    index = _perm_index(n)
    # row'[sigma] = row[pi o sigma]: entry at tau moves to pi^{-1} o tau
    movers = []
    for pi in _block_permutations(degrees):
        inv = [0] * n
        for a, b in enumerate(pi):
            inv[b] = a
        movers.append([index[tuple(inv[t] for t in tau)] for tau in perms])
    ech = Echelon()
    seen: set = set()
    count = 0
    for tup in admissible_tuples(A, degrees, canonical=True):
        count += 1
        if count * total > budget.operations:
            raise BudgetExceeded(
                f"identity kernel of {A.name or 'algebra'} at pattern {pattern} needs more than "
                f"{budget.operations} word evaluations"
            )
        rows: dict = {}
        for s, val in enumerate(_word_values(A, tup)):
            for k, c in val.items():
                rows.setdefault(k, {})[s] = c
        for row in rows.values():
            key_row = primitive(row)
            if key_row in seen:
                continue
            for mover in movers:
                image = {mover[t]: c for t, c in row.items()}
                seen.add(primitive(image))
                ech.add(image)
        if ech.rank == total:
            break
    vectors = rref_basis(ech.nullspace(range(total)))
    A._cache[key] = vectors
    return vectors


def identity_kernel(pattern: MultilinearPattern, A, budget=None) -> IdentityKernel:
    """P_n ∩ Id(A) at ``pattern``; ``A`` may also be a Grassmann oracle."""
    if hasattr(A, "kernel") and not isinstance(A, FiniteGradedAlgebra):
        return A.kernel(pattern, budget=budget)
    pattern = pattern.normalized(A.group)
    vecs = kernel_vectors(A, pattern.degree_sequence, budget)
    return IdentityKernel(pattern, A.name or "algebra", [dict(v) for v in vecs])


# -- evaluation -------------------------------------------------------------------

def normalize_polynomial(f: GradedPolynomial, group: GradingGroup) -> GradedPolynomial:
    """Rewrite variable degrees as elements of ``group`` (bare variables get degree 0)."""
    cache: dict = {}

    def conv(v: GradedVariable) -> GradedVariable:
        if v not in cache:
            try:
                g = group.element(v.degree) if v.degree else group.identity
            except StructureError as exc:
                raise DegreeMismatch(f"variable {v}: {exc}") from None
            cache[v] = GradedVariable(v.index, g)
        return cache[v]

    return GradedPolynomial({tuple(conv(v) for v in w): c for w, c in f.terms.items()})


def _coords_of(value, A: FiniteGradedAlgebra):
    if isinstance(value, HomogeneousElement):
        return value.coords, value.degree
    raise StructureError("assignments must map variables to HomogeneousElement values")


def evaluate(f: GradedPolynomial, A: FiniteGradedAlgebra, assignment: Mapping) -> list:
    """Exact value f(a_1, ..., a_k) as a coordinate vector."""
    g = A.group
    f = normalize_polynomial(f, g)
    values = {}
    for v, val in assignment.items():
        v = normalize_polynomial(GradedPolynomial.var(v), g).variables()[0]
        coords, deg = _coords_of(val, A)
        if val.algebra is not A and not val.algebra.same_structure(A):
            raise StructureError("assigned element belongs to a different algebra")
        if g.element(deg) != v.degree:
            raise DegreeMismatch(
                f"variable {v} has degree {v.degree} but the assigned element has degree {deg}"
            )
        values[v] = sparse(coords)
    missing = [str(v) for v in f.variables() if v not in values]
    if missing:
        raise MissingAssignment(f"no value assigned to {', '.join(missing)}")
    out: dict = {}
    unit = sparse(A.unit)
    for w, c in f.terms.items():
        val = unit
        for v in w:
            val = A.mul_sparse(val, values[v])
            if not val:
                break
        for k, x in val.items():
            out[k] = out.get(k, 0) + c * x
    return [out.get(k, 0) for k in range(A.dim)]


def _poly_value_on_basis(A: FiniteGradedAlgebra, f: GradedPolynomial, choice: Mapping) -> dict:
    out: dict = {}
    unit = sparse(A.unit)
    for w, c in f.terms.items():
        val = unit
        for v in w:
            val = _right_mul_basis(A, val, choice[v])
            if not val:
                break
        for k, x in val.items():
            nv = out.get(k, 0) + c * x
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return out


# -- multilinearization -----------------------------------------------------------

def multilinearize(f: GradedPolynomial) -> list[GradedPolynomial]:
    """Full polarization of every multihomogeneous component.

    A variable occurring k times is replaced by itself and k-1 fresh
    variables of the same degree; the fresh indices continue after the
    largest index of ``f``.  Multilinear input comes back unchanged.
    """
    if f.is_multilinear():
        return [f] if f else []
    top = max((v.index for v in f.variables()), default=0)
    out = []
    for comp in f.homogeneous_components():
        word0 = next(iter(comp.terms))
        counts = dict(comp.multidegree(word0))
        copies: dict = {}
        nxt = top + 1
        for v in sorted(counts):
            copies[v] = [v] + [GradedVariable(nxt + i, v.degree) for i in range(counts[v] - 1)]
            nxt += counts[v] - 1
        terms: dict = {}
        for w, c in comp.terms.items():
            positions: dict = {}
            for p, v in enumerate(w):
                positions.setdefault(v, []).append(p)
            options = [
                [(positions[v], perm) for perm in permutations(copies[v])] for v in sorted(positions)
            ]
            for choice in product(*options):
                new = list(w)
                for pos_list, perm in choice:
                    for p, var in zip(pos_list, perm):
                        new[p] = var
                key = tuple(new)
                terms[key] = terms.get(key, 0) + c
        lin = GradedPolynomial(terms)
        if lin:
            out.append(lin)
    return out


# -- identity check ---------------------------------------------------------------

def find_witness(f: GradedPolynomial, A: FiniteGradedAlgebra, budget=None):
    """First admissible basis substitution (lexicographic) where multilinear f is nonzero."""
    budget = _budget(budget)
    vs = f.variables()
    count = 0
    for tup in admissible_tuples(A, [v.degree for v in vs]):
        count += 1
        if count > budget.operations:
            raise BudgetExceeded("witness search exceeded the configured budget")
        choice = dict(zip(vs, tup))
        val = _poly_value_on_basis(A, f, choice)
        if val:
            return choice, val
    return None


def is_graded_identity(f: GradedPolynomial, A, budget=None) -> VerificationReport:
    """Whether f lies in Id^G(A); a failure carries a substitution witness."""
    if hasattr(A, "is_identity") and not isinstance(A, FiniteGradedAlgebra):
        return A.is_identity(f, budget=budget)
    f = normalize_polynomial(f, A.group)
    parts = multilinearize(f)
    checked = []
    for h in parts:
        if not h.variables():
            # nonzero constant: the unit of a nonzero algebra is nonzero
            if A.dim:
                return VerificationReport(
                    "graded_identity", False,
                    witness={"substitution": {}, "value": [str(c) for c in h.terms.values()]},
                    invariants={"multilinear_parts": len(parts)},
                )
            continue
        pattern = pattern_of(h)
        kernel = identity_kernel(pattern, A, budget)
        checked.append(str(pattern))
        if kernel.contains(h):
            continue
        hit = find_witness(h, A, budget)
        witness = {"polynomial": str(h)}
        if hit is not None:
            choice, val = hit
            witness["substitution"] = {str(v): A.labels[j] for v, j in choice.items()}
            witness["value"] = {A.labels[k]: str(c) for k, c in sorted(val.items())}
        return VerificationReport(
            "graded_identity", False, witness=witness,
            invariants={"multilinear_parts": len(parts), "patterns": checked},
        )
    return VerificationReport(
        "graded_identity", True,
        invariants={"multilinear_parts": len(parts), "patterns": checked},
    )


def evaluation_degrees(A: FiniteGradedAlgebra) -> list[Element]:
    return A.occurring_degrees()

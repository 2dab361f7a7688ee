"""Degree-truncated relatively free algebras F<V|G>/(Id^G(A)), up to word length d.

A word is mapped to the product of generic elements X_v = sum_i t_{v,i} b_i
(b_i running over the homogeneous basis of degree deg v) inside A ⊗ F[t].
Over an infinite field two polynomials agree modulo Id^G(A) exactly when
their generic images agree, so linear relations among generic images are
the relations of the relatively free algebra.
"""

from __future__ import annotations

from itertools import product

from ..algebra.core import FiniteGradedAlgebra
from ..errors import BudgetExceeded, DegreeMismatch, StructureError
from ..linalg import Echelon
from .engine import DEFAULT_BUDGET
from .polynomial import GradedPolynomial, GradedVariable


def _generic_product(A: FiniteGradedAlgebra, word, basis_of, var_pos) -> dict:
    val = {(k, ()): c for k, c in enumerate(A.unit) if c}
    for v in word:
        slot = var_pos[v]
        nxt: dict = {}
        for (k, mono), c in val.items():
            for i in basis_of[v]:
                for k2, c2 in A.basis_product(k, i):
                    key = (k2, tuple(sorted(mono + ((slot, i),))))
                    s = nxt.get(key, 0) + c * c2
                    if s:
                        nxt[key] = s
                    else:
                        nxt.pop(key, None)
        val = nxt
        if not val:
            break
    return val


class RelativelyFreeTruncation:
    """Normal words and multiplication of the degree <= d part."""

    def __init__(self, source, variables, degree_bound: int, budget: int | None = None):
        if degree_bound < 0:
            raise StructureError("degree bound must be nonnegative")
        if hasattr(source, "model_algebra") and not isinstance(source, FiniteGradedAlgebra):
            model = source.model_algebra(degree_bound)
            self.source_name = source.name
            self.notes = [f"evaluated on {model.name}, which has the same identities up to degree {degree_bound}"]
        else:
            model = source
            self.source_name = source.name or "algebra"
            self.notes = []
        self.model = model
        group = model.group
        vs = []
        for v in variables:
            try:
                g = group.element(v.degree) if v.degree else group.identity
            except StructureError as exc:
                raise DegreeMismatch(f"variable {v}: {exc}") from None
            vs.append(GradedVariable(v.index, g))
        if len(set(vs)) != len(vs):
            raise StructureError("variables must be distinct")
        self.variables = vs
        self.degree_bound = degree_bound
        self.group = group
        by_deg: dict = {}
        for i, g in enumerate(model.degrees):
            by_deg.setdefault(g, []).append(i)
        basis_of = {v: by_deg.get(v.degree, []) for v in vs}
        var_pos = {v: p for p, v in enumerate(vs)}
        budget = budget or DEFAULT_BUDGET
        cost = 0
        for length in range(degree_bound + 1):
            cost += (len(vs) ** length) * max(1, model.dim) * max(
                1, max((len(b) for b in basis_of.values()), default=1)) ** length
        if cost > budget:
            raise BudgetExceeded(
                f"relatively free truncation needs about {cost} term operations (budget {budget})"
            )

        blocks: dict = {}
        for length in range(degree_bound + 1):
            for word in product(vs, repeat=length):
                blocks.setdefault(tuple(sorted(word)), []).append(word)
        self._echelons: dict = {}
        self.normal_words: list = []
        self._vectors: dict = {}
        for key in sorted(blocks, key=lambda k: (len(k), k)):
            ech = Echelon(track=True)
            for word in blocks[key]:
                vec = _generic_product(model, word, basis_of, var_pos)
                self._vectors[word] = vec
                if ech.add(vec, word):
                    self.normal_words.append(word)
            self._echelons[key] = ech
        self.index = {w: i for i, w in enumerate(self.normal_words)}

    @property
    def dim(self) -> int:
        return len(self.normal_words)

    def word_degree(self, word):
        return self.group.sum(v.degree for v in word)

    def reduce_word(self, word) -> dict:
        """Normal-word coordinates {normal word: coefficient} of a word of length <= d."""
        word = tuple(word)
        if len(word) > self.degree_bound:
            return {}
        if word not in self._vectors:
            raise StructureError(f"word {word} uses variables outside the truncation")
        vec = self._vectors[word]
        if not vec:
            return {}
        combo = self._echelons[tuple(sorted(word))].express(vec)
        return {w: c for w, c in combo.items() if c}

    def normal_form(self, f: GradedPolynomial) -> GradedPolynomial:
        """Rewrite in normal words; words longer than d are truncated to zero."""
        out: dict = {}
        for w, c in f.terms.items():
            w = tuple(GradedVariable(v.index, self.group.element(v.degree) if v.degree else self.group.identity)
                      for v in w)
            for nw, d in self.reduce_word(w).items():
                out[nw] = out.get(nw, 0) + c * d
        return GradedPolynomial(out)

    def multiply(self, f: GradedPolynomial, g: GradedPolynomial) -> GradedPolynomial:
        return self.normal_form(self.normal_form(f) * self.normal_form(g))

    def label(self, word) -> str:
        return "*".join(str(v) for v in word) or "1"

    def as_algebra(self) -> FiniteGradedAlgebra:
        """The truncated quotient as a finite-dimensional graded algebra (long products vanish)."""
        consts = {}
        for i, u in enumerate(self.normal_words):
            for j, v in enumerate(self.normal_words):
                for w, c in self.reduce_word(u + v).items():
                    consts[(i, j, self.index[w])] = c
        unit = [0] * self.dim
        if () in self.index:
            unit[self.index[()]] = 1
        return FiniteGradedAlgebra(
            self.group,
            [self.word_degree(w) for w in self.normal_words],
            consts,
            unit,
            [self.label(w) for w in self.normal_words],
            name=f"Free_{self.source_name}[{len(self.variables)};{self.degree_bound}]",
        )

    def to_dict(self) -> dict:
        return {
            "source": self.source_name,
            "variables": [str(v) for v in self.variables],
            "degree_bound": self.degree_bound,
            "dim": self.dim,
            "normal_words": [self.label(w) for w in self.normal_words],
            "notes": list(self.notes),
        }


def relatively_free_truncation(source, variables, degree_bound: int, budget: int | None = None):
    return RelativelyFreeTruncation(source, variables, degree_bound, budget)

"""Polynomial differential forms on affine n-space and the Fedosov product.

A form is a dict {(alpha, S): coefficient} for the monomial x^alpha dx_S,
alpha a multi-index and S a strictly increasing tuple of variable indices
(0-based).  The arena caps the total polynomial degree at ``p``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction

from ..errors import CapOverflow, InputError
from ..linalg import rat
from ..report import VerificationReport

HALF = Fraction(1, 2)


def _wedge_sign(S: tuple, T: tuple) -> int:
    """Sign of dx_S ^ dx_T = sign * dx_{S u T}; 0 when S and T meet."""
    if set(S) & set(T):
        return 0
    inversions = sum(1 for s in S for t in T if s > t)
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class FormsArena:
    n: int
    p: int

    def form(self, terms=None) -> "Form":
        return Form(self, _clean(terms or {}))

    def one(self) -> "Form":
        return self.form({((0,) * self.n, ()): 1})

    def x(self, i: int) -> "Form":
        alpha = [0] * self.n
        alpha[i - 1] = 1
        return self.form({(tuple(alpha), ()): 1})

    def dx(self, i: int) -> "Form":
        return self.form({((0,) * self.n, (i - 1,)): 1})

    def parse(self, text: str) -> "Form":
        return parse_form(text, self)

    def random_even(self, rng: random.Random, max_poly: int, terms: int = 3) -> "Form":
        """Random even form with coefficient degree <= max_poly and small integer coefficients."""
        out: dict = {}
        for _ in range(terms):
            k = rng.randrange(0, self.n + 1, 2)
            S = tuple(sorted(rng.sample(range(self.n), k)))
            alpha = [0] * self.n
            for _ in range(rng.randint(0, max_poly)):
                alpha[rng.randrange(self.n)] += 1
            key = (tuple(alpha), S)
            out[key] = out.get(key, 0) + rng.choice([-3, -2, -1, 1, 2, 3])
        return self.form(out)


def _clean(terms: dict) -> dict:
    return {k: rat(v) for k, v in sorted(terms.items(), key=lambda kv: (len(kv[0][1]), kv[0])) if v}


class Form:
    __slots__ = ("arena", "terms")

    def __init__(self, arena: FormsArena, terms: dict):
        self.arena = arena
        self.terms = terms

    def _same(self, other: "Form"):
        if other.arena != self.arena:
            raise InputError("forms live in different arenas")

    def __add__(self, other: "Form") -> "Form":
        self._same(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return self.arena.form(out)

    def __neg__(self) -> "Form":
        return self.arena.form({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def scale(self, c) -> "Form":
        return self.arena.form({k: c * v for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, Form) and self.arena == other.arena and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def poly_degree(self) -> int:
        return max((sum(a) for a, _ in self.terms), default=0)

    def form_degrees(self) -> set:
        return {len(S) for _, S in self.terms}

    def is_even(self) -> bool:
        return all(len(S) % 2 == 0 for _, S in self.terms)

    def wedge(self, other: "Form") -> "Form":
        self._same(other)
        if self.terms and other.terms and self.poly_degree + other.poly_degree > self.arena.p:
            raise CapOverflow(
                f"coefficient degree {self.poly_degree + other.poly_degree} exceeds the arena cap {self.arena.p}"
            )
        out: dict = {}
        for (a, S), c in self.terms.items():
            for (b, T), e in other.terms.items():
                sign = _wedge_sign(S, T)
                if sign:
                    key = (tuple(x + y for x, y in zip(a, b)), tuple(sorted(S + T)))
                    out[key] = out.get(key, 0) + sign * c * e
        return self.arena.form(out)

    def d(self) -> "Form":
        out: dict = {}
        for (a, S), c in self.terms.items():
            for i, k in enumerate(a):
                if k and i not in S:
                    b = list(a)
                    b[i] -= 1
                    sign = _wedge_sign((i,), S)
                    key = (tuple(b), tuple(sorted((i,) + S)))
                    out[key] = out.get(key, 0) + sign * k * c
        return self.arena.form(out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, S), c in self.terms.items():
            mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(a) if k)
            wedge = "^".join(f"dx{i + 1}" for i in S)
            body = " ".join(x for x in (mono, wedge) if x)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c} {body}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_dict(self) -> dict:
        return {"n": self.arena.n, "p": self.arena.p, "form": str(self)}


def fedosov_product(alpha: Form, beta: Form) -> Form:
    """alpha * beta = alpha ^ beta + 1/2 d alpha ^ d beta."""
    return alpha.wedge(beta) + alpha.d().wedge(beta.d()).scale(HALF)


def fedosov_commutator(alpha: Form, beta: Form) -> Form:
    return fedosov_product(alpha, beta) - fedosov_product(beta, alpha)


_TERM = re.compile(r"\s*([+-]?)\s*([^+-]+)")


def parse_form(text: str, arena: FormsArena) -> Form:
    """Parse e.g. ``"x1^2*x2 dx1^dx3 - 1/2 x2"``."""
    text = text.strip()
    if not text:
        raise InputError("empty form")
    out: dict = {}
    pos = 0
    for m in _TERM.finditer(text):
        if m.start() != pos:
            raise InputError(f"cannot parse form near {text[pos:]!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coef: Fraction = Fraction(sign)
        alpha = [0] * arena.n
        S: list = []
        for tok in re.split(r"[\s*]+", m.group(2).strip()):
            if not tok:
                continue
            if re.fullmatch(r"\d+(/\d+)?", tok):
                coef *= Fraction(tok)
            elif tok.startswith("dx"):
                for piece in tok.split("^"):
                    mm = re.fullmatch(r"dx(\d+)", piece)
                    if not mm:
                        raise InputError(f"bad differential {piece!r}")
                    S.append(_var(int(mm.group(1)), arena))
            else:
                mm = re.fullmatch(r"x(\d+)(?:\^(\d+))?", tok)
                if not mm:
                    raise InputError(f"bad monomial factor {tok!r}")
                alpha[_var(int(mm.group(1)), arena)] += int(mm.group(2) or 1)
        if len(set(S)) != len(S):
            continue
        sgn = 1
        for i in range(len(S)):
            for j in range(i + 1, len(S)):
                if S[i] > S[j]:
                    sgn = -sgn
        if sum(alpha) > arena.p:
            raise CapOverflow(f"monomial degree {sum(alpha)} exceeds the arena cap {arena.p}")
        key = (tuple(alpha), tuple(sorted(S)))
        out[key] = out.get(key, 0) + sgn * coef
    if pos != len(text):
        raise InputError(f"cannot parse form near {text[pos:]!r}")
    return arena.form(out)


def _var(i: int, arena: FormsArena) -> int:
    if not 1 <= i <= arena.n:
        raise InputError(f"variable index {i} outside 1..{arena.n}")
    return i - 1


def fedosov_identity_report(n: int = 2, p: int = 3, samples: int = 100, seed: int = 0) -> VerificationReport:
    """Sample-wise checks of the Fedosov product on even forms.

    Triples are drawn with coefficient degree <= p // 3 so every product in
    the associativity check stays inside the arena.
    """
    arena = FormsArena(n, p)
    rng = random.Random(seed)
    max_poly = p // 3
    counts = {"associative": 0, "closed_on_even": 0, "commutator_is_d_wedge_d": 0, "triple_commutator_zero": 0}
    nonzero_commutators = 0
    failure = None
    for t in range(samples):
        a, b, c = (arena.random_even(rng, max_poly) for _ in range(3))
        ab = fedosov_product(a, b)
        checks = {
            "associative": fedosov_product(ab, c) == fedosov_product(a, fedosov_product(b, c)),
            "closed_on_even": ab.is_even(),
            "commutator_is_d_wedge_d": fedosov_commutator(a, b) == a.d().wedge(b.d()),
            "triple_commutator_zero": fedosov_commutator(fedosov_commutator(a, b), c).is_zero(),
        }
        if not fedosov_commutator(a, b).is_zero():
            nonzero_commutators += 1
        for k, ok in checks.items():
            counts[k] += ok
            if not ok and failure is None:
                failure = {"sample": t, "check": k, "alpha": str(a), "beta": str(b), "gamma": str(c)}
    ok = failure is None
    inv = {
        "n": n, "p": p, "samples": samples, "seed": seed, "passed": counts,
        "nonzero_commutators": nonzero_commutators,
        # [[x1,x2],x3] evaluates to zero on every sample: it lies in the kernel of the sampled evaluation
        "triple_commutator_in_sampled_kernel": counts["triple_commutator_zero"] == samples,
        "commutator_in_sampled_kernel": nonzero_commutators == 0,
    }
    notes = []
    if nonzero_commutators == 0:
        notes.append("the product is commutative on every sampled pair of even forms")
    return VerificationReport("fedosov_identities", ok, failure, inv, notes=notes)

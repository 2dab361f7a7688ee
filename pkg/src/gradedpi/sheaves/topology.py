"""Finite topological spaces with opens stored as bitmasks over the point list."""

from __future__ import annotations

from itertools import permutations, product

from ..errors import ContinuityError, StructureError
from ..report import VerificationReport


def bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def _open_key(mask: int):
    return (bin(mask).count("1"), bits(mask))


class FiniteTopology:
    """Points and a family of opens.  Use :func:`validate_topology` before relying on axioms."""

    def __init__(self, points, opens, name: str = ""):
        self.points = [str(p) for p in points]
        if len(set(self.points)) != len(self.points):
            raise StructureError("point names must be distinct")
        n = len(self.points)
        cleaned = set()
        for U in opens:
            m = U if isinstance(U, int) else mask_of(self._index(p) for p in U)
            if m >> n:
                raise StructureError(f"open {U!r} mentions a point outside the space")
            cleaned.add(m)
        self.opens = sorted(cleaned, key=_open_key)
        self.name = name
        self._minimal: list | None = None

    def _index(self, p) -> int:
        if isinstance(p, int) and not isinstance(p, bool):
            if not 0 <= p < len(self.points):
                raise StructureError(f"point index {p} out of range")
            return p
        try:
            return self.points.index(str(p))
        except ValueError:
            raise StructureError(f"unknown point {p!r}") from None

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def open_of(self, names) -> int:
        return mask_of(self._index(p) for p in names)

    def label(self, U: int) -> str:
        return "{" + ",".join(self.points[i] for i in bits(U)) + "}"

    def subopens(self, U: int) -> list[int]:
        return [V for V in self.opens if V & ~U == 0]

    def minimal_open(self, x) -> int:
        """Smallest open containing point ``x`` (index or name)."""
        x = self._index(x)
        if self._minimal is None:
            out = []
            for p in range(self.n):
                m = self.full
                for U in self.opens:
                    if U >> p & 1:
                        m &= U
                out.append(m)
            self._minimal = out
        return self._minimal[x]

    def minimal_cover(self) -> list[int]:
        """Distinct minimal neighbourhoods U_x, in canonical order."""
        return sorted({self.minimal_open(x) for x in range(self.n)}, key=_open_key)

    def components(self, U: int) -> list[int]:
        """Connected components of the subspace U."""
        left = set(bits(U))
        comps = []
        while left:
            stack = [left.pop()]
            comp = set(stack)
            while stack:
                p = stack.pop()
                for q in list(left):
                    if (self.minimal_open(p) >> q & 1) or (self.minimal_open(q) >> p & 1):
                        left.discard(q)
                        comp.add(q)
                        stack.append(q)
            comps.append(mask_of(comp))
        return sorted(comps, key=_open_key)

    def to_dict(self) -> dict:
        return {"points": list(self.points), "opens": [bits(U) for U in self.opens]}

    def __repr__(self) -> str:
        return f"<topology {self.name or ''} on {self.n} points, {len(self.opens)} opens>"


def validate_topology(T: FiniteTopology) -> VerificationReport:
    opens = set(T.opens)
    inv = {"points": T.n, "opens": len(opens)}
    if 0 not in opens:
        return VerificationReport("validate_topology", False, {"missing": "empty set"}, inv)
    if T.full not in opens:
        return VerificationReport("validate_topology", False, {"missing": "whole space"}, inv)
    ordered = T.opens
    for i, U in enumerate(ordered):
        for V in ordered[i + 1:]:
            for op, name in ((U | V, "union"), (U & V, "intersection")):
                if op not in opens:
                    return VerificationReport(
                        "validate_topology", False,
                        {"axiom": name, "opens": [T.label(U), T.label(V)], "missing": T.label(op)},
                        inv,
                    )
    inv["minimal_open"] = {T.points[x]: T.label(T.minimal_open(x)) for x in range(T.n)}
    return VerificationReport("validate_topology", True, invariants=inv)


def check_continuous(f, X: FiniteTopology, Y: FiniteTopology) -> dict:
    """Preimage table {open of Y: open of X}; raises ContinuityError with the witness open."""
    images = [Y._index(f[p] if isinstance(f, dict) else f[i]) for i, p in enumerate(X.points)]
    table = {}
    xopens = set(X.opens)
    for V in Y.opens:
        pre = mask_of(i for i, y in enumerate(images) if V >> y & 1)
        if pre not in xopens:
            raise ContinuityError(f"preimage of open {Y.label(V)} is {X.label(pre)}, which is not open")
        table[V] = pre
    return table


# -- standard spaces ---------------------------------------------------------------

def sierpinski() -> FiniteTopology:
    return FiniteTopology(["a", "b"], [[], ["a"], ["a", "b"]], name="Sierpinski")


def discrete(n: int, names=None) -> FiniteTopology:
    names = names or [chr(ord("a") + i) for i in range(n)]
    return FiniteTopology(names, list(range(1 << n)), name=f"discrete{n}")


def indiscrete(n: int) -> FiniteTopology:
    names = [chr(ord("a") + i) for i in range(n)]
    return FiniteTopology(names, [0, (1 << n) - 1], name=f"indiscrete{n}")


def pseudocircle() -> FiniteTopology:
    return FiniteTopology(
        ["a", "b", "x", "y"],
        [[], ["a"], ["b"], ["a", "b"], ["a", "b", "x"], ["a", "b", "y"], ["a", "b", "x", "y"]],
        name="pseudocircle",
    )


def point() -> FiniteTopology:
    return FiniteTopology(["p"], [[], ["p"]], name="point")


def from_preorder(n: int, leq) -> FiniteTopology:
    """Opens are the up-sets of the preorder: U_x = {y : x <= y}."""
    names = [chr(ord("a") + i) for i in range(n)]
    opens = [
        m for m in range(1 << n)
        if all(not (m >> x & 1) or all(m >> y & 1 for y in range(n) if leq[x][y]) for x in range(n))
    ]
    return FiniteTopology(names, opens)


def enumerate_topologies(n: int) -> list[FiniteTopology]:
    """One representative per homeomorphism class of topologies on n points."""
    if n == 0:
        return [FiniteTopology([], [0], name="empty")]
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    seen = set()
    out = []
    for choice in product((0, 1), repeat=len(pairs)):
        leq = [[i == j for j in range(n)] for i in range(n)]
        for (i, j), c in zip(pairs, choice):
            leq[i][j] = bool(c)
        if any(leq[i][j] and leq[j][k] and not leq[i][k]
               for i in range(n) for j in range(n) for k in range(n)):
            continue
        canon = min(
            tuple(leq[p[i]][p[j]] for i in range(n) for j in range(n)) for p in permutations(range(n))
        )
        if canon in seen:
            continue
        seen.add(canon)
        T = from_preorder(n, leq)
        T.name = f"T{n}.{len(out)}"
        out.append(T)
    return out


def all_small_topologies(max_points: int = 4) -> list[FiniteTopology]:
    return [T for n in range(max_points + 1) for T in enumerate_topologies(n)]

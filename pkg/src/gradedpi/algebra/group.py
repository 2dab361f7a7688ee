"""Finitely generated abelian grading groups Z^r x Z/m_1 x ... x Z/m_s."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..errors import StructureError

Element = tuple[int, ...]


@dataclass(frozen=True)
class GradingGroup:
    free_rank: int = 0
    torsion_orders: tuple[int, ...] = ()

    def __post_init__(self):
        if not isinstance(self.free_rank, int) or self.free_rank < 0:
            raise StructureError(f"free rank must be a nonnegative integer, got {self.free_rank!r}")
        orders = tuple(self.torsion_orders)
        object.__setattr__(self, "torsion_orders", orders)
        for m in orders:
            if not isinstance(m, int) or m < 2:
                raise StructureError(f"torsion orders must be integers >= 2, got {m!r}")

    @property
    def length(self) -> int:
        return self.free_rank + len(self.torsion_orders)

    @property
    def is_trivial(self) -> bool:
        return self.length == 0

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def identity(self) -> Element:
        return (0,) * self.length

    def element(self, value) -> Element:
        """Normalize an integer vector (or a bare int for cyclic groups)."""
        if isinstance(value, int) and not isinstance(value, bool):
            value = (value,)
        value = tuple(value)
        if len(value) != self.length:
            raise StructureError(
                f"group element {value!r} has length {len(value)}, expected {self.length}"
            )
        if any(not isinstance(v, int) or isinstance(v, bool) for v in value):
            raise StructureError(f"group element {value!r} must have integer entries")
        r = self.free_rank
        return value[:r] + tuple(v % m for v, m in zip(value[r:], self.torsion_orders))

    def add(self, g: Element, h: Element) -> Element:
        return self.element(tuple(a + b for a, b in zip(g, h)))

    def neg(self, g: Element) -> Element:
        return self.element(tuple(-a for a in g))

    def sub(self, g: Element, h: Element) -> Element:
        return self.add(g, self.neg(h))

    def sum(self, elements) -> Element:
        out = self.identity
        for g in elements:
            out = self.add(out, g)
        return out

    def is_identity(self, g: Element) -> bool:
        return not any(g)

    def elements(self) -> list[Element]:
        if not self.is_finite:
            raise ValueError("group with free part is infinite")
        return [tuple(v) for v in product(*(range(m) for m in self.torsion_orders))]

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion_orders)}

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z{m}" for m in self.torsion_orders]
        return " x ".join(parts) if parts else "1"


TRIVIAL = GradingGroup()
Z2 = GradingGroup(0, (2,))
Z = GradingGroup(1, ())


def z2_power(n: int) -> GradingGroup:
    return GradingGroup(0, (2,) * n)

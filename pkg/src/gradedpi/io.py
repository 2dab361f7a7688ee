"""JSON description files for algebras, topologies, presheaves and Morita contexts.

Algebra file::

    {"group": {"free_rank": 0, "torsion": [2]}, "degrees": [[0], [1]],
     "unit": ["1", "0"], "mul": [[0, 0, 0, "1"], ...], "labels": [...], "name": "..."}

A reference to an algebra is either such an object, a path to one, or a
builder name understood by :func:`gradedpi.algebra.from_name` ("M:2", "E:4").
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .algebra.builders import from_name
from .algebra.core import FiniteGradedAlgebra
from .algebra.group import TRIVIAL, Z, Z2, GradingGroup
from .errors import InputError, StructureError
from .sheaves import presheaf as ps
from .sheaves import topology as top

NAMED_GROUPS = {"1": TRIVIAL, "trivial": TRIVIAL, "Z2": Z2, "Z": Z}


def load_json(path) -> object:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from None


def _fraction(value) -> Fraction:
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {value!r}") from None


def parse_group(spec) -> GradingGroup:
    """"Z2", "Z^2 x Z3", {"free_rank": r, "torsion": [...]}; nonabelian groups are rejected."""
    if isinstance(spec, GradingGroup):
        return spec
    if spec is None:
        return TRIVIAL
    if isinstance(spec, dict):
        if spec.get("abelian") is False or "nonabelian" in spec:
            raise InputError("only abelian grading groups Z^r x Z/m1 x ... are supported")
        try:
            return GradingGroup(int(spec.get("free_rank", 0)), tuple(int(m) for m in spec.get("torsion", [])))
        except (TypeError, ValueError, StructureError) as exc:
            raise InputError(f"bad group description: {exc}") from None
    if isinstance(spec, str):
        s = spec.replace(" ", "")
        if s in NAMED_GROUPS:
            return NAMED_GROUPS[s]
        free, torsion = 0, []
        for part in s.split("x"):
            if part == "Z":
                free += 1
            elif part.startswith("Z^") and part[2:].isdigit():
                free += int(part[2:])
            elif part.startswith("Z") and part[1:].isdigit():
                torsion.append(int(part[1:]))
            else:
                raise InputError(f"unsupported grading group {spec!r}; only abelian Z^r x Z/m are allowed")
        try:
            return GradingGroup(free, tuple(torsion))
        except StructureError as exc:
            raise InputError(str(exc)) from None
    raise InputError(f"bad group description {spec!r}")


def algebra_from_dict(data: dict) -> FiniteGradedAlgebra:
    if "builder" in data:
        return algebra_ref(data["builder"])
    try:
        group = parse_group(data.get("group"))
        degrees = [group.element(d if not isinstance(d, list) else tuple(d)) for d in data["degrees"]]
        unit = [_fraction(u) for u in data["unit"]]
        consts = {}
        for entry in data.get("mul", []):
            i, j, k, c = entry
            consts[(int(i), int(j), int(k))] = _fraction(c)
        return FiniteGradedAlgebra(group, degrees, consts, unit, data.get("labels"), data.get("name", ""))
    except KeyError as exc:
        raise InputError(f"algebra description lacks field {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed algebra description: {exc}") from None


def algebra_ref(ref, base: Path | None = None) -> FiniteGradedAlgebra:
    if isinstance(ref, FiniteGradedAlgebra):
        return ref
    if isinstance(ref, dict):
        return algebra_from_dict(ref)
    if isinstance(ref, str):
        path = Path(ref) if base is None else base / ref
        if ref.endswith(".json") or path.is_file():
            return algebra_from_dict(load_json(path))
        try:
            return from_name(ref)
        except StructureError as exc:
            raise InputError(str(exc)) from None
    raise InputError(f"bad algebra reference {ref!r}")


NAMED_SPACES = {
    "sierpinski": top.sierpinski,
    "pseudocircle": top.pseudocircle,
    "point": top.point,
}


def topology_ref(ref, base: Path | None = None) -> top.FiniteTopology:
    if isinstance(ref, top.FiniteTopology):
        return ref
    if isinstance(ref, str):
        name, _, arg = ref.partition(":")
        if name in NAMED_SPACES:
            return NAMED_SPACES[name]()
        if name in ("discrete", "indiscrete") and arg.isdigit():
            return getattr(top, name)(int(arg))
        path = Path(ref) if base is None else base / ref
        return topology_from_dict(load_json(path))
    if isinstance(ref, dict):
        return topology_from_dict(ref)
    raise InputError(f"bad topology reference {ref!r}")


def topology_from_dict(data: dict) -> top.FiniteTopology:
    try:
        points = data["points"]
        T = top.FiniteTopology(points, [list(U) for U in data["opens"]], name=data.get("name", ""))
    except KeyError as exc:
        raise InputError(f"topology description lacks field {exc.args[0]!r}") from None
    except StructureError as exc:
        raise InputError(str(exc)) from None
    return T


def _open(T, spec) -> int:
    try:
        return T.open_of(spec)
    except StructureError as exc:
        raise InputError(str(exc)) from None


def presheaf_from_dict(data: dict, base: Path | None = None) -> ps.PresheafOfAlgebras:
    """Explicit presheaf or a builder shortcut.

    Shortcuts: {"topology": T, "constant_sheaf": A}, "function_sheaf" and
    "constant_presheaf".  Explicit form: "sections" as a list of
    {"open": [points], "algebra": ref} and "restrictions" as a list of
    {"from": [points], "to": [points], "matrix": rows}.
    """
    T = topology_ref(data.get("topology", {}), base) if "topology" in data else None
    if T is None:
        raise InputError("presheaf description lacks a topology")
    for key, builder in (
        ("constant_sheaf", ps.constant_sheaf),
        ("function_sheaf", ps.build_function_sheaf),
        ("constant_presheaf", ps.constant_presheaf),
    ):
        if key in data:
            return builder(algebra_ref(data[key], base), T)
    try:
        sections = {_open(T, s["open"]): algebra_ref(s["algebra"], base) for s in data["sections"]}
        res = {}
        for r in data.get("restrictions", []):
            res[(_open(T, r["from"]), _open(T, r["to"]))] = [[_fraction(c) for c in row] for row in r["matrix"]]
    except KeyError as exc:
        raise InputError(f"presheaf description lacks field {exc.args[0]!r}") from None
    # identities on U -> U and the forced maps into or out of zero algebras
    for U in T.opens:
        for V in T.subopens(U):
            if (U, V) in res or U not in sections or V not in sections:
                continue
            m, n = sections[V].dim, sections[U].dim
            if U == V:
                res[(U, V)] = [[int(i == j) for j in range(n)] for i in range(m)]
            elif m == 0 or n == 0:
                res[(U, V)] = [[0] * n for _ in range(m)]
    try:
        return ps.PresheafOfAlgebras(T, sections, res, name=data.get("name", ""))
    except StructureError as exc:
        raise InputError(str(exc)) from None


def presheaf_ref(ref, base: Path | None = None) -> ps.PresheafOfAlgebras:
    if isinstance(ref, ps.PresheafOfAlgebras):
        return ref
    if isinstance(ref, str):
        path = Path(ref) if base is None else base / ref
        return presheaf_from_dict(load_json(path), path.parent)
    if isinstance(ref, dict):
        return presheaf_from_dict(ref, base)
    raise InputError(f"bad presheaf reference {ref!r}")


def morita_from_dict(data: dict, base: Path | None = None):
    from .morita import MoritaContext, diagonal_idempotent

    if "group" in data:
        parse_group(data["group"])
    try:
        A = algebra_ref(data["A"], base)
        B = algebra_ref(data["B"], base)
        n = int(data["n"])
        e = data["e"]
    except KeyError as exc:
        raise InputError(f"Morita context lacks field {exc.args[0]!r}") from None
    if isinstance(e, dict) and "diagonal" in e:
        e = diagonal_idempotent(B, n, e["diagonal"])
    else:
        e = [_fraction(c) for c in e]
    iso = data.get("iso")
    if iso is not None:
        iso = [[_fraction(c) for c in row] for row in iso]
    return MoritaContext(A, B, n, e, iso)

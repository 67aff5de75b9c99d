"""Canonical JSON forms: integers only, sorted keys, byte-stable output.

Field elements serialize as integer bitmasks, points as [x, y] mask
pairs, subgroups as sorted point arrays, squares as class lists in label
order, and states as {"num": [[re, im], ...], "norm_sq": N}.  Square
payloads carry only "d"; the field modulus is the canonical one for that
dimension.
"""

from __future__ import annotations

import json
from typing import Any

from .gf2n import Field, field_for_dimension
from .mub import MubBasis, MubSet, UnnormalizedState
from .pauli import GaussInt
from .phasespace import Point, Subgroup
from .squares import CompleteSet, Square


def dumps_canonical(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def point_to_json(p: Point) -> list[int]:
    return [p.x.mask, p.y.mask]


def point_from_json(field: Field, data: Any) -> Point:
    x, y = data
    return Point(field.element(int(x)), field.element(int(y)))


def subgroup_to_json(g: Subgroup) -> list[list[int]]:
    return [point_to_json(p) for p in g.points]


def subgroup_from_json(field: Field, data: Any) -> Subgroup:
    return Subgroup(point_from_json(field, item) for item in data)


def square_to_json(s: Square) -> dict:
    return {
        "d": s.d,
        "classes": [
            [point_to_json(p) for p in sorted(cls, key=lambda p: p.sort_key)]
            for cls in s.classes
        ],
    }


def square_from_json(data: Any) -> Square:
    field = field_for_dimension(int(data["d"]))
    classes = [
        [point_from_json(field, item) for item in cls] for cls in data["classes"]
    ]
    return Square(field, classes)


def complete_set_to_json(c: CompleteSet) -> dict:
    return {
        "type": c.set_type,
        "v1": None if c.v1 is None else point_to_json(c.v1),
        "v2": None if c.v2 is None else point_to_json(c.v2),
        "squares": [square_to_json(sq) for sq in c.squares],
    }


def squares_payload_from_json(data: Any) -> tuple[str, Any]:
    """Dispatch a parsed JSON document to ("square", Square) or
    ("set", (type, v1, v2, [Square, ...])).  Raises ValueError on
    malformed payloads; striation/orthogonality defects are left to the
    verification layer."""
    if not isinstance(data, dict):
        raise ValueError("expected a JSON object")
    if "classes" in data:
        return "square", square_from_json(data)
    if "squares" in data:
        squares = [square_from_json(item) for item in data["squares"]]
        if not squares:
            raise ValueError("empty square list")
        field = squares[0].field
        v1 = None if data.get("v1") is None else point_from_json(field, data["v1"])
        v2 = None if data.get("v2") is None else point_from_json(field, data["v2"])
        return "set", (str(data.get("type", "Unclassified")), v1, v2, squares)
    raise ValueError("payload is neither a square nor a complete set")


def state_to_json(s: UnnormalizedState) -> dict:
    return {"num": [[e.re, e.im] for e in s.entries], "norm_sq": s.norm_sq}


def state_from_json(data: Any) -> UnnormalizedState:
    entries = tuple(GaussInt(int(re), int(im)) for re, im in data["num"])
    return UnnormalizedState(entries, int(data["norm_sq"]))


def basis_to_json(b: MubBasis) -> dict:
    return {
        "source": subgroup_to_json(b.source),
        "words": [list(w.letters) for w in b.operator_words],
        "states": [state_to_json(s) for s in b.states],
        "class_of_state": None if b.class_of_state is None else list(b.class_of_state),
    }


def mub_set_to_json(m: MubSet, structure_triple: tuple[int, int, int] | None) -> dict:
    out = {
        "d": m.d,
        "complete_set": complete_set_to_json(m.source_set),
        "bases": [basis_to_json(b) for b in m.bases],
        "unbiased": True,
    }
    if structure_triple is not None:
        out["structure"] = list(structure_triple)
    return out

"""Points and subgroups of the discrete phase space F_d x F_d.

A point is a pair of field elements (x, y).  The order-d additive
subgroups are the candidate rays of striations; the extraordinary ones --
those on which the determinant form det((x1,y1),(x2,y2)) = x1*y2 + x2*y1
has zero trace for every pair of elements -- are exactly the rays whose
translation operators pairwise commute.

Points are packed into integer masks (x bits low, y bits high) wherever
subgroups are enumerated in bulk.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator

from dataclasses import dataclass

from .gf2n import Field, FieldElement


@dataclass(frozen=True)
class Point:
    x: FieldElement
    y: FieldElement

    def __post_init__(self) -> None:
        if self.x.field != self.y.field:
            raise ValueError("point coordinates must share one field")

    @property
    def field(self) -> Field:
        return self.x.field

    @property
    def is_zero(self) -> bool:
        return self.x.mask == 0 and self.y.mask == 0

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def scale(self, c: FieldElement) -> "Point":
        return Point(self.x * c, self.y * c)

    @property
    def sort_key(self) -> tuple[int, int]:
        return (self.x.mask, self.y.mask)

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


def zero_point(field: Field) -> Point:
    return point_table(field)[0]


_POINT_TABLES: dict[Field, tuple[Point, ...]] = {}


def point_table(field: Field) -> tuple[Point, ...]:
    """Canonical Point objects indexed by packed mask x | y << n."""
    table = _POINT_TABLES.get(field)
    if table is None:
        els = field.elements()
        table = tuple(Point(x, y) for y in els for x in els)
        _POINT_TABLES[field] = table
    return table


def all_points(field: Field) -> list[Point]:
    """Every point, in (x mask, y mask) order."""
    table = point_table(field)
    d = field.order
    return [table[x | y << field.n] for x in range(d) for y in range(d)]


def point_to_mask(p: Point) -> int:
    return p.x.mask | p.y.mask << p.field.n


def point_from_mask(field: Field, mask: int) -> Point:
    if not 0 <= mask < field.order * field.order:
        raise ValueError(f"packed point mask {mask} out of range")
    return point_table(field)[mask]


def det(v1: Point, v2: Point) -> FieldElement:
    """x1*y2 + x2*y1 (subtraction and addition coincide in characteristic 2)."""
    if v1.field != v2.field:
        raise ValueError("points must share one field")
    return v1.x * v2.y + v2.x * v1.y


def trace_zero_subgroup(field: Field) -> frozenset[FieldElement]:
    """The 2^(n-1) elements of trace zero."""
    return frozenset(a for a in field.elements() if field._trace[a.mask] == 0)


def scale_set(elements: Iterable[FieldElement], c: FieldElement) -> frozenset[FieldElement]:
    if c.is_zero:
        raise ValueError("cannot scale a set by zero")
    return frozenset(s * c for s in elements)


class Subgroup:
    """An additively closed subset of F_d x F_d containing the origin."""

    __slots__ = ("field", "points", "_set")

    def __init__(self, points: Iterable[Point]) -> None:
        pts = sorted(set(points), key=lambda p: p.sort_key)
        if not pts:
            raise ValueError("subgroup cannot be empty")
        field = pts[0].field
        if any(p.field != field for p in pts):
            raise ValueError("subgroup points must share one field")
        if pts[0].sort_key != (0, 0):
            raise ValueError("subgroup must contain the origin")
        if len(pts) & (len(pts) - 1):
            raise ValueError(f"subgroup cardinality {len(pts)} is not a power of 2")
        pset = frozenset(pts)
        for g in pts:
            for h in pts:
                if g + h not in pset:
                    raise ValueError(f"set is not closed under addition: {g} + {h}")
        self.field = field
        self.points = tuple(pts)
        self._set = pset

    @classmethod
    def span(cls, generators: Iterable[Point]) -> "Subgroup":
        gens = list(generators)
        if not gens:
            raise ValueError("span needs at least one generator")
        field = gens[0].field
        closure = {zero_point(field)}
        for g in gens:
            closure |= {p + g for p in closure}
        return cls(closure)

    @classmethod
    def from_masks(cls, field: Field, masks: Iterable[int]) -> "Subgroup":
        return cls(point_from_mask(field, m) for m in masks)

    def masks(self) -> tuple[int, ...]:
        return tuple(point_to_mask(p) for p in self.points)

    @property
    def order(self) -> int:
        return len(self.points)

    def nonzero_points(self) -> tuple[Point, ...]:
        return self.points[1:]

    def basis(self) -> tuple[Point, ...]:
        """Greedy F_2-independent generators, in canonical point order."""
        pivots: list[int] = []
        gens: list[Point] = []
        for p in self.nonzero_points():
            m = point_to_mask(p)
            for piv in pivots:
                m = min(m, m ^ piv)
            if m:
                pivots.append(m)
                gens.append(p)
        return tuple(gens)

    def intersects_trivially(self, other: "Subgroup") -> bool:
        return len(self._set & other._set) == 1

    def __contains__(self, p: Point) -> bool:
        return p in self._set

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def sort_key(self) -> tuple[tuple[int, int], ...]:
        return tuple(p.sort_key for p in self.points)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.field == other.field
            and self.points == other.points
        )

    def __hash__(self) -> int:
        return hash((self.field, self.points))

    def __repr__(self) -> str:
        return "{" + ", ".join(str(p) for p in self.points) + "}"


def line(u: Point) -> Subgroup:
    """The scalar multiples F_d * u."""
    if u.is_zero:
        raise ValueError("a line needs a nonzero direction")
    return Subgroup(u.scale(c) for c in u.field.elements())


def affine_span(
    a: Point,
    b: Point,
    scalars_a: Iterable[FieldElement],
    scalars_b: Iterable[FieldElement],
) -> Subgroup:
    """{s*a + t*b : s in scalars_a, t in scalars_b}, validated to be a
    direct, additively closed span."""
    sa = sorted(set(scalars_a), key=lambda e: e.mask)
    sb = sorted(set(scalars_b), key=lambda e: e.mask)
    pts = {a.scale(s) + b.scale(t) for s in sa for t in sb}
    if len(pts) != len(sa) * len(sb):
        raise ValueError("span is not direct: generated fewer points than expected")
    return Subgroup(pts)


def is_extraordinary(g: Subgroup) -> bool:
    """True iff det(g1, g2) has trace zero for every pair of elements."""
    field = g.field
    pts = g.points
    for i in range(1, len(pts)):
        xi, yi = pts[i].x.mask, pts[i].y.mask
        for j in range(i + 1, len(pts)):
            d = field._mul_mask(xi, pts[j].y.mask) ^ field._mul_mask(pts[j].x.mask, yi)
            if field._trace[d]:
                return False
    return True


def _is_extraordinary_masks(field: Field, masks: Iterable[int]) -> bool:
    lo = field.order - 1
    n = field.n
    mul = field._mul_mask
    tr = field._trace
    ms = [m for m in masks if m]
    for i in range(len(ms)):
        xi, yi = ms[i] & lo, ms[i] >> n
        for j in range(i + 1, len(ms)):
            if tr[mul(xi, ms[j] >> n) ^ mul(ms[j] & lo, yi)]:
                return False
    return True


def _iter_subspace_rows(m: int, k: int) -> Iterator[list[int]]:
    """Reduced-row-echelon bases of all k-dimensional subspaces of F_2^m."""
    for pivots in combinations(range(m), k):
        pivot_set = set(pivots)
        free = [
            (i, j)
            for i in range(k)
            for j in range(m)
            if j > pivots[i] and j not in pivot_set
        ]
        for bits in range(1 << len(free)):
            rows = [1 << pivots[i] for i in range(k)]
            for idx, (i, j) in enumerate(free):
                if bits >> idx & 1:
                    rows[i] |= 1 << j
            yield rows


def iter_subgroup_masks(field: Field) -> Iterator[tuple[int, ...]]:
    """Point-mask tuples of every order-d subgroup, one per subgroup."""
    n = field.n
    for rows in _iter_subspace_rows(2 * n, n):
        pts = [0]
        for r in rows:
            pts += [p ^ r for p in pts]
        yield tuple(sorted(pts))


def enumerate_subgroups(field: Field, order: int | None = None) -> list[Subgroup]:
    """All F_2-subspaces of dimension n of F_d x F_d, canonically sorted."""
    if order is None:
        order = field.order
    if order != field.order:
        raise ValueError(f"only order-{field.order} subgroups are supported here")
    subs = [Subgroup.from_masks(field, masks) for masks in iter_subgroup_masks(field)]
    subs.sort(key=lambda s: s.sort_key)
    return subs


def enumerate_extraordinary_subgroups(field: Field) -> list[Subgroup]:
    """The order-d subgroups passing the zero-trace determinant test."""
    out = [
        Subgroup.from_masks(field, masks)
        for masks in iter_subgroup_masks(field)
        if _is_extraordinary_masks(field, masks)
    ]
    out.sort(key=lambda s: s.sort_key)
    return out


def extraordinary_subgroups_from_forms(field: Field) -> set[Subgroup]:
    """The order-d extraordinary subgroups built from their two closed
    forms: scalar lines F_d*u and spans Z2*v1 + (K*k^-1)*v2 taken over all
    pairs with det(v1, v2) = k a nonzero trace-zero element."""
    out: set[Subgroup] = set()
    points = [p for p in all_points(field) if not p.is_zero]
    for u in points:
        out.add(line(u))
    kset = trace_zero_subgroup(field)
    z2 = (field.zero, field.one)
    for v1 in points:
        for v2 in points:
            k = det(v1, v2)
            if k.is_zero or field._trace[k.mask]:
                continue
            ktilde = scale_set(kset, k.inv())
            out.add(affine_span(v1, v2, z2, ktilde))
    return out

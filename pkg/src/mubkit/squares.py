"""Squares, supersquares, physical striations, and complete sets.

A square is a partition of F_d x F_d into d classes of d points; class
j-1 in the ``classes`` tuple carries label j.  A supersquare is the
quotient of the plane by an order-d subgroup: class 1 is the subgroup,
the remaining classes are its cosets labelled in order of their minimal
representatives.

Grid convention (used for rendering and the Latin/row-Latin/column-Latin
tests): the cell at grid row r, column c holds the label of the class
containing the point (x1, x2) where x1 sweeps columns left to right and
x2 sweeps rows bottom to top, both in the order 0, 1, mu, mu^2, ...

Complete sets are d+1 pairwise orthogonal extraordinary supersquares,
equivalently d+1 generating subgroups that pairwise intersect only in
the origin, so that together they tile the nonzero points of the plane.
The search engine enumerates every such tiling by exact-cover
backtracking over the extraordinary subgroups.
"""

from __future__ import annotations

import enum
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .gf2n import Field, FieldElement
from .phasespace import (
    Point,
    Subgroup,
    affine_span,
    all_points,
    det,
    is_extraordinary,
    _is_extraordinary_masks,
    iter_subgroup_masks,
    line,
    point_table,
    point_to_mask,
    scale_set,
    trace_zero_subgroup,
    zero_point,
)


class Square:
    """A partition of F_d x F_d into d classes of d points each."""

    __slots__ = ("field", "classes", "_label_by_point")

    def __init__(self, field: Field, classes: Iterable[Iterable[Point]]) -> None:
        classes = tuple(frozenset(c) for c in classes)
        d = field.order
        if len(classes) != d:
            raise ValueError(f"square of order {d} needs {d} classes, got {len(classes)}")
        label_by_point: dict[Point, int] = {}
        for idx, cls in enumerate(classes):
            if len(cls) != d:
                raise ValueError(f"class {idx + 1} has {len(cls)} points, expected {d}")
            for p in cls:
                if p.field != field:
                    raise ValueError("square points must share the square's field")
                if p in label_by_point:
                    raise ValueError(f"classes overlap at {p}")
                label_by_point[p] = idx + 1
        if len(label_by_point) != d * d:
            raise ValueError("classes do not cover the plane")
        self.field = field
        self.classes = classes
        self._label_by_point = label_by_point

    @property
    def d(self) -> int:
        return self.field.order

    def label_of(self, p: Point) -> int:
        return self._label_by_point[p]

    def grid(self) -> list[list[int]]:
        """grid[r][c]: r indexes x2 bottom-up, c indexes x1 left-right."""
        order = self.field.in_dlog_order()
        return [[self._label_by_point[Point(x1, x2)] for x1 in order] for x2 in order]

    def same_partition(self, other: "Square", pin_class_1: bool = True) -> bool:
        """Partition equality up to renaming of labels 2..d."""
        if frozenset(self.classes) != frozenset(other.classes):
            return False
        return not pin_class_1 or self.classes[0] == other.classes[0]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Square)
            and self.field == other.field
            and self.classes == other.classes
        )

    def __hash__(self) -> int:
        return hash((self.field, self.classes))

    def __repr__(self) -> str:
        return f"Square(d={self.d})"


@dataclass(frozen=True)
class Supersquare:
    generator: Subgroup
    coset_reps: tuple[Point, ...]
    square: Square

    @property
    def field(self) -> Field:
        return self.generator.field

    @property
    def d(self) -> int:
        return self.generator.field.order


def supersquare_from_subgroup(a1: Subgroup) -> Supersquare:
    """The quotient of the plane by a1: class 1 is a1; cosets get labels
    2..d in order of their minimal representatives."""
    field = a1.field
    d = field.order
    n = field.n
    if a1.order != d:
        raise ValueError(f"generating subgroup must have {d} elements")
    table = point_table(field)
    gen_masks = a1.masks()
    classes: list[frozenset[Point]] = [frozenset(a1.points)]
    reps: list[Point] = []
    seen = set(gen_masks)
    for xm in range(d):
        for ym in range(d):
            pm = xm | ym << n
            if pm in seen:
                continue
            coset_masks = [pm ^ g for g in gen_masks]
            seen.update(coset_masks)
            reps.append(table[pm])
            classes.append(frozenset(table[m] for m in coset_masks))
    return Supersquare(a1, tuple(reps), Square(field, classes))


def is_supersquare(square: Square) -> bool:
    """True iff some class is a subgroup and every other class is a coset
    of it.  Only the class through the origin can qualify."""
    origin = zero_point(square.field)
    zero_class = square.classes[square.label_of(origin) - 1]
    try:
        sub = Subgroup(zero_class)
    except ValueError:
        return False
    for cls in square.classes:
        if cls is zero_class:
            continue
        rep = min(cls, key=lambda p: p.sort_key)
        if frozenset(rep + g for g in sub) != cls:
            return False
    return True


def is_physical_striation(square: Square) -> bool:
    """True iff the square has an extraordinary-subgroup class whose
    nonzero elements translate every class onto itself."""
    origin = zero_point(square.field)
    zero_class = square.classes[square.label_of(origin) - 1]
    try:
        sub = Subgroup(zero_class)
    except ValueError:
        return False
    if not is_extraordinary(sub):
        return False
    for a in sub.nonzero_points():
        for cls in square.classes:
            if frozenset(p + a for p in cls) != cls:
                return False
    return True


def are_orthogonal(s: Square, t: Square) -> bool:
    """True iff the d^2 label pairs over all points are pairwise distinct."""
    if s.field != t.field:
        raise ValueError("squares must share one field")
    d = s.d
    pairs = {(s.label_of(p), t.label_of(p)) for p in all_points(s.field)}
    return len(pairs) == d * d


class SquareKind(enum.Enum):
    LATIN = "Latin"
    ROW_LATIN = "RowLatin"
    COLUMN_LATIN = "ColumnLatin"
    PLAIN = "Plain"


def classify(square: Square) -> SquareKind:
    """Latin / row-Latin / column-Latin / plain, the most specific true one."""
    grid = square.grid()
    full = set(range(1, square.d + 1))
    rows_ok = all(set(row) == full for row in grid)
    cols_ok = all(set(col) == full for col in zip(*grid))
    if rows_ok and cols_ok:
        return SquareKind.LATIN
    if rows_ok:
        return SquareKind.ROW_LATIN
    if cols_ok:
        return SquareKind.COLUMN_LATIN
    return SquareKind.PLAIN


GRID_HEADER = "row=x2 bottom-up, col=x1 left-right"


def render_ascii(square: Square, mark_class_1: bool = True) -> str:
    """Grid text, top row printed first; class-1 cells get a '*' suffix."""
    grid = square.grid()
    width = len(str(square.d)) + (1 if mark_class_1 else 0)
    lines = [GRID_HEADER]
    for row in reversed(grid):
        cells = [
            (f"{label}*" if mark_class_1 and label == 1 else str(label)).rjust(width)
            for label in row
        ]
        lines.append(" ".join(cells))
    return "\n".join(lines)


@dataclass(frozen=True)
class CompleteSet:
    set_type: str
    v1: Point | None
    v2: Point | None
    supersquares: tuple[Supersquare, ...]

    @property
    def field(self) -> Field:
        return self.supersquares[0].field

    @property
    def d(self) -> int:
        return self.field.order

    @property
    def generators(self) -> tuple[Subgroup, ...]:
        return tuple(ss.generator for ss in self.supersquares)

    @property
    def squares(self) -> tuple[Square, ...]:
        return tuple(ss.square for ss in self.supersquares)


def _set_from_generators(
    set_type: str, v1: Point | None, v2: Point | None, gens: Sequence[Subgroup]
) -> CompleteSet:
    return CompleteSet(
        set_type, v1, v2, tuple(supersquare_from_subgroup(g) for g in gens)
    )


def type_I_set(v1: Point, v2: Point) -> CompleteSet:
    """The d+1 scalar lines F_d(v1 + lambda*v2), lambda sweeping F_d, plus
    F_d*v2.  Any basis of the plane over F_d is accepted."""
    if det(v1, v2).is_zero:
        raise ValueError("type I needs an F_d-basis: det(v1, v2) must be nonzero")
    field = v1.field
    gens = [line(v1 + v2.scale(lam)) for lam in field.in_dlog_order()]
    gens.append(line(v2))
    return _set_from_generators("I", v1, v2, gens)


# Generator tables are expressed as recipes -- ("line", u) for F_d*u and
# ("span", a, b, scalars) for Z2*a + scalars*b -- consumed twice: once by
# the validating constructors and once by the mask-level template index.

_Recipe = tuple


def _type_II_recipes_d4(v1: Point, v2: Point) -> list[_Recipe]:
    field = v1.field
    mu = field.mu
    mu2 = mu * mu
    z2 = (field.zero, field.one)
    return [
        ("line", v1),
        ("span", v2, v1 + v2.scale(mu), z2),
        ("span", v2.scale(mu), (v1 + v2).scale(mu2), z2),
        ("span", v2.scale(mu2), (v1 + v2).scale(mu), z2),
        ("span", v1 + v2, v1.scale(mu) + v2.scale(mu2), z2),
    ]


def _d8_recipes(set_type: str, v1: Point, v2: Point, k: FieldElement) -> list[_Recipe]:
    field = v1.field
    kp = [k**j for j in range(7)]
    ktilde = tuple(
        sorted(scale_set(trace_zero_subgroup(field), k.inv()), key=lambda e: e.mask)
    )
    if set_type == "II":
        return [
            ("span", v2 + v1.scale(kp[4]), v1, ktilde),
            ("span", v1.scale(kp[2]), v2.scale(kp[5]) + v1.scale(kp[2]), ktilde),
            ("span", v1.scale(kp[4]), v2.scale(kp[3]) + v1.scale(kp[6]), ktilde),
            ("span", v1.scale(kp[5]), v2.scale(kp[2]) + v1.scale(kp[4]), ktilde),
            ("span", v1.scale(kp[6]), v2.scale(kp[1]) + v1, ktilde),
            ("span", (v1 + v2).scale(kp[1]), v2.scale(kp[6]), ktilde),
            ("span", v2.scale(kp[1]), (v1 + v2).scale(kp[6]), ktilde),
            ("span", v2.scale(kp[4]), v1.scale(kp[3]) + v2.scale(kp[5]), ktilde),
            ("span", v1.scale(kp[2]) + v2.scale(kp[3]), v1 + v2.scale(kp[6]), ktilde),
        ]
    if set_type == "III":
        return [
            ("line", v2),
            ("line", v1 + v2),
            ("line", v1.scale(k) + v2),
            ("span", v2 + v1.scale(kp[2]), v1, ktilde),
            ("span", v1.scale(kp[2]), v2.scale(kp[5]) + v1.scale(kp[4]), ktilde),
            ("span", v1.scale(kp[4]), v2.scale(kp[3]) + v1.scale(kp[5]), ktilde),
            ("span", v1.scale(kp[5]), v2.scale(kp[2]) + v1, ktilde),
            ("span", v1.scale(kp[6]), v2.scale(kp[1]) + v1.scale(kp[4]), ktilde),
            ("span", v1 + v2.scale(kp[5]), v1.scale(kp[5]) + v2.scale(kp[1]), ktilde),
        ]
    if set_type == "IV":
        return [
            ("line", v2),
            ("span", v2 + v1.scale(kp[2]), v1, ktilde),
            ("span", v1.scale(kp[2]), v2.scale(kp[5]) + v1, ktilde),
            ("span", v1.scale(kp[4]), v2.scale(kp[3]) + v1, ktilde),
            ("span", v1.scale(kp[5]), v2.scale(kp[2]) + v1, ktilde),
            ("span", v1.scale(kp[6]), v2.scale(kp[1]) + v1, ktilde),
            ("span", v1.scale(kp[2]) + v2.scale(kp[6]), v1 + v2, ktilde),
            ("span", (v1 + v2).scale(kp[2]), v1 + v2.scale(kp[4]), ktilde),
            ("span", (v1 + v2).scale(kp[5]), v1 + v2.scale(kp[6]), ktilde),
        ]
    raise ValueError(f"unknown set type {set_type!r}")


def _materialize_recipes(field: Field, recipes: list[_Recipe]) -> list[Subgroup]:
    z2 = (field.zero, field.one)
    out = []
    for recipe in recipes:
        if recipe[0] == "line":
            out.append(line(recipe[1]))
        else:
            _, a, b, scalars = recipe
            out.append(affine_span(a, b, z2, scalars))
    return out


def _recipes_mask_key(field: Field, recipes: list[_Recipe]) -> frozenset[tuple[int, ...]]:
    """The frozenset of sorted point-mask tuples the recipes span; no
    validation, for bulk template indexing."""
    n = field.n
    mul = field._mul_mask
    keys = []
    for recipe in recipes:
        if recipe[0] == "line":
            u = recipe[1]
            ux, uy = u.x.mask, u.y.mask
            masks = {mul(ux, c) | mul(uy, c) << n for c in range(field.order)}
        else:
            _, a, b, scalars = recipe
            am = point_to_mask(a)
            bx, by = b.x.mask, b.y.mask
            masks = set()
            for s in scalars:
                tm = mul(bx, s.mask) | mul(by, s.mask) << n
                masks.add(tm)
                masks.add(tm ^ am)
        keys.append(tuple(sorted(masks)))
    return frozenset(keys)


def type_II_set_d4(v1: Point, v2: Point) -> CompleteSet:
    """The five order-4 generators built from a pair with det(v1, v2) = 1."""
    field = v1.field
    if field.order != 4:
        raise ValueError("this constructor is specific to d = 4")
    if det(v1, v2) != field.one:
        raise ValueError("type II at d=4 needs det(v1, v2) = 1")
    gens = _materialize_recipes(field, _type_II_recipes_d4(v1, v2))
    return _set_from_generators("II", v1, v2, gens)


def _require_k_d8(v1: Point, v2: Point) -> FieldElement:
    field = v1.field
    if field.order != 8:
        raise ValueError("this constructor is specific to d = 8")
    k = det(v1, v2)
    if k.is_zero or not field.trace(k).is_zero:
        raise ValueError("det(v1,v2) not in K\\{0}")
    return k


def _d8_set(set_type: str, v1: Point, v2: Point) -> CompleteSet:
    k = _require_k_d8(v1, v2)
    gens = _materialize_recipes(v1.field, _d8_recipes(set_type, v1, v2, k))
    return _set_from_generators(set_type, v1, v2, gens)


def type_II_set_d8(v1: Point, v2: Point) -> CompleteSet:
    return _d8_set("II", v1, v2)


def type_III_set_d8(v1: Point, v2: Point) -> CompleteSet:
    return _d8_set("III", v1, v2)


def type_IV_set_d8(v1: Point, v2: Point) -> CompleteSet:
    return _d8_set("IV", v1, v2)


@dataclass(frozen=True)
class CompleteSetReport:
    cardinality: bool
    extraordinary_supersquares: bool
    orthogonality: bool
    trivial_intersections: bool
    striations: bool
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return (
            self.cardinality
            and self.extraordinary_supersquares
            and self.orthogonality
            and self.trivial_intersections
            and self.striations
        )

    def checks(self) -> dict[str, bool]:
        return {
            "cardinality": self.cardinality,
            "extraordinary_supersquares": self.extraordinary_supersquares,
            "orthogonality": self.orthogonality,
            "trivial_intersections": self.trivial_intersections,
            "striations": self.striations,
        }


def verify_complete_set(c: CompleteSet) -> CompleteSetReport:
    failures: list[str] = []
    d = c.d
    cardinality = len(c.supersquares) == d + 1
    if not cardinality:
        failures.append(f"expected {d + 1} squares, got {len(c.supersquares)}")

    extra_ok = True
    for idx, ss in enumerate(c.supersquares, start=1):
        if not is_supersquare(ss.square):
            extra_ok = False
            failures.append(f"square {idx} is not a supersquare")
        if not is_extraordinary(ss.generator):
            extra_ok = False
            failures.append(f"generator {idx} is not extraordinary")

    orth_ok = True
    for i in range(len(c.supersquares)):
        for j in range(i + 1, len(c.supersquares)):
            if not are_orthogonal(c.supersquares[i].square, c.supersquares[j].square):
                orth_ok = False
                failures.append(f"squares {i + 1} and {j + 1} are not orthogonal")

    inter_ok = True
    for i in range(len(c.supersquares)):
        for j in range(i + 1, len(c.supersquares)):
            gi = c.supersquares[i].generator
            gj = c.supersquares[j].generator
            if not gi.intersects_trivially(gj):
                inter_ok = False
                failures.append(f"generators {i + 1} and {j + 1} share a nonzero point")

    stri_ok = True
    for idx, ss in enumerate(c.supersquares, start=1):
        if not is_physical_striation(ss.square):
            stri_ok = False
            failures.append(f"square {idx} is not a physical striation")

    return CompleteSetReport(
        cardinality, extra_ok, orth_ok, inter_ok, stri_ok, tuple(failures)
    )


def perturb_supersquare(ss: Supersquare, seed: int) -> Square:
    """Swap one point between two distinct non-generator classes: the
    partition and the generator class survive, the coset structure does
    not, so the result is an extraordinary square that is not a
    supersquare."""
    rng = random.Random(seed)
    d = ss.d
    if d < 4:
        raise ValueError("perturbation needs at least two non-generator classes")
    j, k = rng.sample(range(1, d), 2)
    classes = [set(c) for c in ss.square.classes]
    p = rng.choice(sorted(classes[j], key=lambda pt: pt.sort_key))
    q = rng.choice(sorted(classes[k], key=lambda pt: pt.sort_key))
    classes[j].remove(p)
    classes[j].add(q)
    classes[k].remove(q)
    classes[k].add(p)
    return Square(ss.field, classes)


# ---------------------------------------------------------------------------
# Complete-set search: exact cover of the nonzero points by extraordinary
# subgroups.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SearchResult:
    sets: tuple[CompleteSet, ...]
    exhaustive: bool

    def census(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for c in self.sets:
            counts[c.set_type] = counts.get(c.set_type, 0) + 1
        return counts


def complete_set_templates(
    field: Field,
) -> dict[frozenset[tuple[int, ...]], tuple[str, Point, Point]]:
    """Generator-set templates keyed by frozensets of sorted subgroup
    point-mask tuples; first match wins, scanning types in order I, II,
    III, IV over all valid (v1, v2) pairs in canonical point order."""
    templates: dict[frozenset[tuple[int, ...]], tuple[str, Point, Point]] = {}
    points = [p for p in all_points(field) if not p.is_zero]
    e1 = Point(field.one, field.zero)
    e2 = Point(field.zero, field.one)
    lines = _recipes_mask_key(field, [("line", u) for u in points])
    templates[lines] = ("I", e1, e2)

    if field.order == 4:
        for v1 in points:
            for v2 in points:
                if det(v1, v2) != field.one:
                    continue
                key = _recipes_mask_key(field, _type_II_recipes_d4(v1, v2))
                templates.setdefault(key, ("II", v1, v2))
    elif field.order == 8:
        for set_type in ("II", "III", "IV"):
            for v1 in points:
                for v2 in points:
                    k = det(v1, v2)
                    if k.is_zero or not field.trace(k).is_zero:
                        continue
                    key = _recipes_mask_key(field, _d8_recipes(set_type, v1, v2, k))
                    templates.setdefault(key, (set_type, v1, v2))
    return templates


class _Deadline(Exception):
    pass


def _cover_search(
    block_bits: list[int],
    blocks_by_point: dict[int, list[int]],
    want: int,
    full: int,
    deadline: float | None,
    covered: int = 0,
    chosen: tuple[int, ...] = (),
    solutions: list[tuple[int, ...]] | None = None,
) -> list[tuple[int, ...]]:
    if solutions is None:
        solutions = []
    if deadline is not None and time.monotonic() > deadline:
        raise _Deadline
    if covered == full:
        if len(chosen) == want:
            solutions.append(tuple(sorted(chosen)))
        return solutions
    if len(chosen) >= want:
        return solutions
    remaining = full & ~covered
    best: list[int] | None = None
    idx = 0
    while remaining:
        if remaining & 1:
            cands = [i for i in blocks_by_point[idx] if not block_bits[i] & covered]
            if not cands:
                return solutions
            if best is None or len(cands) < len(best):
                best = cands
                if len(cands) == 1:
                    break
        remaining >>= 1
        idx += 1
    assert best is not None
    for i in best:
        _cover_search(
            block_bits,
            blocks_by_point,
            want,
            full,
            deadline,
            covered | block_bits[i],
            chosen + (i,),
            solutions,
        )
    return solutions


def _prepare_cover(blocks: Sequence[tuple[int, ...]], d: int):
    block_bits = []
    for masks in blocks:
        bits = 0
        for m in masks:
            if m:
                bits |= 1 << m
        block_bits.append(bits)
    full = 0
    for m in range(1, d * d):
        full |= 1 << m
    blocks_by_point: dict[int, list[int]] = {m: [] for m in range(d * d)}
    for i, masks in enumerate(blocks):
        for m in masks:
            if m:
                blocks_by_point[m].append(i)
    return block_bits, blocks_by_point, full


def _search_branch(args) -> tuple[list[tuple[int, ...]], bool]:
    blocks, d, first, budget = args
    block_bits, blocks_by_point, full = _prepare_cover(blocks, d)
    deadline = time.monotonic() + budget if budget is not None else None
    solutions: list[tuple[int, ...]] = []
    try:
        _cover_search(
            block_bits,
            blocks_by_point,
            d + 1,
            full,
            deadline,
            block_bits[first],
            (first,),
            solutions,
        )
        return solutions, True
    except _Deadline:
        return solutions, False


def search_complete_sets(
    field: Field, workers: int = 1, time_budget: float | None = None
) -> SearchResult:
    """All sets of d+1 extraordinary subgroups with pairwise trivial
    intersections, deduplicated, canonically ordered, and annotated with
    the matching construction type.  A time budget makes the result
    best-effort; the ``exhaustive`` flag reports whether it was hit."""
    start = time.monotonic()
    deadline = start + time_budget if time_budget is not None else None
    d = field.order

    blocks: list[tuple[int, ...]] = []
    enum_complete = True
    for masks in iter_subgroup_masks(field):
        if deadline is not None and time.monotonic() > deadline:
            enum_complete = False
            break
        if _is_extraordinary_masks(field, masks):
            blocks.append(masks)

    solutions: list[tuple[int, ...]] = []
    search_complete = True
    if workers <= 1:
        block_bits, blocks_by_point, full = _prepare_cover(blocks, d)
        try:
            _cover_search(
                block_bits, blocks_by_point, d + 1, full, deadline, solutions=solutions
            )
        except _Deadline:
            search_complete = False
    else:
        block_bits, blocks_by_point, full = _prepare_cover(blocks, d)
        first_cands = blocks_by_point.get(1, [])
        remaining = None if deadline is None else max(deadline - time.monotonic(), 0.0)
        tasks = [(blocks, d, i, remaining) for i in first_cands]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for sols, complete in pool.map(_search_branch, tasks):
                solutions.extend(sols)
                search_complete = search_complete and complete

    templates = complete_set_templates(field)
    sets = []
    for chosen in set(solutions):
        block_masks = sorted(blocks[i] for i in chosen)
        match = templates.get(frozenset(block_masks))
        gens = sorted(
            (Subgroup.from_masks(field, masks) for masks in block_masks),
            key=lambda s: s.sort_key,
        )
        if match is None:
            sets.append(_set_from_generators("Unclassified", None, None, gens))
        else:
            set_type, v1, v2 = match
            sets.append(_set_from_generators(set_type, v1, v2, gens))
    sets.sort(key=lambda c: tuple(g.sort_key for g in c.generators))
    return SearchResult(tuple(sets), enum_complete and search_complete)

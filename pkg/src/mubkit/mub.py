"""Common eigenbases of commuting translation operators, the class-state
correspondence, exact unbiasedness checks, and three-qubit entanglement
structure.

Everything is computed over the Gaussian integers.  A state is stored as
integer entries plus the squared norm; the physical vector is
entries / sqrt(norm_sq), so orthogonality and unbiasedness reduce to
integer identities (d * |<u,v>|^2 = N_u * N_v for unbiasedness).

Eigenbases come from exact rank-one projectors: for generators g_1..g_n
of an extraordinary subgroup and an eigenvalue choice lambda_j per
generator, the fraction-free product of the factors (1 + conj(lambda_j)
T_(g_j)) has trace 2^n exactly, and any nonzero column is the (content-
reduced) common eigenvector.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Sequence

from .gf2n import FieldBasis, default_selfdual_basis
from .pauli import (
    GaussInt,
    GaussMatrix,
    I_UNIT,
    ONE,
    PauliWord,
    UNITS,
    ZERO,
    gauss_divexact,
    gauss_gcd,
    square_sign,
    translation_operator,
)
from .phasespace import Point, Subgroup, is_extraordinary
from .squares import CompleteSet, Supersquare, verify_complete_set


class ConstructionError(RuntimeError):
    """An exactness certificate failed while building a basis or set."""


def _canonical_unit(z: GaussInt) -> GaussInt:
    """The unit u with u*z in the half-open quadrant re > 0, im >= 0."""
    for u in UNITS:
        w = u * z
        if w.re > 0 and w.im >= 0:
            return u
    raise ValueError("zero has no canonical unit")


def content_reduce(entries: Sequence[GaussInt]) -> tuple[GaussInt, ...]:
    """Divide out the Gaussian gcd and rotate by a unit so the first
    nonzero entry lands in the canonical quadrant."""
    g = ZERO
    for e in entries:
        if not e.is_zero:
            g = e if g.is_zero else gauss_gcd(g, e)
    if g.is_zero:
        raise ValueError("cannot reduce the zero vector")
    reduced = tuple(gauss_divexact(e, g) for e in entries)
    first = next(e for e in reduced if not e.is_zero)
    u = _canonical_unit(first)
    return tuple(u * e for e in reduced)


@dataclass(frozen=True)
class UnnormalizedState:
    """Integer entries with implicit 1/sqrt(norm_sq) normalization."""

    entries: tuple[GaussInt, ...]
    norm_sq: int

    @classmethod
    def from_raw(cls, entries: Sequence[GaussInt]) -> "UnnormalizedState":
        reduced = content_reduce(entries)
        return cls(reduced, sum(e.norm_sq() for e in reduced))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def inner(self, other: "UnnormalizedState") -> GaussInt:
        """<self|other> = sum conj(a_k) b_k."""
        re = im = 0
        for a, b in zip(self.entries, other.entries):
            re += a.re * b.re + a.im * b.im
            im += a.re * b.im - a.im * b.re
        return GaussInt(re, im)

    def proportional_to(self, other: "UnnormalizedState") -> bool:
        """Equal up to a Gaussian-rational factor (exact cross products)."""
        if self.dim != other.dim:
            return False
        ref = next(
            ((a, b) for a, b in zip(self.entries, other.entries) if not a.is_zero or not b.is_zero),
            None,
        )
        if ref is None:
            return True
        ra, rb = ref
        if ra.is_zero or rb.is_zero:
            return False
        return all(
            a * rb == b * ra for a, b in zip(self.entries, other.entries)
        )


def is_unbiased_pair(u: UnnormalizedState, v: UnnormalizedState, d: int) -> bool:
    """d * |<u,v>|^2 = norm_sq(u) * norm_sq(v), as exact integers."""
    if u.dim != d or v.dim != d:
        raise ValueError("states must have dimension d")
    return d * u.inner(v).norm_sq() == u.norm_sq * v.norm_sq


@dataclass(frozen=True)
class EigenvalueAssignment:
    generators: tuple[Point, ...]
    lambdas: tuple[GaussInt, ...]

    @property
    def is_principal(self) -> bool:
        return all(lam in (ONE, I_UNIT) for lam in self.lambdas)


@dataclass(frozen=True)
class MubBasis:
    source: Subgroup
    expansion_basis: FieldBasis
    states: tuple[UnnormalizedState, ...]
    assignments: tuple[EigenvalueAssignment, ...]
    operator_words: tuple[PauliWord, ...]
    class_of_state: tuple[int, ...] | None = None

    @property
    def d(self) -> int:
        return self.source.order

    @property
    def ray_index(self) -> int:
        return next(
            i for i, a in enumerate(self.assignments) if a.is_principal
        )

    @property
    def ray_state(self) -> UnnormalizedState:
        return self.states[self.ray_index]


def common_eigenbasis(
    a1: Subgroup, expansion_basis: FieldBasis, column: int | None = None
) -> MubBasis:
    """The d common eigenvectors of the translation operators of a1,
    one per eigenvalue assignment over canonical generators.

    Each eigenvector is extracted from the exact rank-one projector for
    its assignment; ``column`` overrides which projector column is taken
    (falling back to the first nonzero one), which only changes the
    extracted representative by a scalar.
    """
    field = a1.field
    d = field.order
    n = field.n
    if a1.order != d:
        raise ValueError(f"need an order-{d} subgroup")
    if not is_extraordinary(a1):
        raise ValueError("subgroup is not extraordinary: operators do not commute")
    gens = a1.basis()
    ops = [translation_operator(g, expansion_basis) for g in gens]
    principals = [I_UNIT if square_sign(op) < 0 else ONE for op in ops]
    ident = GaussMatrix.identity(d)
    target_trace = GaussInt(1 << n, 0)

    states: list[UnnormalizedState] = []
    assignments: list[EigenvalueAssignment] = []
    for s in range(d):
        lambdas = tuple(
            -principals[j] if s >> j & 1 else principals[j] for j in range(n)
        )
        num = ident
        for op, lam in zip(ops, lambdas):
            num = num @ (ident + op.matrix.scale(lam.conj()))
        if num.trace() != target_trace:
            raise ConstructionError(
                f"projector for assignment {s} has rank != 1; "
                f"generators of {a1!r} do not commute"
            )
        col = None
        if column is not None:
            cand = num.column(column)
            if any(not e.is_zero for e in cand):
                col = cand
        if col is None:
            col = next(
                num.column(j)
                for j in range(d)
                if any(not e.is_zero for e in num.column(j))
            )
        state = UnnormalizedState.from_raw(col)
        for op, lam in zip(ops, lambdas):
            lhs = op.matrix.times_vector(state.entries)
            rhs = tuple(lam * e for e in state.entries)
            if lhs != rhs:
                raise ConstructionError(
                    f"extracted column is not a common eigenvector for {op.point}"
                )
        states.append(state)
        assignments.append(EigenvalueAssignment(gens, lambdas))

    for i in range(d):
        for j in range(i + 1, d):
            if not states[i].inner(states[j]).is_zero:
                raise ConstructionError(f"states {i} and {j} are not orthogonal")

    words = tuple(
        translation_operator(p, expansion_basis).word for p in a1.nonzero_points()
    )
    return MubBasis(
        source=a1,
        expansion_basis=expansion_basis,
        states=tuple(states),
        assignments=tuple(assignments),
        operator_words=words,
    )


def apply_correspondence(basis: MubBasis, ss: Supersquare) -> MubBasis:
    """Fix the class-state bijection: the all-principal eigenvector is the
    ray state of class 1, and class k maps to the state its canonical
    representative translates the ray state onto."""
    if ss.generator != basis.source:
        raise ValueError("supersquare generator differs from the basis source")
    ray_idx = basis.ray_index
    ray = basis.states[ray_idx]
    mapping = [ray_idx]
    for rep in ss.coset_reps:
        op = translation_operator(rep, basis.expansion_basis)
        translated = UnnormalizedState.from_raw(op.matrix.times_vector(ray.entries))
        matches = [
            i for i, st in enumerate(basis.states) if st.proportional_to(translated)
        ]
        if len(matches) != 1:
            raise ConstructionError(
                f"translating the ray state by {rep} matches {len(matches)} states"
            )
        mapping.append(matches[0])
    if len(set(mapping)) != len(mapping):
        raise ConstructionError("class-state correspondence is not a bijection")
    return replace(basis, class_of_state=tuple(mapping))


@dataclass(frozen=True)
class MubSet:
    bases: tuple[MubBasis, ...]
    source_set: CompleteSet

    @property
    def d(self) -> int:
        return self.source_set.d


def build_mub_set(
    c: CompleteSet, expansion_basis: FieldBasis | None = None
) -> MubSet:
    """Run the eigenbasis construction and correspondence over every
    square of a verified complete set, then certify orthogonality within
    bases and unbiasedness across them, all exactly."""
    field = c.field
    if expansion_basis is None:
        expansion_basis = default_selfdual_basis(field)
    report = verify_complete_set(c)
    if not report.passed:
        raise ValueError(
            "complete set fails verification: " + "; ".join(report.failures)
        )
    bases = tuple(
        apply_correspondence(common_eigenbasis(ss.generator, expansion_basis), ss)
        for ss in c.supersquares
    )
    d = field.order
    for bi in range(len(bases)):
        for bj in range(bi + 1, len(bases)):
            for si, u in enumerate(bases[bi].states):
                for sj, v in enumerate(bases[bj].states):
                    if not is_unbiased_pair(u, v, d):
                        raise ConstructionError(
                            f"bases {bi + 1} and {bj + 1} are biased at states "
                            f"({si}, {sj})"
                        )
    return MubSet(bases, c)


# ---------------------------------------------------------------------------
# Three-qubit entanglement structure
# ---------------------------------------------------------------------------

BIPARTITIONS = ("1|23", "2|13", "3|12")

_RESHAPES = {
    "1|23": lambda b: (b >> 2 & 1, b & 3),
    "2|13": lambda b: (b >> 1 & 1, (b >> 2 & 1) << 1 | (b & 1)),
    "3|12": lambda b: (b & 1, b >> 1),
}


def _gauss_rank(rows: list[list[GaussInt]]) -> int:
    """Fraction-free elimination rank over the Gaussian rationals."""
    rows = [list(r) for r in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        pivot = next(
            (r for r in range(rank, len(rows)) if not rows[r][c].is_zero), None
        )
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(rank + 1, len(rows)):
            if rows[r][c].is_zero:
                continue
            factor_lead = rows[rank][c]
            factor_this = rows[r][c]
            rows[r] = [
                factor_lead * rows[r][j] - factor_this * rows[rank][j]
                for j in range(cols)
            ]
        rank += 1
    return rank


def schmidt_rank(u: UnnormalizedState, bipartition: str) -> int:
    """Exact rank of the 2x4 reshape of a three-qubit state across the cut;
    qubit 1 is the most significant index bit."""
    if u.dim != 8:
        raise ValueError("schmidt_rank supports three-qubit states only")
    if bipartition not in _RESHAPES:
        raise ValueError(f"bipartition must be one of {BIPARTITIONS}")
    pos = _RESHAPES[bipartition]
    mat = [[ZERO] * 4 for _ in range(2)]
    for b, e in enumerate(u.entries):
        r, c = pos(b)
        mat[r][c] = e
    return _gauss_rank(mat)


def rank_profile(u: UnnormalizedState) -> tuple[int, int, int]:
    return tuple(schmidt_rank(u, bp) for bp in BIPARTITIONS)  # type: ignore[return-value]


def two_qubit_rank(u: UnnormalizedState) -> int:
    """Rank across the single 1|2 cut of a two-qubit state: 1 means
    product, 2 means entangled.  Informational output only."""
    if u.dim != 4:
        raise ValueError("two_qubit_rank supports two-qubit states only")
    rows = [[u.entries[0], u.entries[1]], [u.entries[2], u.entries[3]]]
    return _gauss_rank(rows)


class Separability(enum.Enum):
    FACTORIZED = "factorized"
    BISEPARABLE = "biseparable"
    NONSEPARABLE = "nonseparable"


def classify_basis(basis: MubBasis) -> Separability:
    """Classify by the ray state's rank profile across the three cuts,
    after asserting every state in the basis shares that profile."""
    if basis.d != 8:
        raise ValueError("entanglement classification is defined for d = 8")
    profiles = {rank_profile(st) for st in basis.states}
    if len(profiles) != 1:
        raise ConstructionError(
            f"basis states have mixed rank profiles: {sorted(profiles)}"
        )
    profile = rank_profile(basis.ray_state)
    if all(r == 1 for r in profile):
        return Separability.FACTORIZED
    if all(r == 2 for r in profile):
        return Separability.NONSEPARABLE
    return Separability.BISEPARABLE


@dataclass(frozen=True)
class EntanglementStructure:
    n_f: int
    n_b: int
    n_ns: int

    def astuple(self) -> tuple[int, int, int]:
        return (self.n_f, self.n_b, self.n_ns)

    def __str__(self) -> str:
        return f"({self.n_f},{self.n_b},{self.n_ns})"


def structure(m: MubSet) -> EntanglementStructure:
    """Counts of factorized, biseparable, and nonseparable bases."""
    if m.d != 8:
        raise ValueError("entanglement structure is defined for d = 8")
    counts = {kind: 0 for kind in Separability}
    for basis in m.bases:
        counts[classify_basis(basis)] += 1
    return EntanglementStructure(
        counts[Separability.FACTORIZED],
        counts[Separability.BISEPARABLE],
        counts[Separability.NONSEPARABLE],
    )

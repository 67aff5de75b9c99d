"""Phase-space points, subgroups, and the extraordinary predicate."""

import pytest

from mubkit import (
    Field,
    Point,
    Subgroup,
    affine_span,
    all_points,
    det,
    enumerate_extraordinary_subgroups,
    enumerate_subgroups,
    extraordinary_subgroups_from_forms,
    is_extraordinary,
    line,
    scale_set,
    trace_zero_subgroup,
    zero_point,
)

import refdata


def gaussian_binomial_2(m, k):
    num = den = 1
    for i in range(k):
        num *= 2**m - 2**i
        den *= 2**k - 2**i
    return num // den


def test_point_basics(f4, f8):
    p = refdata.parse_point(f4, ("1", "m2"))
    q = refdata.parse_point(f4, ("m", "1"))
    assert (p + q) == refdata.parse_point(f4, ("m2", "m"))
    assert p.scale(f4.zero).is_zero
    with pytest.raises(ValueError):
        Point(f4.one, f8.one)


def test_det_examples(f4, f8):
    assert det(
        refdata.parse_point(f4, ("1", "m2")), refdata.parse_point(f4, ("1", "m"))
    ) == f4.one
    for v in all_points(f4):
        assert det(v, v).is_zero
    assert det(
        refdata.parse_point(f8, ("1", "m")), refdata.parse_point(f8, ("m3", "m2"))
    ) == f8.mu


def test_det_bilinear_and_alternating_d4(f4):
    pts = all_points(f4)
    for u in pts:
        for v in pts:
            for w in pts:
                assert det(u + v, w) == det(u, w) + det(v, w)


def test_trace_zero_subgroup(f4, f8):
    assert trace_zero_subgroup(f8) == {
        f8.zero,
        f8.mu,
        f8.from_power(2),
        f8.from_power(4),
    }
    assert trace_zero_subgroup(f4) == {f4.zero, f4.one}
    f16 = Field(4)
    k16 = trace_zero_subgroup(f16)
    assert len(k16) == 8
    assert all(a + b in k16 for a in k16 for b in k16)


def test_scale_set(f8):
    kset = trace_zero_subgroup(f8)
    k = f8.mu
    scaled = scale_set(kset, k.inv())
    assert scaled == {f8.zero, f8.one, k, k**3}
    assert scale_set(kset, f8.one) == kset
    k2 = f8.from_power(2)
    # oracle: divide each element directly
    assert scale_set(kset, k2.inv()) == {a * k2.inv() for a in kset}
    assert scale_set(kset, k2.inv()) == {f8.zero, f8.one, k2, k2**3}
    with pytest.raises(ValueError):
        scale_set(kset, f8.zero)


def test_scaled_trace_zero_set_is_closed(f8):
    kset = trace_zero_subgroup(f8)
    for k in kset:
        if k.is_zero:
            continue
        scaled = scale_set(kset, k.inv())
        assert all(a + b in scaled for a in scaled for b in scaled)


def test_subgroup_validation(f4):
    zero = zero_point(f4)
    p = refdata.parse_point(f4, ("1", "0"))
    with pytest.raises(ValueError):
        Subgroup([p])  # no origin
    with pytest.raises(ValueError):
        Subgroup([zero, p, refdata.parse_point(f4, ("m", "0"))])  # not closed
    sub = Subgroup.span([p])
    assert sub.order == 2
    assert zero in sub


def test_line(f4, f8):
    vertical = line(refdata.parse_point(f4, ("0", "1")))
    assert set(vertical.points) == {
        refdata.parse_point(f4, ("0", t)) for t in ("0", "1", "m", "m2")
    }
    diag = line(refdata.parse_point(f8, ("1", "m")))
    assert diag.order == 8
    assert set(diag.points) == {
        Point(c, c * f8.mu) for c in f8.elements()
    }
    distinct = {line(u) for u in all_points(f4) if not u.is_zero}
    assert len(distinct) == 5
    with pytest.raises(ValueError):
        line(zero_point(f4))


def test_affine_span(f4, f8):
    a = refdata.parse_point(f4, ("1", "m"))
    span = affine_span(a, a, (f4.zero, f4.one), (f4.zero,))
    assert set(span.points) == {zero_point(f4), a}

    # two-generator order-8 subgroup from the scaled trace-zero scalars
    v1 = refdata.parse_point(f8, ("1", "m"))
    a8 = refdata.parse_point(f8, ("m6", "m3"))
    ktilde = scale_set(trace_zero_subgroup(f8), f8.mu.inv())
    sub = affine_span(a8, v1, (f8.zero, f8.one), ktilde)
    assert sub.order == 8
    assert is_extraordinary(sub)

    # non-closed scalar sets are rejected
    with pytest.raises(ValueError):
        affine_span(
            refdata.parse_point(f4, ("1", "0")),
            refdata.parse_point(f4, ("0", "1")),
            (f4.zero, f4.one),
            (f4.zero, f4.one, f4.mu),
        )


def test_is_extraordinary(f4, f8):
    for u in all_points(f4):
        if not u.is_zero:
            assert is_extraordinary(line(u))
    for u in all_points(f8):
        if not u.is_zero:
            assert is_extraordinary(line(u))
    a1 = Subgroup.span(
        [refdata.parse_point(f4, ("1", "m2")), refdata.parse_point(f4, ("m", "1"))]
    )
    assert is_extraordinary(a1)
    bad = Subgroup.span(
        [refdata.parse_point(f4, ("1", "0")), refdata.parse_point(f4, ("0", "m"))]
    )
    assert not is_extraordinary(bad)


def test_enumerate_subgroups_counts(f4, f8):
    subs4 = enumerate_subgroups(f4)
    assert len(subs4) == gaussian_binomial_2(4, 2) == 35
    subs8 = enumerate_subgroups(f8)
    assert len(subs8) == gaussian_binomial_2(6, 3) == 1395
    assert len(set(subs4)) == 35
    assert subs4 == sorted(subs4, key=lambda s: s.sort_key)
    assert all(s.order == 4 for s in subs4)
    with pytest.raises(ValueError):
        enumerate_subgroups(f4, order=8)


def test_enumerate_extraordinary_subgroups(f4, f8):
    extra4 = enumerate_extraordinary_subgroups(f4)
    for u in all_points(f4):
        if not u.is_zero:
            assert line(u) in extra4
    bad = Subgroup.span(
        [refdata.parse_point(f4, ("1", "0")), refdata.parse_point(f4, ("0", "m"))]
    )
    assert bad not in extra4

    # the closed forms generate exactly the predicate-defined collection
    extra8 = enumerate_extraordinary_subgroups(f8)
    assert set(extra8) == extraordinary_subgroups_from_forms(f8)


def test_subgroup_basis(f8):
    sub = line(refdata.parse_point(f8, ("1", "m")))
    basis = sub.basis()
    assert len(basis) == 3
    assert Subgroup.span(basis) == sub


def test_type_constructed_generators_are_enumerated(f8, d8_type_ii_set):
    from mubkit import type_I_set, type_III_set_d8, type_IV_set_d8

    v1 = refdata.parse_point(f8, refdata.REF_D8_TYPE_II_V1)
    v2 = refdata.parse_point(f8, refdata.REF_D8_TYPE_II_V2)
    enumerated = set(enumerate_extraordinary_subgroups(f8))
    for cset in (
        type_I_set(v1, v2),
        d8_type_ii_set,
        type_III_set_d8(v1, v2),
        type_IV_set_d8(v1, v2),
    ):
        for gen in cset.generators:
            assert gen in enumerated

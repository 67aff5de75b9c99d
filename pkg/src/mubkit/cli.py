"""Command-line surface.

Subcommands:

    mubkit field-info --d 8
    mubkit squares gen --d 4 --type II --v1 1,m2 --v2 1,m
    mubkit squares verify SET.json
    mubkit squares classify SET.json
    mubkit squares search --d 4 --workers 4
    mubkit mub gen --d 8 --type II
    mubkit mub verify MUBS.json
    mubkit mub structure --d 8 --type II

Exit codes: 0 pass, 1 verification failure, 2 usage or parse error,
3 incomplete (budget-limited) search.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .gf2n import Field, FieldBasis, default_selfdual_basis, field_for_dimension, is_selfdual
from .mub import (
    build_mub_set,
    classify_basis,
    is_unbiased_pair,
    rank_profile,
    structure,
    two_qubit_rank,
)
from .phasespace import Point, Subgroup, is_extraordinary, zero_point, trace_zero_subgroup
from .serialize import (
    complete_set_to_json,
    dumps_canonical,
    mub_set_to_json,
    square_to_json,
    squares_payload_from_json,
    state_from_json,
)
from .squares import (
    CompleteSet,
    Square,
    are_orthogonal,
    classify,
    is_physical_striation,
    is_supersquare,
    perturb_supersquare,
    render_ascii,
    search_complete_sets,
    type_I_set,
    type_II_set_d4,
    type_II_set_d8,
    type_III_set_d8,
    type_IV_set_d8,
)

PASS, FAIL, USAGE, INCOMPLETE = 0, 1, 2, 3

DEFAULT_PAIRS = {
    (4, "I"): ("1,0", "0,1"),
    (4, "II"): ("1,m2", "1,m"),
    (8, "I"): ("1,0", "0,1"),
    (8, "II"): ("1,m", "m3,m2"),
    (8, "III"): ("1,m", "m3,m2"),
    (8, "IV"): ("1,m", "m3,m2"),
}


class UsageError(Exception):
    pass


def _parse_point(field: Field, text: str) -> Point:
    try:
        xs, ys = text.split(",")
        return Point(field.parse(xs), field.parse(ys))
    except (ValueError, KeyError) as exc:
        raise UsageError(f"cannot parse point {text!r}: {exc}") from None


def _parse_basis(field: Field, text: str | None) -> FieldBasis:
    if text is None:
        return default_selfdual_basis(field)
    try:
        basis = FieldBasis(tuple(field.parse(tok) for tok in text.split(",")))
    except ValueError as exc:
        raise UsageError(f"cannot parse basis {text!r}: {exc}") from None
    if not is_selfdual(basis):
        raise UsageError(f"basis {text!r} is not selfdual")
    return basis


def _build_set(args: argparse.Namespace) -> CompleteSet:
    d = args.d
    set_type = args.type
    if d not in (4, 8):
        raise UsageError("set construction supports d in {4, 8}")
    if set_type in ("III", "IV") and d != 8:
        raise UsageError(f"type {set_type} is only defined for d = 8")
    defaults = DEFAULT_PAIRS[(d, set_type)]
    field = field_for_dimension(d)
    v1 = _parse_point(field, args.v1 or defaults[0])
    v2 = _parse_point(field, args.v2 or defaults[1])
    try:
        if set_type == "I":
            return type_I_set(v1, v2)
        if d == 4:
            return type_II_set_d4(v1, v2)
        return {"II": type_II_set_d8, "III": type_III_set_d8, "IV": type_IV_set_d8}[
            set_type
        ](v1, v2)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(args: argparse.Namespace, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- field-info -------------------------------------------------------------


def cmd_field_info(args: argparse.Namespace) -> int:
    field = field_for_dimension(args.d)
    basis = default_selfdual_basis(field)
    kset = sorted(trace_zero_subgroup(field), key=lambda e: e.mask)
    if args.format == "json":
        payload = {
            "n": field.n,
            "poly": field.poly,
            "elements": [
                {"display": str(e), "mask": e.mask, "trace": field.trace(e).mask}
                for e in field.in_dlog_order()
            ],
            "trace_zero": [e.mask for e in kset],
            "selfdual_basis": [e.mask for e in basis],
            "selfdual_verified": is_selfdual(basis),
        }
        _emit(args, dumps_canonical(payload))
        return PASS
    lines = [
        f"GF(2^{field.n}), modulus 0b{field.poly:b}, d = {field.order}",
        "element  mask  trace",
    ]
    for e in field.in_dlog_order():
        lines.append(f"{str(e):>7}  {e.mask:>4}  {field.trace(e).mask:>5}")
    lines.append(
        "trace-zero set K = {" + ", ".join(str(e) for e in kset) + "}"
    )
    lines.append(
        f"selfdual basis {basis}: "
        + ("verified" if is_selfdual(basis) else "NOT selfdual")
    )
    _emit(args, "\n".join(lines) + "\n")
    return PASS


# -- squares ----------------------------------------------------------------


def cmd_squares_gen(args: argparse.Namespace) -> int:
    cset = _build_set(args)
    if args.perturb:
        perturbed = perturb_supersquare(cset.supersquares[0], args.seed)
        if args.format == "json":
            _emit(args, dumps_canonical(square_to_json(perturbed)))
        else:
            _emit(args, render_ascii(perturbed) + "\n")
        return PASS
    if args.format == "json":
        _emit(args, dumps_canonical(complete_set_to_json(cset)))
        return PASS
    chunks = []
    for idx, ss in enumerate(cset.supersquares, start=1):
        kind = classify(ss.square).value
        chunks.append(f"square {idx} ({kind}), generator class marked with *")
        chunks.append(render_ascii(ss.square))
        chunks.append("")
    _emit(args, "\n".join(chunks))
    return PASS


def _verify_square(square: Square) -> tuple[dict[str, bool], list[str]]:
    failures: list[str] = []
    checks: dict[str, bool] = {}
    zero_class = square.classes[square.label_of(zero_point(square.field)) - 1]
    try:
        sub = Subgroup(zero_class)
        checks["class1_subgroup"] = True
    except ValueError as exc:
        sub = None
        checks["class1_subgroup"] = False
        failures.append(f"origin class is not a subgroup: {exc}")
    checks["class1_extraordinary"] = sub is not None and is_extraordinary(sub)
    if not checks["class1_extraordinary"] and sub is not None:
        failures.append("origin class is not extraordinary")
    checks["supersquare"] = is_supersquare(square)
    if not checks["supersquare"]:
        failures.append("square is not a supersquare")
    checks["physical_striation"] = is_physical_striation(square)
    if not checks["physical_striation"]:
        failures.append("square is not a physical striation")
    return checks, failures


def _verify_set(
    set_type: str, squares: list[Square]
) -> tuple[dict[str, bool], list[str]]:
    failures: list[str] = []
    d = squares[0].d
    checks = {"cardinality": len(squares) == d + 1}
    if not checks["cardinality"]:
        failures.append(f"expected {d + 1} squares, got {len(squares)}")
    per_square = True
    striation = True
    subs: list[Subgroup | None] = []
    for i, sq in enumerate(squares, start=1):
        zero_class = sq.classes[sq.label_of(zero_point(sq.field)) - 1]
        try:
            sub = Subgroup(zero_class)
        except ValueError:
            sub = None
        subs.append(sub)
        if sub is None or not is_supersquare(sq) or not is_extraordinary(sub):
            per_square = False
            failures.append(f"square {i} is not an extraordinary supersquare")
        if not is_physical_striation(sq):
            striation = False
            failures.append(f"square {i} fails the striation check")
    checks["extraordinary_supersquares"] = per_square
    checks["striations"] = striation
    orth = True
    inter = True
    for i in range(len(squares)):
        for j in range(i + 1, len(squares)):
            if not are_orthogonal(squares[i], squares[j]):
                orth = False
                failures.append(f"squares {i + 1} and {j + 1} are not orthogonal")
            if subs[i] is not None and subs[j] is not None:
                if not subs[i].intersects_trivially(subs[j]):
                    inter = False
                    failures.append(
                        f"generators {i + 1} and {j + 1} share a nonzero point"
                    )
    checks["orthogonality"] = orth
    checks["trivial_intersections"] = inter
    return checks, failures


def _report(args: argparse.Namespace, checks: dict[str, bool], failures: list[str]) -> int:
    ok = all(checks.values())
    if args.format == "json":
        _emit(args, dumps_canonical({"checks": checks, "failures": failures, "pass": ok}))
    else:
        lines = [f"{name}: {'PASS' if value else 'FAIL'}" for name, value in checks.items()]
        lines += [f"  - {f}" for f in failures]
        lines.append("overall: " + ("PASS" if ok else "FAIL"))
        _emit(args, "\n".join(lines) + "\n")
    return PASS if ok else FAIL


def _load_payload(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return squares_payload_from_json(data)


def cmd_squares_verify(args: argparse.Namespace) -> int:
    kind, payload = _load_payload(args.input)
    if kind == "square":
        checks, failures = _verify_square(payload)
    else:
        set_type, _v1, _v2, squares = payload
        checks, failures = _verify_set(set_type, squares)
    return _report(args, checks, failures)


def cmd_squares_classify(args: argparse.Namespace) -> int:
    kind, payload = _load_payload(args.input)
    squares = [payload] if kind == "square" else payload[3]
    kinds = [classify(sq).value for sq in squares]
    if args.format == "json":
        _emit(args, dumps_canonical({"classifications": kinds}))
    else:
        _emit(args, "\n".join(kinds) + "\n")
    return PASS


def cmd_squares_search(args: argparse.Namespace) -> int:
    field = field_for_dimension(args.d)
    result = search_complete_sets(
        field, workers=args.workers, time_budget=args.time_budget
    )
    payload = {
        "d": args.d,
        "exhaustive": result.exhaustive,
        "census": result.census(),
        "sets": [complete_set_to_json(c) for c in result.sets],
    }
    if args.format == "json":
        _emit(args, dumps_canonical(payload))
    else:
        lines = [f"d={args.d} complete sets: {len(result.sets)}"]
        for name, count in sorted(result.census().items()):
            lines.append(f"  type {name}: {count}")
        lines.append("exhaustive: " + ("yes" if result.exhaustive else "no (budget hit)"))
        _emit(args, "\n".join(lines) + "\n")
    return PASS if result.exhaustive else INCOMPLETE


# -- mub ---------------------------------------------------------------------


def cmd_mub_gen(args: argparse.Namespace) -> int:
    cset = _build_set(args)
    field = cset.field
    basis = _parse_basis(field, args.basis)
    mubs = build_mub_set(cset, basis)
    triple = structure(mubs).astuple() if field.order == 8 else None
    if args.format == "json":
        _emit(args, dumps_canonical(mub_set_to_json(mubs, triple)))
        return PASS
    lines = []
    for idx, b in enumerate(mubs.bases, start=1):
        words = "; ".join(str(w) for w in b.operator_words)
        lines.append(f"basis {idx}: operators {words}")
        lines.append(f"  class->state: {list(b.class_of_state or ())}")
        if field.order == 8:
            lines.append(f"  entanglement: {classify_basis(b).value}")
        else:
            kind = "entangled" if two_qubit_rank(b.ray_state) == 2 else "product"
            lines.append(f"  entanglement: {kind}")
        for st in b.states:
            entries = ", ".join(str(e) for e in st.entries)
            lines.append(f"  ({entries}) / sqrt({st.norm_sq})")
    lines.append("unbiasedness: verified exactly")
    if triple is not None:
        lines.append(f"structure (n_f,n_b,n_ns): {triple}")
    _emit(args, "\n".join(lines) + "\n")
    return PASS


def cmd_mub_verify(args: argparse.Namespace) -> int:
    with open(args.input, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        d = int(data["d"])
        bases = [
            [state_from_json(s) for s in basis["states"]] for basis in data["bases"]
        ]
        maps = [basis.get("class_of_state") for basis in data["bases"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed MUB payload: {exc}") from None
    failures: list[str] = []
    checks: dict[str, bool] = {}
    checks["cardinality"] = len(bases) == d + 1
    if not checks["cardinality"]:
        failures.append(f"expected {d + 1} bases, got {len(bases)}")
    norm_ok = True
    for bi, states in enumerate(bases, start=1):
        for si, st in enumerate(states):
            recomputed = sum(e.norm_sq() for e in st.entries)
            if st.norm_sq != recomputed or recomputed == 0:
                norm_ok = False
                failures.append(f"basis {bi} state {si} has a bad norm_sq")
    checks["norms"] = norm_ok
    orth_ok = True
    for bi, states in enumerate(bases, start=1):
        for i in range(len(states)):
            for j in range(i + 1, len(states)):
                if not states[i].inner(states[j]).is_zero:
                    orth_ok = False
                    failures.append(f"basis {bi} states {i},{j} not orthogonal")
    checks["orthogonality"] = orth_ok
    unb_ok = True
    for bi in range(len(bases)):
        for bj in range(bi + 1, len(bases)):
            for i, u in enumerate(bases[bi]):
                for j, v in enumerate(bases[bj]):
                    if not is_unbiased_pair(u, v, d):
                        unb_ok = False
                        failures.append(
                            f"bases {bi + 1},{bj + 1} biased at states ({i},{j})"
                        )
    checks["unbiasedness"] = unb_ok
    map_ok = all(
        m is not None and sorted(m) == list(range(d)) for m in maps
    )
    checks["class_maps"] = map_ok
    if not map_ok:
        failures.append("some class->state map is not a bijection")
    if "structure" in data and d == 8:
        profiles = [
            {rank_profile(st) for st in states} for states in bases
        ]
        triple = [0, 0, 0]
        hom_ok = all(len(p) == 1 for p in profiles)
        if hom_ok:
            for p in profiles:
                ranks = next(iter(p))
                if all(r == 1 for r in ranks):
                    triple[0] += 1
                elif all(r == 2 for r in ranks):
                    triple[2] += 1
                else:
                    triple[1] += 1
        checks["structure"] = hom_ok and triple == list(data["structure"])
        if not checks["structure"]:
            failures.append(f"structure mismatch: recomputed {triple}")
    return _report(args, checks, failures)


def cmd_mub_structure(args: argparse.Namespace) -> int:
    if args.d != 8:
        raise UsageError("entanglement structure is defined for d = 8")
    cset = _build_set(args)
    basis = _parse_basis(cset.field, args.basis)
    mubs = build_mub_set(cset, basis)
    triple = structure(mubs).astuple()
    if args.format == "json":
        kinds = [classify_basis(b).value for b in mubs.bases]
        _emit(args, dumps_canonical({"structure": list(triple), "bases": kinds}))
    else:
        lines = [
            f"basis {i}: {classify_basis(b).value}"
            for i, b in enumerate(mubs.bases, start=1)
        ]
        lines.append(f"structure (n_f,n_b,n_ns): {triple}")
        _emit(args, "\n".join(lines) + "\n")
    return PASS


# -- parser -------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser, with_type: bool = True) -> None:
    parser.add_argument("--d", type=int, choices=(4, 8, 16, 32), default=4)
    if with_type:
        parser.add_argument("--type", choices=("I", "II", "III", "IV"), default="II")
        parser.add_argument("--v1", help="point as 'x,y' (mu-power tokens or bitmasks)")
        parser.add_argument("--v2", help="point as 'x,y' (mu-power tokens or bitmasks)")
    parser.add_argument("--format", choices=("json", "ascii"), default="ascii")
    parser.add_argument("--out", help="write output to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mubkit",
        description="Exact extraordinary supersquares and mutually unbiased bases.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_field = sub.add_parser("field-info", help="element, trace, and basis tables")
    _add_common(p_field, with_type=False)
    p_field.set_defaults(func=cmd_field_info)

    p_squares = sub.add_parser("squares", help="complete-set construction and checks")
    squares_sub = p_squares.add_subparsers(dest="subcommand", required=True)

    p_gen = squares_sub.add_parser("gen", help="build a complete set")
    _add_common(p_gen)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument(
        "--perturb",
        action="store_true",
        help="emit a seeded label-perturbed square instead (negative-test input)",
    )
    p_gen.set_defaults(func=cmd_squares_gen)

    p_verify = squares_sub.add_parser("verify", help="verify a square or set file")
    p_verify.add_argument("input")
    p_verify.add_argument("--format", choices=("json", "ascii"), default="ascii")
    p_verify.add_argument("--out")
    p_verify.set_defaults(func=cmd_squares_verify)

    p_classify = squares_sub.add_parser("classify", help="Latin-type classification")
    p_classify.add_argument("input")
    p_classify.add_argument("--format", choices=("json", "ascii"), default="ascii")
    p_classify.add_argument("--out")
    p_classify.set_defaults(func=cmd_squares_classify)

    p_search = squares_sub.add_parser("search", help="enumerate all complete sets")
    _add_common(p_search, with_type=False)
    p_search.add_argument(
        "--workers",
        type=int,
        default=int(os.environ.get("MUBKIT_WORKERS", "1")),
    )
    p_search.add_argument("--time-budget", type=float, default=None)
    p_search.set_defaults(func=cmd_squares_search, format="json")

    p_mub = sub.add_parser("mub", help="mutually unbiased bases")
    mub_sub = p_mub.add_subparsers(dest="subcommand", required=True)

    p_mgen = mub_sub.add_parser("gen", help="build the MUB set of a complete set")
    _add_common(p_mgen)
    p_mgen.add_argument("--basis", help="selfdual basis as comma-separated tokens")
    p_mgen.set_defaults(func=cmd_mub_gen)

    p_mverify = mub_sub.add_parser("verify", help="re-verify an emitted MUB file")
    p_mverify.add_argument("input")
    p_mverify.add_argument("--format", choices=("json", "ascii"), default="ascii")
    p_mverify.add_argument("--out")
    p_mverify.set_defaults(func=cmd_mub_verify)

    p_mstruct = mub_sub.add_parser("structure", help="three-qubit entanglement census")
    _add_common(p_mstruct)
    p_mstruct.add_argument("--basis", help="selfdual basis as comma-separated tokens")
    p_mstruct.set_defaults(func=cmd_mub_structure, d=8)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (json.JSONDecodeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()

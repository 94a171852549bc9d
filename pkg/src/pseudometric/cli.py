"""Command-line front end.

Subcommands cover the whole library: axiom validation, metric reflection,
topology queries, isometry and pseudoisometry search, superspace class
membership, both gluing constructions, and the randomized invariant suites.

Exit codes: 0 success / predicate true / witness found; 1 predicate false /
no witness / property refuted; 2 invalid input; 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .constructions import Embedding, completion_glue, glue_zero_point, in_cec, is_superspace
from .core import PointMap, Report, Space, format_dist, is_metric
from .document import DocumentError, emit_document, load_space
from .fuzz import SUITES, run_fuzz
from .morphisms import (
    ResourceLimitError,
    are_pseudoisometric,
    brute_force_pseudoisometry,
    find_isometry,
)
from .reflection import metric_reflection
from .topology import boundary, closure, interior, is_closed, is_open


def _require_valid(space: Space, name: str) -> None:
    report = space.validate()
    if not report.ok:
        raise DocumentError(
            f"not a pseudometric space ({report.violations[0]})", name
        )


def _parse_labels(space: Space, text: str) -> frozenset[int]:
    if not text:
        return frozenset()
    return frozenset(space.index(lab.strip()) for lab in text.split(","))


def _parse_embedding(sub: Space, sup: Space, text: str | None) -> PointMap:
    if text is None:
        return PointMap(sub, sup, tuple(sup.index(lab) for lab in sub.labels))
    images = [-1] * sub.n
    for piece in text.split(","):
        if "=" not in piece:
            raise DocumentError(f"embedding entry {piece!r} is not 'from=to'", "--embedding")
        src, dst = piece.split("=", 1)
        images[sub.index(src.strip())] = sup.index(dst.strip())
    missing = [sub.labels[i] for i in range(sub.n) if images[i] < 0]
    if missing:
        raise DocumentError(f"embedding misses points: {', '.join(missing)}", "--embedding")
    return PointMap(sub, sup, tuple(images))


def _render_violations(space: Space, report: Report) -> list[str]:
    lines = []
    for v in report.violations:
        pts = ",".join(space.labels[i] for i in v.points)
        vals = ", ".join(format_dist(x) for x in v.values)
        lines.append(f"{v.rule} at ({pts})" + (f": {vals}" if vals else ""))
    return lines


def _structured(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _subset_str(space: Space, members: frozenset[int]) -> str:
    return "{" + ", ".join(space.labels[i] for i in sorted(members)) + "}"


def _map_lines(m: PointMap) -> list[str]:
    return [
        f"{m.domain.labels[i]} -> {m.codomain.labels[m.images[i]]}"
        for i in range(m.domain.n)
    ]


def _map_payload(m: PointMap) -> dict:
    return {
        m.domain.labels[i]: m.codomain.labels[m.images[i]] for i in range(m.domain.n)
    }


def _doc_payload(space: Space) -> dict:
    return {
        "points": list(space.labels),
        "d": [[format_dist(v) for v in row] for row in space.matrix],
    }


def _cmd_validate(args) -> int:
    space = load_space(args.file)
    report = space.validate()
    if args.format == "structured":
        payload = {
            "ok": report.ok,
            "violations": [
                {
                    "rule": v.rule,
                    "points": [space.labels[i] for i in v.points],
                    "values": [format_dist(x) for x in v.values],
                }
                for v in report.violations
            ],
        }
        if report.ok:
            payload["metric"] = is_metric(space)
        _structured(payload)
    elif report.ok:
        print("ok" + (" (metric)" if is_metric(space) else " (pseudometric, not metric)"))
    else:
        print(f"not a pseudometric: {len(report.violations)} violation(s)")
        for line in _render_violations(space, report):
            print(line)
    return 0 if report.ok else 1


def _cmd_reflect(args) -> int:
    space = load_space(args.file)
    _require_valid(space, args.file)
    if space.n == 0:
        raise DocumentError("metric reflection requires a nonempty space", args.file)
    refl = metric_reflection(space)
    if args.format == "structured":
        _structured(
            {
                "quotient": _doc_payload(refl.quotient),
                "projection": _map_payload(refl.projection),
            }
        )
    else:
        print(emit_document(refl.quotient), end="")
        print()
        print("projection:")
        for line in _map_lines(refl.projection):
            print(f"  {line}")
    return 0


_TOPOLOGY_OPS = ("closure", "interior", "boundary", "is-open", "is-closed")


def _cmd_topology(args) -> int:
    space = load_space(args.file)
    _require_valid(space, args.file)
    members = _parse_labels(space, args.set)
    results: dict[str, object] = {}
    ops = [args.op] if args.op else list(_TOPOLOGY_OPS)
    for op in ops:
        if op == "closure":
            results[op] = closure(space, members).members
        elif op == "interior":
            results[op] = interior(space, members).members
        elif op == "boundary":
            results[op] = boundary(space, members).members
        elif op == "is-open":
            results[op] = is_open(space, members)
        else:
            results[op] = is_closed(space, members)
    if args.format == "structured":
        _structured(
            {
                op: (
                    sorted(space.labels[i] for i in val)
                    if isinstance(val, frozenset)
                    else val
                )
                for op, val in results.items()
            }
        )
    else:
        for op, val in results.items():
            if isinstance(val, frozenset):
                print(f"{op}: {_subset_str(space, val)}")
            else:
                print(f"{op}: {'true' if val else 'false'}")
    if args.op and isinstance(results[args.op], bool):
        return 0 if results[args.op] else 1
    return 0


def _emit_witness(args, m: PointMap | None, extra: dict | None = None) -> int:
    if args.format == "structured":
        payload = {"found": m is not None, "map": _map_payload(m) if m else None}
        payload.update(extra or {})
        _structured(payload)
    elif m is None:
        print("none")
    else:
        for line in _map_lines(m):
            print(line)
    return 0 if m is not None else 1


def _cmd_isometric(args) -> int:
    s1 = load_space(args.file1)
    s2 = load_space(args.file2)
    for space, name in ((s1, args.file1), (s2, args.file2)):
        _require_valid(space, name)
        if not is_metric(space):
            raise DocumentError("isometry search requires a metric space", name)
    witness, stats = find_isometry(s1, s2)
    return _emit_witness(
        args,
        witness,
        {
            "stats": {
                "nodes": stats.nodes,
                "signature_prunes": stats.signature_prunes,
                "distance_checks": stats.distance_checks,
            }
        },
    )


def _cmd_pseudoisometric(args) -> int:
    s1 = load_space(args.file1)
    s2 = load_space(args.file2)
    for space, name in ((s1, args.file1), (s2, args.file2)):
        _require_valid(space, name)
        if space.n == 0:
            raise DocumentError("pseudoisometry requires nonempty spaces", name)
    if args.oracle:
        witness = brute_force_pseudoisometry(s1, s2)
    else:
        witness = are_pseudoisometric(s1, s2)
    return _emit_witness(args, witness)


def _cmd_cec(args) -> int:
    sub = load_space(args.subfile)
    sup = load_space(args.superfile)
    _require_valid(sub, args.subfile)
    _require_valid(sup, args.superfile)
    inclusion = _parse_embedding(sub, sup, args.embedding)
    e = Embedding(sub, sup, inclusion)
    if not is_superspace(e):
        raise DocumentError("embedding is not distance-preserving and injective", args.superfile)
    member = in_cec(e)
    if args.format == "structured":
        _structured({"superspace": True, "in_cec": member})
    else:
        print("in CEC" if member else "not in CEC")
    return 0 if member else 1


def _cmd_glue_zero(args) -> int:
    space = load_space(args.file)
    _require_valid(space, args.file)
    glued = glue_zero_point(space, space.index(args.center), args.label)
    print(emit_document(glued.sup), end="")
    return 0


def _cmd_complete_glue(args) -> int:
    y = load_space(args.yfile)
    ystar = load_space(args.ystarfile)
    _require_valid(y, args.yfile)
    _require_valid(ystar, args.ystarfile)
    if y.n == 0:
        raise DocumentError("completion gluing requires a nonempty space", args.yfile)
    quotient = metric_reflection(y).quotient
    embedding = _parse_embedding(quotient, ystar, args.embedding)
    glued = completion_glue(y, ystar, embedding)
    print(emit_document(glued.sup), end="")
    return 0


def _cmd_fuzz(args) -> int:
    suites = SUITES if args.suite == "all" else (args.suite,)
    report = run_fuzz(args.seed, args.count, max_n=args.max_n, suites=suites)
    if args.format == "structured":
        payload = {
            "seed": report.seed,
            "count": report.count,
            "max_n": report.max_n,
            "suites": report.suites,
            "ok": report.ok,
        }
        if report.failure is not None:
            payload["counterexample"] = {
                "suite": report.failure.suite,
                "check": report.failure.check,
                "detail": report.failure.detail,
                "documents": report.failure.documents,
            }
        _structured(payload)
    else:
        print(report.summary())
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pseudometric",
        description="Finite pseudometric spaces with exact rational distances.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument(
            "--format", choices=("plain", "structured"), default="plain",
            help="plain text or machine-readable JSON output",
        )
        return p

    p = add("validate", _cmd_validate, "check the pseudometric axioms of a space document")
    p.add_argument("file")

    p = add("reflect", _cmd_reflect, "emit the metric reflection and the projection table")
    p.add_argument("file")

    p = add("topology", _cmd_topology, "closure/interior/boundary and open/closed predicates")
    p.add_argument("file")
    p.add_argument("--set", required=True, help="comma-separated point labels (empty for the empty set)")
    p.add_argument("--op", choices=_TOPOLOGY_OPS, help="single operation (default: all)")

    p = add("isometric", _cmd_isometric, "search for an isometry between two metric spaces")
    p.add_argument("file1")
    p.add_argument("file2")

    p = add("pseudoisometric", _cmd_pseudoisometric, "search for a pseudoisometry between two spaces")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument(
        "--oracle", action="store_true",
        help="use exhaustive map enumeration instead of the reflection-based search",
    )

    p = add("cec", _cmd_cec, "check membership of a superspace in the positive-distance class")
    p.add_argument("subfile")
    p.add_argument("superfile")
    p.add_argument("--embedding", help="comma-separated label pairs sub=super (default: match labels)")

    p = add("glue-zero", _cmd_glue_zero, "extend a space by a zero-distance twin of a point")
    p.add_argument("file")
    p.add_argument("--center", required=True, help="label of the point to twin")
    p.add_argument("--label", required=True, help="label for the new point")

    p = add("complete-glue", _cmd_complete_glue, "glue a metric superspace of the reflection onto a space")
    p.add_argument("yfile")
    p.add_argument("ystarfile")
    p.add_argument(
        "--embedding",
        help="comma-separated label pairs quotient=ystar (default: match labels)",
    )

    p = add("fuzz", _cmd_fuzz, "run the randomized invariant suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-n", type=int, default=6, dest="max_n")
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except DocumentError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ResourceLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

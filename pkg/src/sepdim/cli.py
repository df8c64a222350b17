"""Batch command line: constructions, verification, exact solvers, reports.

Exit codes: 0 success / verified Ok, 1 verification counterexample,
2 input error, 3 budget or size-guard exceeded.  Reports are byte
identical across runs with the same inputs and seed; wall-clock time
goes to stderr only.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time

from .exact import (
    DEFAULT_BUDGET,
    SearchBudgetExceeded,
    exact_separation_dimension,
)
from .families import (
    family_from_json,
    family_to_json,
    verify_auto,
    verify_pairwise_suitable,
)
from .graphs import Graph, GraphFormatError, load_graph, serialize_graph
from .lowerbound import canonical_dimension_lower_bound, lower_bound_harness
from .posets import (
    DimensionBudgetExceeded,
    canonical_interval_order,
    exact_poset_dimension,
)
from .starcover import degenerate_family
from .subdivided import colored_subdivision_family

OK, COUNTEREXAMPLE, INPUT_ERROR, BUDGET = 0, 1, 2, 3
CANONICAL_DIM_GUARD = 8


class Report:
    """Flat, deterministic key/value report."""

    def __init__(self, command: str):
        self.items: list[tuple[str, object]] = [("command", command)]

    def add(self, key: str, value) -> None:
        self.items.append((key, value))

    def render(self, fmt: str) -> str:
        if fmt == "structured":
            return json.dumps(dict(self.items), sort_keys=True, separators=(",", ":")) + "\n"
        return "".join(f"{k}: {v}\n" for k, v in self.items)


def _digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _read_graph(path: str) -> tuple[Graph, str]:
    with open(path, "rb") as fh:
        raw = fh.read()
    return load_graph(raw.decode("utf-8")), _digest(raw)


def _emit(report: Report, fmt: str, started: float) -> None:
    sys.stdout.write(report.render(fmt))
    print(f"elapsed: {time.monotonic() - started:.3f}s", file=sys.stderr)


def _witness_str(witness) -> str:
    if witness.ok:
        return "ok"
    e, f = witness.counterexample
    return f"counterexample {e[0]}-{e[1]} | {f[0]}-{f[1]}"


def cmd_bound_degenerate(args) -> int:
    started = time.monotonic()
    g, digest = _read_graph(args.graph)
    result = degenerate_family(g, seed=args.seed)
    witness = verify_auto(result.family, g, seed=args.seed)
    report = Report("bound-degenerate")
    report.add("input_digest", digest)
    report.add("seed", args.seed)
    report.add("vertices", g.num_vertices)
    report.add("edges", g.num_edges)
    report.add("degeneracy", result.degeneracy)
    report.add("star_forests", result.forest_count)
    report.add("base_family_size", result.base_size)
    report.add("base_generator", result.base.generator)
    report.add("family_size", len(result.family.members))
    report.add("size_bound_4kr", 4 * result.degeneracy * result.base_size)
    report.add("verdict", _witness_str(witness))
    if args.out:
        doc = family_to_json(
            result.family, seed=args.seed, generator="star-cover",
            extra={
                "star_forests": result.forest_count,
                "base_family_size": result.base_size,
                "degeneracy": result.degeneracy,
            },
        )
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(doc)
        report.add("family_file", args.out)
    _emit(report, args.format, started)
    return OK if witness.ok else COUNTEREXAMPLE


def cmd_bound_subdivision(args) -> int:
    started = time.monotonic()
    g, digest = _read_graph(args.graph)
    result = colored_subdivision_family(g, seed=args.seed)
    witness = verify_auto(result.family, result.subdivided, seed=args.seed)
    report = Report("bound-subdivision")
    report.add("input_digest", digest)
    report.add("seed", args.seed)
    report.add("vertices", g.num_vertices)
    report.add("edges", g.num_edges)
    report.add("subdivided_vertices", result.subdivided.num_vertices)
    report.add("color_classes", result.num_classes)
    report.add("interval_height", result.interval_height)
    report.add("realizer_size", result.realizer_size)
    report.add("realizer_exact", result.used_exact_realizer)
    report.add("family_size", len(result.family.members))
    c = result.num_classes
    if c >= 3:
        report.add("bound_loglog_classes", f"{math.log2(math.log2(c - 1)) + 2:.4f}")
    report.add("verdict", _witness_str(witness))
    if args.out:
        doc = family_to_json(
            result.family, seed=args.seed, generator="subdivision-realizer",
            extra={"realizer_size": result.realizer_size},
        )
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(doc)
        report.add("family_file", args.out)
        map_path = args.out + ".subdivision.json"
        mapping = {
            "original_vertices": list(result.subdivision.original_vertices),
            "mids": [[u, v, m] for (u, v), m in result.subdivision.assignments],
        }
        with open(map_path, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(mapping, sort_keys=True, separators=(",", ":")) + "\n")
        report.add("subdivision_file", map_path)
        graph_path = args.out + ".subdivided.txt"
        with open(graph_path, "w", encoding="utf-8") as fh:
            fh.write(serialize_graph(result.subdivided))
        report.add("subdivided_graph_file", graph_path)
    _emit(report, args.format, started)
    return OK if witness.ok else COUNTEREXAMPLE


def cmd_exact(args) -> int:
    started = time.monotonic()
    g, digest = _read_graph(args.graph)
    result = exact_separation_dimension(
        g, limit=args.limit, budget=args.budget, seed=args.seed
    )
    report = Report("exact")
    report.add("input_digest", digest)
    report.add("seed", args.seed)
    report.add("limit", args.limit)
    if result.found:
        report.add("separation_dimension", result.dimension)
        for i, member in enumerate(result.witness.members):
            report.add(f"witness_{i}", " ".join(map(str, member.order)))
    else:
        report.add("separation_dimension", "exceeded")
    report.add("nodes", result.nodes)
    _emit(report, args.format, started)
    return OK


def cmd_verify(args) -> int:
    started = time.monotonic()
    g, digest = _read_graph(args.graph)
    with open(args.family, "rb") as fh:
        raw = fh.read()
    fam, _doc = family_from_json(raw.decode("utf-8"))
    witness = verify_pairwise_suitable(fam, g)
    report = Report("verify")
    report.add("input_digest", digest)
    report.add("family_digest", _digest(raw))
    report.add("family_size", len(fam.members))
    report.add("verdict", _witness_str(witness))
    _emit(report, args.format, started)
    return OK if witness.ok else COUNTEREXAMPLE


def cmd_canonical_dim(args) -> int:
    started = time.monotonic()
    n = args.n
    if n < 2:
        raise GraphFormatError("canonical interval order needs n >= 2")
    if n > CANONICAL_DIM_GUARD:
        raise SearchBudgetExceeded(
            f"canonical-dim is desk-scale only (n <= {CANONICAL_DIM_GUARD})"
        )
    order = canonical_interval_order(n)
    result = exact_poset_dimension(order.poset, limit=args.limit, budget=args.budget)
    report = Report("canonical-dim")
    report.add("input_digest", _digest(str(n).encode()))
    report.add("n", n)
    report.add("elements", len(order))
    if result.dimension is None:
        report.add("dimension", "exceeded")
    else:
        report.add("dimension", result.dimension)
        for i, ext in enumerate(result.realizer.extensions):
            report.add(f"extension_{i}", " ".join(f"({a},{b})" for a, b in ext))
    report.add("lower_bound_loglog", canonical_dimension_lower_bound(n))
    _emit(report, args.format, started)
    return OK


def cmd_lower_harness(args) -> int:
    started = time.monotonic()
    n = args.n
    rep = lower_bound_harness(n, seed=args.seed, budget=args.budget or None)
    report = Report("lower-harness")
    report.add("input_digest", _digest(str(n).encode()))
    report.add("n", n)
    report.add("seed", args.seed)
    report.add("mode", "exact" if rep.exact else "construction-only")
    if rep.pi is not None:
        report.add("separation_dimension", rep.pi)
    if rep.family is not None:
        report.add("family_size", len(rep.family.members))
    if rep.subset is not None:
        report.add("subset_size", len(rep.subset.vertices))
        report.add("subset", " ".join(map(str, rep.subset.vertices)))
        report.add("floor", rep.floor)
        report.add("floor_met", rep.floor_met)
        report.add("realizer_valid", rep.realizer is not None)
        if rep.canonical_dimension is not None:
            report.add("canonical_dimension", rep.canonical_dimension)
        report.add("canonical_lower_bound", rep.canonical_lower_bound)
        report.add("bound_holds", rep.bound_holds)
    _emit(report, args.format, started)
    if not rep.exact:
        print(f"exact stage skipped: n={n} exceeds the n <= 4 guard", file=sys.stderr)
        return BUDGET
    return OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sepdim",
        description="Pairwise-suitable permutation families and separation dimension.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                       help="node-expansion cap for exact searches")
        p.add_argument("--format", choices=("text", "structured"), default="text")

    p = sub.add_parser("bound-degenerate", help="star-forest family for a k-degenerate graph")
    p.add_argument("graph")
    p.add_argument("--out", help="write the family file here")
    common(p)
    p.set_defaults(func=cmd_bound_degenerate)

    p = sub.add_parser("bound-subdivision", help="realizer family for the fully subdivided graph")
    p.add_argument("graph")
    p.add_argument("--out", help="write the family file here")
    common(p)
    p.set_defaults(func=cmd_bound_subdivision)

    p = sub.add_parser("exact", help="exact separation dimension (desk scale)")
    p.add_argument("graph")
    p.add_argument("--limit", type=int, default=4)
    common(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("verify", help="verify a family file against a graph")
    p.add_argument("graph")
    p.add_argument("family")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("canonical-dim", help="exact dimension of the canonical interval order")
    p.add_argument("n", type=int)
    p.add_argument("--limit", type=int, default=4)
    common(p)
    p.set_defaults(func=cmd_canonical_dim)

    p = sub.add_parser("lower-harness", help="subdivided-clique lower-bound extraction")
    p.add_argument("n", type=int)
    common(p)
    p.set_defaults(func=cmd_lower_harness)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, FileNotFoundError, ValueError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except (SearchBudgetExceeded, DimensionBudgetExceeded) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return BUDGET


if __name__ == "__main__":
    sys.exit(main())

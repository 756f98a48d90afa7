"""Command-line surface: reproducible collapse, benchmark, export, and verify runs.

Exit codes: 0 success, 1 verification failure, 2 unreadable input,
3 simplex budget exceeded, 64 usage error.  Every report embeds the
version, the full flag configuration, and the seed, so a report can be
replayed exactly (timings and memory excepted).
"""

from __future__ import annotations

import argparse
import os
import resource
import sys
import tempfile
import time
from io import StringIO
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .build import (
    DATASET_KINDS,
    density_rips_from_distances,
    density_rips_graph,
    generate_dataset,
    kde_bandwidth,
    kde_density,
    kde_density_from_matrix,
    load_lower_distance_matrix,
    load_points,
    pairwise_distances,
)
from .collapse import (
    GRADE_MODES,
    MODES,
    GradeMode,
    apply_grade_mode,
    collapse_iterated,
)
from .core import BifilteredGraph, read_edge_list, write_edge_list
from .domination import is_filtration_dominated, is_strongly_dominated
from .expand import count_triangles, enumerate_triangles, export_scc2020
from .oracle import (
    SimplexBudgetExceeded,
    brute_force_filtration_dominated,
    random_grid_graph,
    verify_collapse,
)
from .orders import ORDER_KINDS, EdgeOrder

DEFAULT_MAX_SIMPLICES = 5_000_000


class InputError(Exception):
    """Input file missing, unreadable, or malformed."""


class _Parser(argparse.ArgumentParser):
    # Usage errors exit with the conventional EX_USAGE code instead of 2,
    # which this tool reserves for unreadable input.
    def error(self, message: str):  # noqa: ANN201 - argparse contract
        self.print_usage(sys.stderr)
        self.exit(64, f"{self.prog}: error: {message}\n")


# -- small helpers ----------------------------------------------------------------


def _atomic_write_text(path: str | Path, text: str) -> None:
    """Write via a temp file in the target directory, then rename into place."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=str(path.parent or "."), prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _edge_list_text(graph: BifilteredGraph) -> str:
    buf = StringIO()
    write_edge_list(graph, buf)
    return buf.getvalue()


def _peak_rss_mb() -> float:
    # ru_maxrss is in KiB on Linux; approximate and labeled as such.
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024.0


def _graph_from_points(points: np.ndarray) -> BifilteredGraph:
    h = kde_bandwidth(pairwise_distances(points))
    return density_rips_graph(points, kde_density(points, h))


def _load_graph(args: argparse.Namespace) -> tuple[BifilteredGraph, str]:
    """Build the run's input graph; returns (graph, source label for reports)."""
    try:
        if getattr(args, "edges", None):
            with open(args.edges) as fh:
                return read_edge_list(fh), f"edges:{args.edges}"
        if getattr(args, "points", None):
            return _graph_from_points(load_points(args.points)), f"points:{args.points}"
        if getattr(args, "distances", None):
            dist = load_lower_distance_matrix(args.distances)
            condensed = dist[np.triu_indices(dist.shape[0], k=1)]
            h = kde_bandwidth(condensed)
            dens = kde_density_from_matrix(dist, h)
            return density_rips_from_distances(dist, dens), f"distances:{args.distances}"
        points = generate_dataset(args.dataset, args.n, seed=args.seed)
        return _graph_from_points(points), f"{args.dataset}:n={args.n}"
    except (OSError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def _make_order(kind: str, seed: int) -> EdgeOrder:
    return EdgeOrder(kind, seed=seed) if kind == "random" else EdgeOrder(kind)


def _config_echo(args: argparse.Namespace) -> str:
    skip = {"func", "format", "_parser"}
    parts = []
    for key, value in sorted(vars(args).items()):
        if key in skip or value is None:
            continue
        parts.append(f"{key.replace('_', '-')}={value}")
    return " ".join(parts)


def _render_report(
    command: str,
    args: argparse.Namespace,
    header: Sequence[str],
    rows: Sequence[Sequence[object]],
) -> str:
    meta = [
        ("tool", f"bicollapse {__version__}"),
        ("command", command),
        ("config", _config_echo(args)),
        ("seed", str(args.seed)),
    ]
    out = StringIO()
    if args.format == "csv":
        for key, value in meta:
            out.write(f"# {key}: {value}\n")
        out.write(",".join(header) + "\n")
        for row in rows:
            out.write(",".join(str(c) for c in row) + "\n")
    else:
        for key, value in meta:
            out.write(f"{key}: {value}\n")
        out.write("\n| " + " | ".join(header) + " |\n")
        out.write("|" + "|".join(" --- " for _ in header) + "|\n")
        for row in rows:
            out.write("| " + " | ".join(str(c) for c in row) + " |\n")
    return out.getvalue()


def _pct(fraction: float) -> str:
    return f"{100.0 * fraction:.2f}"


# -- subcommands ------------------------------------------------------------------


def cmd_collapse(args: argparse.Namespace) -> int:
    graph, source = _load_graph(args)
    graph = apply_grade_mode(graph, GradeMode(args.grade_mode), seed=args.seed)
    order = _make_order(args.order, args.seed)
    start = time.perf_counter()
    collapsed, report = collapse_iterated(
        graph, order, mode=args.mode, iterations=args.iterations
    )
    elapsed_ms = 1000.0 * (time.perf_counter() - start)
    if args.output:
        _atomic_write_text(args.output, _edge_list_text(collapsed))
    header = [
        "source",
        "edges_before",
        "edges_after",
        "removed_pct",
        "iterations_run",
        "time_ms",
        "peak_rss_mb_approx",
    ]
    row = [
        source,
        report.edges_before,
        report.edges_after,
        _pct(report.removed_fraction),
        len(report.removed_per_iteration),
        f"{elapsed_ms:.1f}",
        f"{_peak_rss_mb():.1f}",
    ]
    print(_render_report("collapse", args, header, [row]), end="")
    return 0


def cmd_bench_orders(args: argparse.Namespace) -> int:
    graph, source = _load_graph(args)
    graph = apply_grade_mode(graph, GradeMode(args.grade_mode), seed=args.seed)
    rows = []
    for kind in ORDER_KINDS:
        order = _make_order(kind, args.seed)
        start = time.perf_counter()
        _, report = collapse_iterated(graph, order, mode=args.mode, iterations=args.iterations)
        elapsed_ms = 1000.0 * (time.perf_counter() - start)
        rows.append(
            [
                kind,
                source,
                report.edges_before,
                report.edges_after,
                _pct(report.removed_fraction),
                f"{elapsed_ms:.1f}",
            ]
        )
    header = ["order", "source", "edges_before", "edges_after", "removed_pct", "time_ms"]
    text = _render_report("bench-orders", args, header, rows)
    if args.output:
        _atomic_write_text(args.output, text)
    else:
        print(text, end="")
    return 0


def cmd_expand(args: argparse.Namespace) -> int:
    graph, source = _load_graph(args)
    graph = apply_grade_mode(graph, GradeMode(args.grade_mode), seed=args.seed)
    edges_before = graph.edge_count()
    triangles_before = count_triangles(graph)
    start = time.perf_counter()
    if args.no_collapse:
        collapsed = graph
    else:
        order = _make_order(args.order, args.seed)
        collapsed, _ = collapse_iterated(graph, order, mode=args.mode, iterations=args.iterations)
    triangles_after = count_triangles(collapsed)
    total = collapsed.n + collapsed.edge_count() + triangles_after
    if total > args.max_simplices:
        raise SimplexBudgetExceeded(total, args.max_simplices)
    triangles = enumerate_triangles(collapsed)
    sink = StringIO()
    export_scc2020(collapsed, triangles, sink)
    elapsed_ms = 1000.0 * (time.perf_counter() - start)
    _atomic_write_text(args.output, sink.getvalue())
    header = [
        "source",
        "edges_before",
        "triangles_before",
        "edges_after",
        "triangles_after",
        "time_ms",
        "peak_rss_mb_approx",
    ]
    row = [
        source,
        edges_before,
        triangles_before,
        collapsed.edge_count(),
        triangles_after,
        f"{elapsed_ms:.1f}",
        f"{_peak_rss_mb():.1f}",
    ]
    print(_render_report("expand", args, header, [row]), end="")
    return 0


def _counterexample_path(args: argparse.Namespace) -> str:
    return args.output or "counterexample_edges.txt"


def _verify_domination(args: argparse.Namespace) -> int:
    rng = np.random.default_rng(args.seed)
    densities = (0.3, 0.5, 0.8)
    checked = 0
    for i in range(args.instances):
        graph = random_grid_graph(4 + i % 7, densities[i % 3], rng)
        for e in graph.edge_list():
            fast = is_filtration_dominated(graph, e)
            slow = brute_force_filtration_dominated(graph, e)
            strong = is_strongly_dominated(graph, e)
            if fast != slow or (strong is not None and not fast):
                path = _counterexample_path(args)
                _atomic_write_text(path, _edge_list_text(graph))
                print(
                    f"domination mismatch on edge ({e.u}, {e.v}) of instance {i}: "
                    f"fast={fast} oracle={slow} strong={strong}; graph written to {path}",
                    file=sys.stderr,
                )
                return 1
            checked += 1
    print(f"domination oracle: {args.instances} instances, {checked} edges checked, 0 mismatches")
    return 0


def _verify_homology(args: argparse.Namespace) -> int:
    rng = np.random.default_rng(args.seed)
    densities = (0.3, 0.5, 0.8)
    runs = 0
    for i in range(args.instances):
        graph = random_grid_graph(4 + i % 5, densities[i % 3], rng)
        for mode in MODES:
            for kind in ORDER_KINDS:
                collapsed, _ = collapse_iterated(
                    graph, _make_order(kind, args.seed), mode=mode, iterations=2
                )
                result = verify_collapse(graph, collapsed)
                if not result.ok:
                    path = _counterexample_path(args)
                    _atomic_write_text(path, _edge_list_text(graph))
                    print(
                        f"homology mismatch on instance {i} (mode={mode}, order={kind}): "
                        f"{result.detail}; graph written to {path}",
                        file=sys.stderr,
                    )
                    return 1
                runs += 1
    print(f"homology oracle: {args.instances} instances, {runs} collapse runs, 0 mismatches")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    if args.oracle == "domination":
        return _verify_domination(args)
    return _verify_homology(args)


def cmd_generate(args: argparse.Namespace) -> int:
    params = {}
    if args.noise is not None:
        params["noise"] = args.noise
    if args.outliers is not None:
        params["outliers"] = args.outliers
    try:
        points = generate_dataset(args.dataset, args.n, seed=args.seed, **params)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    lines = [",".join(repr(float(c)) for c in row) for row in points]
    _atomic_write_text(args.output, "\n".join(lines) + "\n")
    print(f"wrote {len(points)} {args.dataset} points (seed={args.seed}) to {args.output}")
    return 0


# -- parser -----------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="bicollapse", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"bicollapse {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed recorded in every report")
    common.add_argument("--format", choices=("csv", "markdown"), default="csv")
    common.add_argument("--output", help="output file (written atomically)")

    run = _Parser(add_help=False)
    run.add_argument("--mode", choices=MODES, default="strong")
    run.add_argument("--iterations", type=int, default=1)
    run.add_argument("--grade-mode", choices=GRADE_MODES, default="original")

    inputs = _Parser(add_help=False)
    group = inputs.add_mutually_exclusive_group(required=True)
    group.add_argument("--points", help="point cloud file, one 2D/3D point per line")
    group.add_argument("--distances", help="lower-distance-matrix file")
    group.add_argument("--edges", help="graded edge-list file")
    group.add_argument("--dataset", choices=DATASET_KINDS, help="generated dataset (needs --n)")
    inputs.add_argument("--n", type=int, help="point count for --dataset")

    p = sub.add_parser("collapse", parents=[common, run, inputs], help="remove dominated edges")
    p.add_argument("--order", choices=ORDER_KINDS, default="revlex")
    p.set_defaults(func=cmd_collapse)

    p = sub.add_parser(
        "bench-orders", parents=[common, run, inputs], help="compare all edge orders"
    )
    p.set_defaults(func=cmd_bench_orders)

    p = sub.add_parser(
        "expand", parents=[common, run, inputs], help="export the clique bifiltration (scc2020)"
    )
    p.add_argument("--order", choices=ORDER_KINDS, default="revlex")
    p.add_argument("--no-collapse", action="store_true", help="export without preprocessing")
    p.add_argument("--max-simplices", type=int, default=DEFAULT_MAX_SIMPLICES)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", parents=[common], help="run a brute-force oracle suite")
    p.add_argument("--oracle", choices=("domination", "homology"), required=True)
    p.add_argument("--instances", type=int, default=100)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", parents=[common], help="write a synthetic point cloud")
    p.add_argument("--dataset", choices=DATASET_KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--noise", type=float, help="gaussian noise for circle")
    p.add_argument("--outliers", type=float, help="outlier fraction for sphere")
    p.set_defaults(func=cmd_generate)

    for cmd in ("collapse", "bench-orders", "expand"):
        sp = sub.choices[cmd]
        sp.set_defaults(_parser=sp)
    sub.choices["generate"].set_defaults(_parser=sub.choices["generate"])
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "dataset", None) and getattr(args, "n", None) is None:
        args._parser.error("--dataset requires --n")
    if args.command == "expand" and not args.output:
        args._parser.error("expand requires --output")
    if args.command == "generate" and not args.output:
        args._parser.error("generate requires --output")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"bicollapse: input error: {exc}", file=sys.stderr)
        return 2
    except SimplexBudgetExceeded as exc:
        print(f"bicollapse: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

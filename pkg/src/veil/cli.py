"""Command-line front end: layout, render, metrics, generate, compare.

Exit codes: 0 success, 2 parse/schema errors, 3 precondition violations,
4 I/O failures. Every failure prints a single diagnostic line to stderr.
Default spacing can be overridden with the VEIL_DX and VEIL_DY
environment variables.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .coords import Layout, layout_from_json, layout_to_json
from .dot import parse_dot
from .generate import ALL_CONSTRUCTS, generate_structured_cfg
from .graph import CfgGraph, ParseError, PreconditionError, parse_json, write_json
from .gvimport import import_graphviz_plain
from .metrics import MetricsReport, metrics_report
from .pipeline import DEFAULT_DX, DEFAULT_DY, LayoutConfig, layout as run_layout
from .svg import render_svg

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_IO = 4

HIGHER_IS_BETTER = {
    "node_orthogonality",
    "edge_orthogonality",
    "consistent_flow",
    "happens_before",
}
LOWER_IS_BETTER = {
    "crossings",
    "bends",
    "mad_log_edge_length",
    "edge_length_total",
    "edge_length_max",
    "edge_length_median",
    "area",
    "tension_sum",
    "tension_median",
    "grouping_distance_median",
    "grouping_distance_median_back",
    "grouping_distance_median_forward",
    "layout_time_ms",
}


def _env_float(name: str, fallback: float) -> float:
    raw = os.environ.get(name)
    if raw is None:
        return fallback
    try:
        return float(raw)
    except ValueError:
        raise PreconditionError(f"environment variable {name} must be a number, got {raw!r}")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    Path(path).write_text(text, encoding="utf-8")


def _load_cfg(path: str, fmt: str, entry: str | None) -> CfgGraph:
    text = _read_text(path)
    if fmt == "auto":
        if path != "-" and path.endswith(".json"):
            fmt = "json"
        elif path != "-" and (path.endswith(".dot") or path.endswith(".gv")):
            fmt = "dot"
        else:
            fmt = "dot" if text.lstrip().startswith(("digraph", "strict", "graph", "//", "/*", "#")) else "json"
    if fmt == "dot":
        return parse_dot(text, entry=entry)
    graph = parse_json(text)
    if entry is not None:
        if entry not in graph.nodes:
            raise ParseError(f"entry override {entry!r} names an unknown node")
        graph = CfgGraph(nodes=graph.nodes, edges=graph.edges, entry=entry,
                         labels=graph.labels, sizes=graph.sizes)
    return graph


def _layout_config(args: argparse.Namespace) -> LayoutConfig:
    return LayoutConfig(dx=args.dx, dy=args.dy, mode=args.mode)


def _warn_unreachable(graph: CfgGraph) -> None:
    seen = {graph.entry}
    stack = [graph.entry]
    while stack:
        node = stack.pop()
        for nxt in graph.successors(node):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    dead = [n for n in graph.nodes if n not in seen]
    if dead:
        listing = ", ".join(dead[:8]) + ("..." if len(dead) > 8 else "")
        print(f"veil: warning: {len(dead)} nodes unreachable from the entry "
              f"are ranked below the reachable component: {listing}", file=sys.stderr)


def cmd_layout(args: argparse.Namespace) -> int:
    graph = _load_cfg(args.input, args.format, args.entry)
    _warn_unreachable(graph)
    result = run_layout(graph, _layout_config(args))
    if args.output_format == "svg":
        _write_text(args.output, render_svg(result))
    else:
        _write_text(args.output, layout_to_json(result))
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    result = layout_from_json(_read_text(args.input))
    _write_text(args.output, render_svg(result))
    return EXIT_OK


def _load_layout_any(path: str, plain: bool) -> Layout:
    text = _read_text(path)
    if plain:
        return import_graphviz_plain(text)
    return layout_from_json(text)


def cmd_metrics(args: argparse.Namespace) -> int:
    if args.bend_eps <= 0:
        raise PreconditionError("--bend-eps must be positive")
    result = _load_layout_any(args.input, args.from_plain)
    report = metrics_report(result, bend_eps=args.bend_eps)
    if args.report_format == "metrics-table":
        _write_text(args.output, report.to_table() + "\n")
    else:
        _write_text(args.output, report.to_json())
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    if args.depth < 1:
        raise PreconditionError("--depth must be at least 1")
    if args.width < 2:
        raise PreconditionError("--width must be at least 2")
    constructs = tuple(args.constructs.split(",")) if args.constructs else ALL_CONSTRUCTS
    try:
        graphs = [
            (seed, generate_structured_cfg(seed, args.depth, args.width, constructs))
            for seed in range(args.seed, args.seed + args.count)
        ]
    except ValueError as exc:
        raise PreconditionError(str(exc))
    if args.count == 1:
        _write_text(args.output, write_json(graphs[0][1]))
        return EXIT_OK
    if args.output in (None, "-"):
        raise PreconditionError("--count above 1 needs -o pointing at a directory")
    out_dir = Path(args.output)
    out_dir.mkdir(parents=True, exist_ok=True)
    for seed, graph in graphs:
        (out_dir / f"cfg-{seed:04d}.json").write_text(write_json(graph), encoding="utf-8")
    return EXIT_OK


def _compare_value(value) -> str:
    if value is None:
        return "absent"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def compare_table(reports: list[tuple[str, MetricsReport]]) -> str:
    names = [name for name, _ in reports]
    rows: list[list[str]] = []
    header = ["metric", "better", *names]
    for key, _ in reports[0][1].as_rows():
        if key.startswith("note:"):
            continue
        arrow = "^" if key in HIGHER_IS_BETTER else ("v" if key in LOWER_IS_BETTER else " ")
        values = [getattr(report, key) for _, report in reports]
        cells = [_compare_value(v) for v in values]
        defined = [v for v in values if v is not None]
        if arrow != " " and len(defined) == len(values) and values:
            best = max(values) if key in HIGHER_IS_BETTER else min(values)
            cells = [cell + (" *" if value == best else "") for cell, value in zip(cells, values)]
        rows.append([key, arrow, *cells])
    widths = [max(len(row[i]) for row in [header, *rows]) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)) for row in [header, *rows]]
    return "\n".join(lines)


def cmd_compare(args: argparse.Namespace) -> int:
    layouts = [(path, _load_layout_any(path, path.endswith(".plain"))) for path in args.inputs]
    node_sets = []
    for path, lay in layouts:
        real = {n for n in lay.nodes if lay.size[n] != (0.0, 0.0)}
        node_sets.append((path, real))
    first_path, first_set = node_sets[0]
    for path, nodes in node_sets[1:]:
        if nodes != first_set:
            missing = sorted(first_set ^ nodes)[:5]
            raise PreconditionError(
                f"node sets differ between {first_path} and {path} (for example: {', '.join(missing)})"
            )
    reports = [(Path(path).name, metrics_report(lay)) for path, lay in layouts]
    _write_text(args.output, compare_table(reports) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="veil", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    default_dx = _env_float("VEIL_DX", DEFAULT_DX)
    default_dy = _env_float("VEIL_DY", DEFAULT_DY)

    def add_spacing(p: argparse.ArgumentParser) -> None:
        p.add_argument("--dx", type=float, default=default_dx, help="horizontal grid spacing in px")
        p.add_argument("--dy", type=float, default=default_dy, help="vertical grid spacing in px")
        p.add_argument("--mode", choices=("grouped", "indent"), default="grouped")

    p_layout = sub.add_parser("layout", help="lay out a CFG (DOT or CFG JSON)")
    p_layout.add_argument("input", help="input path or - for stdin")
    p_layout.add_argument("--format", choices=("auto", "dot", "json"), default="auto")
    p_layout.add_argument("--entry", help="entry node override")
    add_spacing(p_layout)
    p_layout.add_argument("--output-format", choices=("layout-json", "svg"), default="layout-json")
    p_layout.add_argument("-o", "--output", help="output path (default stdout)")
    p_layout.set_defaults(func=cmd_layout)

    p_render = sub.add_parser("render", help="render Layout JSON to SVG")
    p_render.add_argument("input")
    p_render.add_argument("-o", "--output")
    p_render.set_defaults(func=cmd_render)

    p_metrics = sub.add_parser("metrics", help="measure a Layout JSON file")
    p_metrics.add_argument("input")
    p_metrics.add_argument("--from-plain", action="store_true",
                           help="input is Graphviz plain output instead of Layout JSON")
    p_metrics.add_argument("--format", dest="report_format",
                           choices=("metrics-json", "metrics-table"), default="metrics-json")
    p_metrics.add_argument("--bend-eps", type=float, default=0.5,
                           help="deviation in px before a polyline point counts as a bend")
    p_metrics.add_argument("-o", "--output")
    p_metrics.set_defaults(func=cmd_metrics)

    p_generate = sub.add_parser("generate", help="emit structured CFG JSON fixtures")
    p_generate.add_argument("--seed", type=int, required=True)
    p_generate.add_argument("--depth", type=int, default=4)
    p_generate.add_argument("--width", type=int, default=5)
    p_generate.add_argument("--count", type=int, default=1)
    p_generate.add_argument("--constructs", help="comma-separated construct subset")
    p_generate.add_argument("-o", "--output", help="output file, or directory with --count > 1")
    p_generate.set_defaults(func=cmd_generate)

    p_compare = sub.add_parser("compare", help="side-by-side metrics for layouts of one CFG")
    p_compare.add_argument("inputs", nargs="+", help="two or more layout files (.plain for Graphviz)")
    p_compare.add_argument("-o", "--output")
    p_compare.set_defaults(func=cmd_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        if args.command == "compare" and len(args.inputs) < 2:
            raise PreconditionError("compare needs at least two layout files")
        return args.func(args)
    except ParseError as exc:
        print(f"veil: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"veil: precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"veil: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

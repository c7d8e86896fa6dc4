"""Import Graphviz plain-text output as a Layout for foreign-tool measurement.

The plain format (``dot -Tplain``) emits one line per element::

    graph scale width height
    node name x y width height label style shape color fillcolor
    edge tail head n x1 y1 .. xn yn [label xl yl] style color
    stop

Coordinates are in inches with the origin at the bottom left, so they are
scaled by 72 and flipped vertically. Ranks, which the format does not
carry, are derived from the node y centers snapped to 5 px bins; edges
that climb to a strictly lower rank are marked as back edges.
"""

from __future__ import annotations

import shlex
import statistics

from .coords import EdgeRoute, Layout, Point
from .graph import ParseError

POINTS_PER_INCH = 72.0
RANK_SNAP = 5.0


def derive_ranks(ys: dict[str, float], snap: float = RANK_SNAP) -> dict[str, int]:
    """Rank = index of the node's y center among the distinct snapped y values."""
    snapped = {n: round(y / snap) * snap for n, y in ys.items()}
    levels = sorted(set(snapped.values()))
    level_index = {y: i for i, y in enumerate(levels)}
    return {n: level_index[snapped[n]] for n in ys}


def import_graphviz_plain(text: str) -> Layout:
    """Convert Graphviz plain output into a Layout with mode="imported"."""
    height_in: float | None = None
    nodes: list[str] = []
    pos: dict[str, Point] = {}
    size: dict[str, tuple[float, float]] = {}
    raw_edges: list[tuple[str, str, list[Point]]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            parts = shlex.split(line)
        except ValueError as exc:
            raise ParseError(f"plain line {lineno}: {exc}") from exc
        kind = parts[0]
        if kind == "graph":
            if len(parts) < 4:
                raise ParseError(f"plain line {lineno}: graph line needs scale, width, height")
            height_in = float(parts[3])
        elif kind == "node":
            if height_in is None:
                raise ParseError("plain input must start with a graph line")
            if len(parts) < 6:
                raise ParseError(f"plain line {lineno}: node line too short")
            name = parts[1]
            x = float(parts[2]) * POINTS_PER_INCH
            y = (height_in - float(parts[3])) * POINTS_PER_INCH
            w = float(parts[4]) * POINTS_PER_INCH
            h = float(parts[5]) * POINTS_PER_INCH
            nodes.append(name)
            pos[name] = (x, y)
            size[name] = (w, h)
        elif kind == "edge":
            if height_in is None:
                raise ParseError("plain input must start with a graph line")
            if len(parts) < 4:
                raise ParseError(f"plain line {lineno}: edge line too short")
            tail, head = parts[1], parts[2]
            count = int(parts[3])
            coords = parts[4:4 + 2 * count]
            if len(coords) < 2 * count:
                raise ParseError(f"plain line {lineno}: edge declares {count} points but carries fewer")
            points = [
                (float(coords[i]) * POINTS_PER_INCH,
                 (height_in - float(coords[i + 1])) * POINTS_PER_INCH)
                for i in range(0, 2 * count, 2)
            ]
            raw_edges.append((tail, head, points))
        elif kind == "stop":
            break
        else:
            raise ParseError(f"plain line {lineno}: unknown record {kind!r}")
    if not nodes:
        raise ParseError("plain input declares no nodes")

    rank = derive_ranks({n: pos[n][1] for n in nodes})
    order: dict[str, int] = {}
    by_rank: dict[int, list[str]] = {}
    for n in nodes:
        by_rank.setdefault(rank[n], []).append(n)
    for members in by_rank.values():
        members.sort(key=lambda n: pos[n][0])
        for i, n in enumerate(members):
            order[n] = i

    routes: list[EdgeRoute] = []
    for tail, head, points in raw_edges:
        if tail not in pos or head not in pos:
            raise ParseError(f"edge {tail}->{head} references an undeclared node")
        kind = "back" if rank[head] < rank[tail] else "tree"
        if len(points) < 2:
            points = [pos[tail], pos[head]]
        routes.append(EdgeRoute(src=tail, dst=head, kind=kind, points=points))

    ys = sorted({pos[n][1] for n in nodes})
    gaps = [b - a for a, b in zip(ys, ys[1:]) if b - a > 0]
    dy = statistics.median(gaps) if gaps else POINTS_PER_INCH
    xs_all = sorted({pos[n][0] for n in nodes})
    xgaps = [b - a for a, b in zip(xs_all, xs_all[1:]) if b - a > 0]
    dx = statistics.median(xgaps) if xgaps else dy

    bbox_xs: list[float] = []
    bbox_ys: list[float] = []
    for n in nodes:
        (x, y), (w, h) = pos[n], size[n]
        bbox_xs += [x - w / 2, x + w / 2]
        bbox_ys += [y - h / 2, y + h / 2]
    for route in routes:
        for x, y in route.points:
            bbox_xs.append(x)
            bbox_ys.append(y)
    return Layout(
        dx=dx,
        dy=dy,
        mode="imported",
        nodes=nodes,
        pos=pos,
        size=size,
        rank=rank,
        order=order,
        routes=routes,
        bbox=(min(bbox_xs), min(bbox_ys), max(bbox_xs), max(bbox_ys)),
        virtual_sink=None,
    )

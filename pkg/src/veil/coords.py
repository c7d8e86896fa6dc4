"""Coordinate assignment: slots to grid positions, chains to polylines.

Grouped mode places a node at (dx * (ord - back_dummies_in_rank), dy * rank),
which pushes every back-edge chain into negative x, left of all real
nodes. Indent mode uses (dx * ord, dy * rank) instead, so loop bodies read
like indented source code. After placement, each chain is straightened to
a single x (minimum over the chain for back edges, maximum otherwise) and
de-normalized into a polyline with collinear bends elided.

Polylines run center to center; renderers clip them at node boundaries.
Keeping centers makes single-rank vertical edges exactly dy long, which
the edge-length statistics rely on.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .graph import CfgGraph, Edge, ParseError, PreconditionError
from .ordering import LayeredGraph, RealSlot, Slot, _group

MODES = ("grouped", "indent")
COLLINEAR_EPS = 1e-6

Point = tuple[float, float]


@dataclass
class EdgeRoute:
    src: str
    dst: str
    kind: str  # tree | forward | cross | back
    points: list[Point]


@dataclass
class Layout:
    """Final node coordinates and edge polylines; the unit consumed by
    metrics, SVG rendering, and the viewer."""

    dx: float
    dy: float
    mode: str
    nodes: list[str]
    pos: dict[str, Point]
    size: dict[str, tuple[float, float]]
    rank: dict[str, int]
    order: dict[str, int]
    routes: list[EdgeRoute]
    bbox: tuple[float, float, float, float]
    virtual_sink: str | None = None

    @property
    def num_ranks(self) -> int:
        return max(self.rank.values()) + 1 if self.rank else 0

    def route_of(self, edge: Edge) -> EdgeRoute:
        for route in self.routes:
            if (route.src, route.dst) == edge:
                return route
        raise KeyError(edge)

    def sinks(self) -> list[str]:
        with_out = {route.src for route in self.routes}
        return [n for n in self.nodes if n not in with_out]


def straighten_edges(lg: LayeredGraph, coords: dict[Slot, Point]) -> dict[Slot, Point]:
    """Align each chain's dummies on one shared x; real nodes stay put.

    Back-edge chains take the chain minimum, all others the maximum.
    """
    out = dict(coords)
    for edge, chain in lg.chains.items():
        if not chain:
            continue
        xs = [coords[slot][0] for slot in chain]
        shared = min(xs) if chain[0].back else max(xs)
        for slot in chain:
            out[slot] = (shared, coords[slot][1])
    return out


def assign_coordinates(lg: LayeredGraph, dx: float, dy: float, mode: str = "grouped") -> Layout:
    """Place every slot on the grid and de-normalize chains into polylines."""
    if mode not in MODES:
        raise PreconditionError(f"unknown coordinate mode {mode!r}; expected one of {MODES}")
    g = lg.graph
    for node in g.nodes:
        w, h = g.size_of(node)
        if w >= dx:
            raise PreconditionError(f"dx={dx} must exceed the width of node {node!r} ({w})")
        if h >= dy:
            raise PreconditionError(f"dy={dy} must exceed the height of node {node!r} ({h})")

    coords: dict[Slot, Point] = {}
    for r, layer in enumerate(lg.layers):
        back_count = sum(1 for slot in layer if _group(slot) == 0)
        for i, slot in enumerate(layer):
            if mode == "grouped":
                x = dx * (i - back_count)
            else:
                x = dx * i
            coords[slot] = (x, dy * r)
    coords = straighten_edges(lg, coords)

    pos = {n: coords[lg.real_slot(n)] for n in g.nodes}
    order: dict[str, int] = {}
    for layer in lg.layers:
        for i, slot in enumerate(layer):
            if isinstance(slot, RealSlot):
                order[slot.node] = i
    size = {n: g.size_of(n) for n in g.nodes}
    min_real_x = min(
        (pos[n][0] for n in g.nodes if n != g.virtual_sink),
        default=0.0,
    )

    routes: list[EdgeRoute] = []
    for edge in g.edges:
        src, dst = edge
        kind = lg.kinds[edge].value
        points = _route_points(lg, coords, pos, edge, kind, dx, mode, min_real_x)
        routes.append(EdgeRoute(src=src, dst=dst, kind=kind, points=points))

    bbox = _bounding_box(g, pos, size, routes)
    return Layout(
        dx=dx,
        dy=dy,
        mode=mode,
        nodes=list(g.nodes),
        pos=pos,
        size=size,
        rank=dict(lg.rank),
        order=order,
        routes=routes,
        bbox=bbox,
        virtual_sink=g.virtual_sink,
    )


def _route_points(
    lg: LayeredGraph,
    coords: dict[Slot, Point],
    pos: dict[str, Point],
    edge: Edge,
    kind: str,
    dx: float,
    mode: str,
    min_real_x: float,
) -> list[Point]:
    src, dst = edge
    if src == dst:
        return _self_loop_points(pos[src], dx, lg.graph.size_of(src), mode)
    chain = lg.chains.get(edge, [])
    if not chain and kind == "back":
        # Adjacent-rank back edge: no dummies to route through, so take a
        # two-bend detour left of both endpoints (and, in grouped mode,
        # left of the whole real-node column block).
        (x_u, y_u), (x_v, y_v) = pos[src], pos[dst]
        detour_x = min(x_u, x_v) - dx / 2
        if mode == "grouped":
            detour_x = min(detour_x, min_real_x - dx / 2)
        return [(x_u, y_u), (detour_x, y_u), (detour_x, y_v), (x_v, y_v)]
    points = [pos[src], *(coords[slot] for slot in chain), pos[dst]]
    return elide_collinear(points)


def _self_loop_points(center: Point, dx: float, size: tuple[float, float], mode: str) -> list[Point]:
    x, y = center
    reach = dx / 2
    lift = size[1] / 2 + 10.0
    side = -1.0 if mode == "grouped" else 1.0
    return [
        (x, y),
        (x + side * reach, y),
        (x + side * reach, y - lift),
        (x, y - lift),
        (x, y),
    ]


def elide_collinear(points: list[Point], eps: float = COLLINEAR_EPS) -> list[Point]:
    """Drop interior points whose removal moves the polyline by less than eps."""
    if len(points) <= 2:
        return list(points)
    kept: list[Point] = [points[0]]
    for i in range(1, len(points) - 1):
        prev = kept[-1]
        cur = points[i]
        nxt = points[i + 1]
        if _point_line_distance(cur, prev, nxt) > eps:
            kept.append(cur)
    kept.append(points[-1])
    return kept


def _point_line_distance(p: Point, a: Point, b: Point) -> float:
    ax, ay = a
    bx, by = b
    px, py = p
    vx, vy = bx - ax, by - ay
    length = (vx * vx + vy * vy) ** 0.5
    if length == 0.0:
        return ((px - ax) ** 2 + (py - ay) ** 2) ** 0.5
    return abs(vx * (py - ay) - vy * (px - ax)) / length


def _bounding_box(
    g: CfgGraph,
    pos: dict[str, Point],
    size: dict[str, tuple[float, float]],
    routes: list[EdgeRoute],
) -> tuple[float, float, float, float]:
    xs: list[float] = []
    ys: list[float] = []
    for n in g.nodes:
        (x, y), (w, h) = pos[n], size[n]
        xs += [x - w / 2, x + w / 2]
        ys += [y - h / 2, y + h / 2]
    for route in routes:
        for x, y in route.points:
            xs.append(x)
            ys.append(y)
    if not xs:
        return (0.0, 0.0, 0.0, 0.0)
    return (min(xs), min(ys), max(xs), max(ys))


def layout_to_json(layout: Layout) -> str:
    """Serialize with the canonical key order shared by metrics, the SVG
    renderer, and the viewer. The virtual sink, when present, is the
    zero-sized node."""
    doc = {
        "config": {"dx": layout.dx, "dy": layout.dy, "mode": layout.mode},
        "bbox": list(layout.bbox),
        "nodes": [
            {
                "id": n,
                "x": layout.pos[n][0],
                "y": layout.pos[n][1],
                "w": layout.size[n][0],
                "h": layout.size[n][1],
                "rank": layout.rank[n],
                "ord": layout.order[n],
            }
            for n in layout.nodes
        ],
        "edges": [
            {
                "src": route.src,
                "dst": route.dst,
                "kind": route.kind,
                "points": [[x, y] for x, y in route.points],
            }
            for route in layout.routes
        ],
    }
    return json.dumps(doc, indent=1)


def layout_from_json(text: str) -> Layout:
    """Parse and validate Layout JSON; raises ParseError on schema violations."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("layout JSON must be an object")
    try:
        config = doc["config"]
        dx = float(config["dx"])
        dy = float(config["dy"])
        mode = str(config["mode"])
        bbox_raw = doc["bbox"]
        nodes_raw = doc["nodes"]
        edges_raw = doc["edges"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"layout JSON is missing a required key: {exc}") from exc
    if not isinstance(nodes_raw, list) or not isinstance(edges_raw, list):
        raise ParseError("layout JSON 'nodes' and 'edges' must be arrays")
    if not isinstance(bbox_raw, list) or len(bbox_raw) != 4:
        raise ParseError("layout JSON 'bbox' must be [x0, y0, x1, y1]")
    nodes: list[str] = []
    pos: dict[str, Point] = {}
    size: dict[str, tuple[float, float]] = {}
    rank: dict[str, int] = {}
    order: dict[str, int] = {}
    virtual_sink: str | None = None
    for item in nodes_raw:
        try:
            nid = str(item["id"])
            nodes.append(nid)
            pos[nid] = (float(item["x"]), float(item["y"]))
            size[nid] = (float(item["w"]), float(item["h"]))
            rank[nid] = int(item["rank"])
            order[nid] = int(item["ord"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad layout node entry {item!r}: {exc}") from exc
        if size[nid] == (0.0, 0.0) and virtual_sink is None:
            virtual_sink = nid
    routes: list[EdgeRoute] = []
    for item in edges_raw:
        try:
            points = [(float(x), float(y)) for x, y in item["points"]]
            route = EdgeRoute(src=str(item["src"]), dst=str(item["dst"]),
                              kind=str(item["kind"]), points=points)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad layout edge entry {item!r}: {exc}") from exc
        if len(route.points) < 2:
            raise ParseError(f"edge {route.src}->{route.dst} needs at least 2 points")
        if route.src not in pos or route.dst not in pos:
            raise ParseError(f"edge {route.src}->{route.dst} references unknown nodes")
        routes.append(route)
    return Layout(
        dx=dx,
        dy=dy,
        mode=mode,
        nodes=nodes,
        pos=pos,
        size=size,
        rank=rank,
        order=order,
        routes=routes,
        bbox=(float(bbox_raw[0]), float(bbox_raw[1]), float(bbox_raw[2]), float(bbox_raw[3])),
        virtual_sink=virtual_sink,
    )

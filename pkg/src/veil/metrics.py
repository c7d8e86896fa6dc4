"""Layout aesthetics measurements over Layout values from any tool.

Every measurement is a pure function of a Layout. Ratio-valued metrics
stay in [0, 1]; length-valued metrics are in pixels. Natural logarithm
is used wherever a formula takes a log. The virtual sink (the zero-sized
node, when present) is excluded from the node-based measurements but its
funnel edges still count as routes.
"""

from __future__ import annotations

import json
import math
import statistics
from dataclasses import dataclass, field, asdict

import numpy as np

from .coords import EdgeRoute, Layout, Point

BEND_EPS = 0.5
MIN_PAIR_DISTANCE = 2.0
MIN_LOG_DISTANCE = 0.1


def _real_nodes(layout: Layout) -> list[str]:
    return [n for n in layout.nodes if n != layout.virtual_sink]


def _segments(route: EdgeRoute) -> list[tuple[Point, Point]]:
    return [
        (a, b)
        for a, b in zip(route.points, route.points[1:])
        if a != b
    ]


def node_orthogonality(layout: Layout) -> float:
    """How densely the nodes fill their own grid: |V| / (columns x rows).

    Grid dimensions come from the distinct node-center coordinates after
    snapping to a 1 px lattice.
    """
    nodes = _real_nodes(layout)
    if not nodes:
        return 1.0
    xs = {round(layout.pos[n][0]) for n in nodes}
    ys = {round(layout.pos[n][1]) for n in nodes}
    return len(nodes) / (len(xs) * len(ys))


def edge_orthogonality(layout: Layout) -> float:
    """Mean closeness of edge segments to horizontal or vertical."""
    deviations: list[float] = []
    for route in layout.routes:
        for (x1, y1), (x2, y2) in _segments(route):
            theta = math.degrees(math.atan2(y2 - y1, x2 - x1)) % 180.0
            deviations.append(min(theta, abs(90.0 - theta), 180.0 - theta) / 45.0)
    if not deviations:
        return 1.0
    return 1.0 - sum(deviations) / len(deviations)


def _orient(a: Point, b: Point, c: Point) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _proper_crossing(p1: Point, p2: Point, p3: Point, p4: Point) -> bool:
    d1 = _orient(p3, p4, p1)
    d2 = _orient(p3, p4, p2)
    d3 = _orient(p1, p2, p3)
    d4 = _orient(p1, p2, p4)
    return d1 * d2 < 0 and d3 * d4 < 0


def _collinear_overlap(p1: Point, p2: Point, p3: Point, p4: Point) -> bool:
    if _orient(p1, p2, p3) != 0 or _orient(p1, p2, p4) != 0:
        return False
    # Project on the dominant axis and require an overlap longer than a point.
    if abs(p2[0] - p1[0]) >= abs(p2[1] - p1[1]):
        a_lo, a_hi = sorted((p1[0], p2[0]))
        b_lo, b_hi = sorted((p3[0], p4[0]))
    else:
        a_lo, a_hi = sorted((p1[1], p2[1]))
        b_lo, b_hi = sorted((p3[1], p4[1]))
    return min(a_hi, b_hi) - max(a_lo, b_lo) > 0


def segment_pair_crosses(p1: Point, p2: Point, p3: Point, p4: Point) -> bool:
    """Crossing rule shared with the brute-force oracle: a proper interior
    intersection, or a collinear overlap of positive length. Touching at a
    segment endpoint (shared node anchors, bend contacts) does not count."""
    return _proper_crossing(p1, p2, p3, p4) or _collinear_overlap(p1, p2, p3, p4)


def count_crossings(layout: Layout) -> int:
    """Number of interior intersection points between segments of distinct edges."""
    segs: list[tuple[int, Point, Point, float, float, float, float]] = []
    for idx, route in enumerate(layout.routes):
        for a, b in _segments(route):
            x_lo, x_hi = sorted((a[0], b[0]))
            y_lo, y_hi = sorted((a[1], b[1]))
            segs.append((idx, a, b, x_lo, x_hi, y_lo, y_hi))
    total = 0
    for i in range(len(segs)):
        ei, a1, b1, xl1, xh1, yl1, yh1 = segs[i]
        for j in range(i + 1, len(segs)):
            ej, a2, b2, xl2, xh2, yl2, yh2 = segs[j]
            if ei == ej:
                continue
            if xl1 > xh2 or xl2 > xh1 or yl1 > yh2 or yl2 > yh1:
                continue
            if segment_pair_crosses(a1, b1, a2, b2):
                total += 1
    return total


def count_bends(layout: Layout, eps: float = BEND_EPS) -> int:
    """Interior polyline points that deviate from the line through their neighbors."""
    total = 0
    for route in layout.routes:
        pts = route.points
        for i in range(1, len(pts) - 1):
            if _point_line_distance(pts[i], pts[i - 1], pts[i + 1]) > eps:
                total += 1
    return total


def _point_line_distance(p: Point, a: Point, b: Point) -> float:
    vx, vy = b[0] - a[0], b[1] - a[1]
    norm = math.hypot(vx, vy)
    if norm == 0.0:
        return math.hypot(p[0] - a[0], p[1] - a[1])
    return abs(vx * (p[1] - a[1]) - vy * (p[0] - a[0])) / norm


def _arc_length(route: EdgeRoute) -> float:
    return sum(math.hypot(b[0] - a[0], b[1] - a[1]) for a, b in zip(route.points, route.points[1:]))


def edge_length_stats(layout: Layout) -> tuple[float, float, float, float]:
    """(total, max, median, mad_log) of polyline arc lengths.

    The median of an even count is the mean of the central pair; mad_log is
    the median absolute deviation of natural-log lengths from the log of
    the median length.
    """
    lengths = [_arc_length(route) for route in layout.routes]
    if not lengths:
        return (0.0, 0.0, 0.0, 0.0)
    total = sum(lengths)
    median = statistics.median(lengths)
    if median <= 0.0:
        mad_log = 0.0
    else:
        log_median = math.log(median)
        mad_log = statistics.median(abs(math.log(v) - log_median) for v in lengths if v > 0.0)
    return (total, max(lengths), median, mad_log)


def graph_area(layout: Layout) -> float:
    """Bounding-box area over node boxes and edge polylines."""
    xs: list[float] = []
    ys: list[float] = []
    for n in layout.nodes:
        (x, y), (w, h) = layout.pos[n], layout.size[n]
        xs += [x - w / 2, x + w / 2]
        ys += [y - h / 2, y + h / 2]
    for route in layout.routes:
        for x, y in route.points:
            xs.append(x)
            ys.append(y)
    if not xs:
        return 0.0
    return (max(xs) - min(xs)) * (max(ys) - min(ys))


def symmetry_tension(layout: Layout, unit_length: float | None = None) -> tuple[float, float]:
    """Spring-force tension per node: repulsion from every other node plus
    successor-minus-predecessor attraction; returns (sum, median) of the
    per-node force magnitudes.

    Displacements of less than 2 px are clamped, as is log distance below
    0.1, to keep the force finite on overlapping nodes.
    """
    unit = float(unit_length if unit_length is not None else layout.dy)
    nodes = _real_nodes(layout)
    if len(nodes) < 2:
        return (0.0, 0.0)
    index = {n: i for i, n in enumerate(nodes)}
    pos = np.array([layout.pos[n] for n in nodes], dtype=float)
    delta = pos[:, None, :] - pos[None, :, :]  # delta[v, w] = pos(v) - pos(w)
    dist = np.maximum(np.linalg.norm(delta, axis=2), MIN_PAIR_DISTANCE)
    np.fill_diagonal(dist, 1.0)
    unit_vec = delta / dist[:, :, None]
    log_dist = np.maximum(np.log(dist), MIN_LOG_DISTANCE)

    repulse_mag = unit * unit / log_dist
    np.fill_diagonal(repulse_mag, 0.0)
    force = (unit_vec * repulse_mag[:, :, None]).sum(axis=1)

    attract_mag = (log_dist ** 2) / unit
    for route in layout.routes:
        if route.src not in index or route.dst not in index or route.src == route.dst:
            continue
        u, w = index[route.src], index[route.dst]
        force[u] += unit_vec[u, w] * attract_mag[u, w]  # successor pull on u
        force[w] -= unit_vec[w, u] * attract_mag[w, u]  # predecessor push on w
    magnitudes = np.linalg.norm(force, axis=1)
    return (float(magnitudes.sum()), float(np.median(magnitudes)))


def consistent_flow(layout: Layout) -> float:
    """Share of edges running from a lower to a higher rank index."""
    if not layout.routes:
        return 1.0
    down = sum(1 for r in layout.routes if layout.rank[r.src] < layout.rank[r.dst])
    return down / len(layout.routes)


def happens_before_score(layout: Layout) -> float | None:
    """Relative rank of the program exit; 1.0 means the exit sits on the
    bottom rank. None when the layout has no unique sink."""
    sinks = layout.sinks()
    if len(sinks) != 1:
        return None
    num_ranks = layout.num_ranks
    if num_ranks <= 1:
        return 1.0
    return layout.rank[sinks[0]] / (num_ranks - 1)


def _vertical_segments(route: EdgeRoute) -> list[tuple[float, float, float]]:
    """(x, y_lo, y_hi) for each exactly-vertical segment."""
    out = []
    for (x1, y1), (x2, y2) in _segments(route):
        if x1 == x2 and y1 != y2:
            out.append((x1, min(y1, y2), max(y1, y2)))
    return out


def _y_extent(route: EdgeRoute) -> tuple[float, float]:
    ys = [y for _, y in route.points]
    return (min(ys), max(ys))


def _pair_distance(a: EdgeRoute, b: EdgeRoute, lo: float, hi: float) -> float:
    va = [s for s in _vertical_segments(a) if s[1] < hi and s[2] > lo]
    vb = [s for s in _vertical_segments(b) if s[1] < hi and s[2] > lo]
    if va and vb:
        return min(abs(xa - xb) for xa, _, _ in va for xb, _, _ in vb)
    return _polyline_distance(a.points, b.points)


def _point_segment_distance(p: Point, a: Point, b: Point) -> float:
    ax, ay = a
    bx, by = b
    px, py = p
    vx, vy = bx - ax, by - ay
    norm_sq = vx * vx + vy * vy
    if norm_sq == 0.0:
        return math.hypot(px - ax, py - ay)
    t = max(0.0, min(1.0, ((px - ax) * vx + (py - ay) * vy) / norm_sq))
    return math.hypot(px - (ax + t * vx), py - (ay + t * vy))


def _polyline_distance(a: list[Point], b: list[Point]) -> float:
    best = math.inf
    for p in a:
        for s1, s2 in zip(b, b[1:]):
            best = min(best, _point_segment_distance(p, s1, s2))
    for p in b:
        for s1, s2 in zip(a, a[1:]):
            best = min(best, _point_segment_distance(p, s1, s2))
    return best


def edge_grouping_distance(layout: Layout) -> tuple[float | None, float | None, float | None]:
    """(pooled, back-only, forward-only) medians of the minimal distances
    between same-class long edges whose y ranges overlap.

    Back edges pair with back edges; forward edges pair when their polyline
    spans at least two rank gaps vertically. None when a class (or the
    pool) has no eligible pair.
    """
    backs = [r for r in layout.routes if r.kind == "back" and r.src != r.dst]
    long_span = 2 * layout.dy
    forwards = [
        r for r in layout.routes
        if r.kind != "back" and (_y_extent(r)[1] - _y_extent(r)[0]) >= long_span
    ]

    def class_distances(routes: list[EdgeRoute]) -> list[float]:
        out = []
        for i in range(len(routes)):
            lo_i, hi_i = _y_extent(routes[i])
            for j in range(i + 1, len(routes)):
                lo_j, hi_j = _y_extent(routes[j])
                lo, hi = max(lo_i, lo_j), min(hi_i, hi_j)
                if lo < hi:
                    out.append(_pair_distance(routes[i], routes[j], lo, hi))
        return out

    back_d = class_distances(backs)
    fwd_d = class_distances(forwards)
    pooled = back_d + fwd_d
    return (
        statistics.median(pooled) if pooled else None,
        statistics.median(back_d) if back_d else None,
        statistics.median(fwd_d) if fwd_d else None,
    )


@dataclass
class MetricsReport:
    node_orthogonality: float
    edge_orthogonality: float
    crossings: int
    bends: int
    mad_log_edge_length: float
    edge_length_total: float
    edge_length_max: float
    edge_length_median: float
    area: float
    tension_sum: float
    tension_median: float
    consistent_flow: float
    happens_before: float | None
    grouping_distance_median: float | None
    grouping_distance_median_back: float | None
    grouping_distance_median_forward: float | None
    layout_time_ms: float | None = None
    notes: dict[str, str] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=1)

    @classmethod
    def from_json(cls, text: str) -> "MetricsReport":
        doc = json.loads(text)
        return cls(**doc)

    def as_rows(self) -> list[tuple[str, str]]:
        def fmt(value) -> str:
            if value is None:
                return "absent"
            if isinstance(value, float):
                return f"{value:.6g}"
            return str(value)

        rows = [(key, fmt(value)) for key, value in asdict(self).items() if key != "notes"]
        for key, value in self.notes.items():
            rows.append((f"note:{key}", value))
        return rows

    def to_table(self) -> str:
        rows = self.as_rows()
        width = max(len(name) for name, _ in rows)
        return "\n".join(f"{name:<{width}}  {value}" for name, value in rows)


def metrics_report(
    layout: Layout,
    layout_time_ms: float | None = None,
    bend_eps: float = BEND_EPS,
) -> MetricsReport:
    """Run the full suite; absences become None fields plus a note."""
    total, longest, median, mad_log = edge_length_stats(layout)
    tension_sum, tension_median = symmetry_tension(layout)
    hb = happens_before_score(layout)
    pooled, back_med, fwd_med = edge_grouping_distance(layout)
    notes: dict[str, str] = {}
    if hb is None:
        notes["happens_before"] = "no unique sink in the layout"
    if pooled is None:
        notes["grouping_distance"] = "fewer than one eligible edge pair"
    if layout.mode == "imported":
        notes["ranks"] = "derived from y coordinates"
    return MetricsReport(
        node_orthogonality=node_orthogonality(layout),
        edge_orthogonality=edge_orthogonality(layout),
        crossings=count_crossings(layout),
        bends=count_bends(layout, bend_eps),
        mad_log_edge_length=mad_log,
        edge_length_total=total,
        edge_length_max=longest,
        edge_length_median=median,
        area=graph_area(layout),
        tension_sum=tension_sum,
        tension_median=tension_median,
        consistent_flow=consistent_flow(layout),
        happens_before=hb,
        grouping_distance_median=pooled,
        grouping_distance_median_back=back_med,
        grouping_distance_median_forward=fwd_med,
        layout_time_ms=layout_time_ms,
        notes=notes,
    )

"""Standalone SVG rendering of a Layout.

Nodes become rounded rectangles labeled with their id, edges become
polylines with arrowheads. Back edges get a dashed stroke and their own
color so loops stand out. The virtual sink and its funnel edges are not
drawn. Output bytes are deterministic for a given layout.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .coords import Layout, Point

MARGIN = 20.0
CORNER_RADIUS = 6.0
EDGE_COLOR = "#444444"
BACK_COLOR = "#c0392b"
NODE_FILL = "#f2f4f7"
NODE_STROKE = "#333333"
FONT_SIZE = 13


def _fmt(value: float) -> str:
    rounded = round(value, 3)
    if rounded == int(rounded):
        return str(int(rounded))
    return f"{rounded:g}"


def _clip_endpoint(anchor: Point, toward: Point, size: tuple[float, float]) -> Point:
    """Move an endpoint from the node center to the node box boundary."""
    (x, y), (tx, ty) = anchor, toward
    w, h = size
    dx, dy = tx - x, ty - y
    if (dx == 0 and dy == 0) or (w == 0 and h == 0):
        return anchor
    t_candidates = [1.0]
    if dx != 0:
        t_candidates.append((w / 2) / abs(dx))
    if dy != 0:
        t_candidates.append((h / 2) / abs(dy))
    t = min(t_candidates)
    return (x + dx * t, y + dy * t)


def _clipped_points(layout: Layout, points: list[Point], src: str, dst: str) -> list[Point]:
    pts = list(points)
    if len(pts) >= 2:
        pts[0] = _clip_endpoint(pts[0], pts[1], layout.size[src])
        pts[-1] = _clip_endpoint(pts[-1], pts[-2], layout.size[dst])
    return pts


def render_svg(layout: Layout) -> str:
    """Render to an SVG document string."""
    skip = {layout.virtual_sink} if layout.virtual_sink is not None else set()
    drawn_nodes = [n for n in layout.nodes if n not in skip]
    drawn_routes = [r for r in layout.routes if r.src not in skip and r.dst not in skip]

    xs: list[float] = []
    ys: list[float] = []
    for n in drawn_nodes:
        (x, y), (w, h) = layout.pos[n], layout.size[n]
        xs += [x - w / 2, x + w / 2]
        ys += [y - h / 2, y + h / 2]
    for route in drawn_routes:
        for x, y in route.points:
            xs.append(x)
            ys.append(y)
    if not xs:
        xs = ys = [0.0]
    x0, y0 = min(xs) - MARGIN, min(ys) - MARGIN
    width, height = max(xs) - min(xs) + 2 * MARGIN, max(ys) - min(ys) + 2 * MARGIN

    parts: list[str] = []
    parts.append(
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(width)} {_fmt(height)}">'
    )
    parts.append(
        "<defs>"
        f'<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" '
        f'markerHeight="7" orient="auto-start-reverse">'
        f'<path d="M 0 0 L 10 5 L 0 10 z" fill="{EDGE_COLOR}"/></marker>'
        f'<marker id="arrow-back" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" '
        f'markerHeight="7" orient="auto-start-reverse">'
        f'<path d="M 0 0 L 10 5 L 0 10 z" fill="{BACK_COLOR}"/></marker>'
        "</defs>"
    )
    parts.append(
        f'<style>text{{font-family:monospace;font-size:{FONT_SIZE}px;'
        "text-anchor:middle;dominant-baseline:central}"
        f".edge{{fill:none;stroke:{EDGE_COLOR};stroke-width:1.5}}"
        f".edge.back{{stroke:{BACK_COLOR};stroke-dasharray:6 3}}"
        f".node{{fill:{NODE_FILL};stroke:{NODE_STROKE};stroke-width:1.2}}</style>"
    )
    for route in drawn_routes:
        pts = _clipped_points(layout, route.points, route.src, route.dst)
        points_attr = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
        back = " back" if route.kind == "back" else ""
        marker = "arrow-back" if route.kind == "back" else "arrow"
        parts.append(
            f'<polyline class="edge{back}" points="{points_attr}" marker-end="url(#{marker})"/>'
        )
    for n in drawn_nodes:
        (x, y), (w, h) = layout.pos[n], layout.size[n]
        parts.append(
            f'<rect class="node" x="{_fmt(x - w / 2)}" y="{_fmt(y - h / 2)}" '
            f'width="{_fmt(w)}" height="{_fmt(h)}" rx="{_fmt(CORNER_RADIUS)}"/>'
        )
        parts.append(f'<text x="{_fmt(x)}" y="{_fmt(y)}">{escape(n)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"

from __future__ import annotations

import pytest

from veil import (
    CfgGraph,
    LayoutConfig,
    PreconditionError,
    classify_edges,
    dominator_info,
    ensure_single_sink,
    assign_layers,
    layout,
    layout_from_json,
    layout_to_json,
    minimize_crossings,
    normalize_edges,
    straighten_edges,
)
from veil.coords import assign_coordinates, elide_collinear


def pipeline_layered(g: CfgGraph):
    g = ensure_single_sink(g)
    cls = classify_edges(g)
    dom = dominator_info(g)
    ra = assign_layers(g, cls, dom)
    return minimize_crossings(normalize_edges(g, cls, ra))


def test_grouped_formula_direct_substitution():
    # A slot with in-layer index 2 in a rank holding one back dummy, at
    # rank 3 with dx=100, dy=80, sits at (100*(2-1), 80*3).
    lg = pipeline_layered(
        CfgGraph(nodes=["a"], edges=[], entry="a")
    )
    # Substitute the formula directly rather than building a full fixture.
    dx, dy, ord_, back_count, rank = 100.0, 80.0, 2, 1, 3
    assert (dx * (ord_ - back_count), dy * rank) == (100.0, 240.0)
    assert (dx * ord_, dy * rank) == (200.0, 240.0)


def test_chain_layout_all_vertical(chain3):
    out = layout(chain3, LayoutConfig(dx=120, dy=80))
    xs = {out.pos[n][0] for n in chain3.nodes}
    assert xs == {0.0}
    assert [out.pos[n][1] for n in ("a", "b", "c")] == [0.0, 80.0, 160.0]
    for route in out.routes:
        assert len(route.points) == 2
        assert route.points[0][0] == route.points[1][0]


def test_straighten_back_chain_takes_min():
    lg = pipeline_layered(
        CfgGraph(
            nodes=["1", "2", "3", "4", "5", "6"],
            edges=[("1", "2"), ("2", "3"), ("3", "4"), ("4", "5"), ("5", "2"), ("2", "6")],
            entry="1",
        )
    )
    coords = {slot: (0.0, 90.0 * r) for r, layer in enumerate(lg.layers) for slot in layer}
    chain = lg.chains[("5", "2")]
    # Give the back chain mixed x values; min must win.
    for i, slot in enumerate(chain):
        coords[slot] = (-100.0 * (i + 1), coords[slot][1])
    out = straighten_edges(lg, coords)
    xs = {out[slot][0] for slot in chain}
    assert xs == {-100.0 * len(chain)}


def test_straighten_forward_chain_takes_max():
    g = CfgGraph(
        nodes=["a", "b", "c", "d"],
        edges=[("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")],
        entry="a",
    )
    lg = pipeline_layered(g)
    chain = lg.chains[("a", "d")]
    coords = {slot: (100.0 * (i + 1), float(i)) for i, slot in enumerate(chain)}
    coords[lg.real_slot("a")] = (0.0, 0.0)
    coords[lg.real_slot("d")] = (0.0, 3.0)
    out = straighten_edges(lg, coords)
    assert {out[s][0] for s in chain} == {100.0 * len(chain)}
    assert out[lg.real_slot("a")] == (0.0, 0.0)


def test_single_dummy_chain_unchanged():
    g = CfgGraph(nodes=["a", "b", "c"], edges=[("a", "b"), ("b", "c"), ("a", "c")], entry="a")
    lg = pipeline_layered(g)
    chain = lg.chains[("a", "c")]
    assert len(chain) == 1
    coords = {chain[0]: (120.0, 90.0), lg.real_slot("a"): (0.0, 0.0),
              lg.real_slot("b"): (0.0, 90.0), lg.real_slot("c"): (0.0, 180.0)}
    out = straighten_edges(lg, coords)
    assert out[chain[0]] == (120.0, 90.0)


def test_spacing_precondition_rejected():
    g = CfgGraph(nodes=["a"], edges=[], entry="a", sizes={"a": (150.0, 50.0)})
    lg = pipeline_layered(g)
    with pytest.raises(PreconditionError, match="a"):
        assign_coordinates(lg, dx=120.0, dy=90.0)


def test_back_edges_grouped_left(while_loop):
    out = layout(while_loop)
    min_real_x = min(out.pos[n][0] for n in while_loop.nodes)
    back_routes = [r for r in out.routes if r.kind == "back"]
    assert len(back_routes) == 1
    interior_xs = [x for x, _ in back_routes[0].points[1:-1]]
    assert interior_xs and all(x < min_real_x for x in interior_xs)


def test_back_edge_travels_net_upward(while_loop):
    out = layout(while_loop)
    for route in out.routes:
        if route.kind == "back" and route.src != route.dst:
            assert route.points[-1][1] < route.points[0][1]


def test_nested_loops_back_edge_order(loop_nest):
    out = layout(loop_nest)
    back = {(r.src, r.dst): r for r in out.routes if r.kind == "back"}
    assert set(back) == {("b", "ih"), ("ol", "oh")}
    inner_x = min(x for x, _ in back[("b", "ih")].points)
    outer_x = min(x for x, _ in back[("ol", "oh")].points)
    min_real_x = min(out.pos[n][0] for n in loop_nest.nodes)
    assert outer_x < inner_x < min_real_x


def test_indent_mode_moves_back_dummies_right(while_loop):
    grouped = layout(while_loop, LayoutConfig(mode="grouped"))
    indent = layout(while_loop, LayoutConfig(mode="indent"))
    assert min(x for x, _ in grouped.route_of(("5", "2")).points) < 0
    assert min(x for x, _ in indent.route_of(("5", "2")).points) >= 0


def test_self_loop_lobe():
    g = CfgGraph(nodes=["a", "b", "c"], edges=[("a", "b"), ("b", "b"), ("b", "c")], entry="a")
    out = layout(g)
    route = out.route_of(("b", "b"))
    assert route.points[0] == route.points[-1] == out.pos["b"]
    assert min(x for x, _ in route.points) == out.pos["b"][0] - out.dx / 2


def test_no_node_overlap(loop_nest):
    out = layout(loop_nest)
    boxes = []
    for n in loop_nest.nodes:
        (x, y), (w, h) = out.pos[n], out.size[n]
        boxes.append((x - w / 2, y - h / 2, x + w / 2, y + h / 2))
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            a, b = boxes[i], boxes[j]
            overlap = a[0] < b[2] and b[0] < a[2] and a[1] < b[3] and b[1] < a[3]
            assert not overlap


def test_elide_collinear():
    pts = [(0.0, 0.0), (0.0, 1.0), (0.0, 2.0), (1.0, 3.0)]
    assert elide_collinear(pts) == [(0.0, 0.0), (0.0, 2.0), (1.0, 3.0)]
    assert elide_collinear([(0.0, 0.0), (1.0, 1.0)]) == [(0.0, 0.0), (1.0, 1.0)]


def test_single_node_layout():
    g = CfgGraph(nodes=["a"], edges=[], entry="a")
    out = layout(g)
    assert out.pos["a"] == (0.0, 0.0)
    assert out.routes == []


def test_layout_json_round_trip(loop_nest):
    out = layout(loop_nest)
    text = layout_to_json(out)
    again = layout_from_json(text)
    assert again.pos == out.pos
    assert again.rank == out.rank
    assert [r.points for r in again.routes] == [r.points for r in out.routes]
    assert layout_to_json(again) == text


def test_layout_grid_positions(loop_nest):
    out = layout(loop_nest)
    for n in loop_nest.nodes:
        x, y = out.pos[n]
        assert x % out.dx == 0
        assert y == out.dy * out.rank[n]


def test_virtual_sink_zero_sized_in_json():
    g = CfgGraph(nodes=["a", "x", "y"], edges=[("a", "x"), ("a", "y")], entry="a")
    out = layout(g)
    assert out.virtual_sink is not None
    assert out.size[out.virtual_sink] == (0.0, 0.0)
    again = layout_from_json(layout_to_json(out))
    assert again.virtual_sink == out.virtual_sink

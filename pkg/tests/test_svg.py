from __future__ import annotations

from veil import CfgGraph, layout, render_svg


def test_chain_svg_structure(chain3):
    svg = render_svg(layout(chain3))
    assert svg.startswith("<svg")
    assert svg.count("<rect") == 3
    assert svg.count("<polyline") == 2
    assert "0,65" in svg  # first edge clipped at the bottom of node a (h=50)


def test_back_edge_marked(while_loop):
    svg = render_svg(layout(while_loop))
    assert svg.count('class="edge back"') == 1
    assert "arrow-back" in svg


def test_deterministic_bytes(loop_nest):
    a = render_svg(layout(loop_nest))
    b = render_svg(layout(loop_nest))
    assert a == b


def test_virtual_sink_not_drawn():
    g = CfgGraph(nodes=["a", "x", "y"], edges=[("a", "x"), ("a", "y")], entry="a")
    out = layout(g)
    svg = render_svg(out)
    assert svg.count("<rect") == 3
    # Funnel edges into the invisible sink are skipped too.
    assert svg.count("<polyline") == 2
    assert out.virtual_sink not in svg


def test_labels_escaped():
    g = CfgGraph(nodes=["a<b", "c"], edges=[("a<b", "c")], entry="a<b")
    svg = render_svg(layout(g))
    assert "a&lt;b" in svg

from __future__ import annotations

import pytest

from veil import ParseError, import_graphviz_plain, metrics_report
from veil.gvimport import derive_ranks

PLAIN = """\
graph 1 2.5 3.0
node a 1.25 2.75 1.0 0.5 a solid box black lightgrey
node b 1.25 1.75 1.0 0.5 b solid box black lightgrey
node c 1.25 0.75 1.0 0.5 c solid box black lightgrey
edge a b 2 1.25 2.75 1.25 1.75 solid black
edge b c 2 1.25 1.75 1.25 0.75 solid black
edge c a 4 1.35 0.75 1.6 1.2 1.6 2.3 1.35 2.75 solid black
stop
"""


def test_import_basic_geometry():
    lay = import_graphviz_plain(PLAIN)
    assert lay.nodes == ["a", "b", "c"]
    assert lay.mode == "imported"
    # y flips: node a was highest in graphviz coordinates, so lowest y here.
    assert lay.pos["a"][1] < lay.pos["b"][1] < lay.pos["c"][1]
    assert lay.pos["a"][0] == pytest.approx(1.25 * 72)
    assert lay.size["a"] == (72.0, 36.0)


def test_import_derives_ranks_and_back_edges():
    lay = import_graphviz_plain(PLAIN)
    assert lay.rank == {"a": 0, "b": 1, "c": 2}
    kinds = {(r.src, r.dst): r.kind for r in lay.routes}
    assert kinds[("a", "b")] == "tree"
    assert kinds[("c", "a")] == "back"


def test_import_feeds_metrics():
    report = metrics_report(import_graphviz_plain(PLAIN))
    assert report.notes.get("ranks") == "derived from y coordinates"
    # The cycle c -> a leaves no sink, so happens-before is absent.
    assert report.happens_before is None
    assert "happens_before" in report.notes


def test_import_happens_before_on_chain():
    chain = "\n".join(line for line in PLAIN.splitlines() if not line.startswith("edge c a")) + "\n"
    report = metrics_report(import_graphviz_plain(chain))
    assert report.happens_before == 1.0


def test_derive_ranks_snapping():
    ranks = derive_ranks({"a": 0.0, "b": 2.0, "c": 100.0})
    assert ranks == {"a": 0, "b": 0, "c": 1}


def test_import_rejects_edge_before_graph_line():
    with pytest.raises(ParseError, match="graph line"):
        import_graphviz_plain("node a 1 1 1 1 a solid box black white\n")


def test_import_rejects_unknown_record():
    with pytest.raises(ParseError, match="unknown record"):
        import_graphviz_plain("graph 1 2 2\nblob\nstop\n")


def test_import_rejects_undeclared_edge_endpoint():
    text = "graph 1 2 2\nnode a 1 1 1 0.5 a solid box black white\nedge a z 2 1 1 1 0 solid black\nstop\n"
    with pytest.raises(ParseError, match="undeclared"):
        import_graphviz_plain(text)

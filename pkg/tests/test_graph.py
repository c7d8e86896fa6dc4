from __future__ import annotations

import pytest

from veil import CfgGraph, ParseError, PreconditionError, ensure_single_sink, parse_json, write_json


def test_parse_json_chain():
    g = parse_json('{"entry":"a","nodes":[{"id":"a"},{"id":"b"}],"edges":[{"src":"a","dst":"b"}]}')
    assert g.nodes == ["a", "b"]
    assert g.edges == [("a", "b")]
    assert g.entry == "a"


def test_parse_json_unknown_edge_endpoint():
    with pytest.raises(ParseError, match="z"):
        parse_json('{"entry":"a","nodes":[{"id":"a"}],"edges":[{"src":"a","dst":"z"}]}')


def test_parse_json_empty_nodes():
    with pytest.raises(ParseError, match="entry unresolvable"):
        parse_json('{"entry":"a","nodes":[],"edges":[]}')


def test_parse_json_missing_entry():
    with pytest.raises(ParseError, match="entry"):
        parse_json('{"nodes":[{"id":"a"}],"edges":[]}')


def test_parse_json_duplicate_node():
    with pytest.raises(ParseError, match="duplicate"):
        parse_json('{"entry":"a","nodes":[{"id":"a"},{"id":"a"}],"edges":[]}')


def test_parse_json_sizes_and_labels():
    g = parse_json(
        '{"entry":"a","nodes":[{"id":"a","label":"start","width":80,"height":40},{"id":"b"}],'
        '"edges":[{"src":"a","dst":"b"}]}'
    )
    assert g.labels["a"] == "start"
    assert g.size_of("a") == (80.0, 40.0)
    assert g.size_of("b") == (100.0, 50.0)


def test_write_json_round_trip(diamond):
    text = write_json(diamond)
    again = parse_json(text)
    assert again.nodes == diamond.nodes
    assert again.edges == diamond.edges
    assert again.entry == diamond.entry
    assert write_json(again) == text


def test_parallel_edges_collapse():
    g = CfgGraph(nodes=["a", "b"], edges=[("a", "b"), ("a", "b")], entry="a")
    assert g.edges == [("a", "b")]


def test_ensure_single_sink_adds_virtual_node():
    g = CfgGraph(
        nodes=["a", "x", "y"],
        edges=[("a", "x"), ("a", "y")],
        entry="a",
    )
    normalized = ensure_single_sink(g)
    assert normalized.virtual_sink is not None
    sink = normalized.virtual_sink
    assert normalized.sinks() == [sink]
    assert (("x", sink)) in normalized.edges
    assert (("y", sink)) in normalized.edges
    assert normalized.size_of(sink) == (0.0, 0.0)


def test_ensure_single_sink_identity_on_single_sink(chain3):
    assert ensure_single_sink(chain3) is chain3


def test_ensure_single_sink_idempotent():
    g = CfgGraph(nodes=["a", "x", "y"], edges=[("a", "x"), ("a", "y")], entry="a")
    once = ensure_single_sink(g)
    twice = ensure_single_sink(once)
    assert twice is once


def test_ensure_single_sink_rejects_sinkless():
    g = CfgGraph(nodes=["a", "b"], edges=[("a", "b"), ("b", "a")], entry="a")
    with pytest.raises(PreconditionError, match="sink"):
        ensure_single_sink(g)

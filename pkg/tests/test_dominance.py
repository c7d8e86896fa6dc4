from __future__ import annotations

import itertools
import random

import pytest

from veil import (
    CfgGraph,
    PreconditionError,
    dominator_info,
    dominator_tree,
    ensure_single_sink,
    post_dominator_tree,
)


def enumerate_dom_sets(nodes, edges, root):
    """Brute-force dominator sets: per node, the intersection of the node
    sets of every simple root-to-node path."""
    succ = {n: [] for n in nodes}
    for a, b in edges:
        succ[a].append(b)
    doms: dict[str, set | None] = {n: None for n in nodes}

    def walk(node, on_path):
        current = doms[node]
        if current is None:
            doms[node] = set(on_path)
        else:
            doms[node] = current & set(on_path)
        for nxt in succ[node]:
            if nxt not in on_path:
                walk(nxt, on_path + [nxt])

    walk(root, [root])
    return {n: s for n, s in doms.items() if s is not None}


def idom_from_sets(dom_sets):
    """The immediate dominator is the strict dominator dominated by all
    other strict dominators."""
    out = {}
    for node, doms in dom_sets.items():
        strict = doms - {node}
        if not strict:
            out[node] = node
            continue
        out[node] = max(strict, key=lambda d: len(dom_sets[d]) if d in dom_sets else 0)
    return out


def random_digraph(rng: random.Random, n: int) -> CfgGraph:
    nodes = [f"v{i}" for i in range(n)]
    edges = []
    for i in range(1, n):
        edges.append((nodes[rng.randrange(i)], nodes[i]))
    for _ in range(rng.randrange(0, n)):
        edges.append((rng.choice(nodes), rng.choice(nodes)))
    return CfgGraph(nodes=nodes, edges=edges, entry=nodes[0])


def test_chain_idoms(chain3):
    tree = dominator_tree(chain3)
    assert tree.idom == {"a": "a", "b": "a", "c": "b"}
    pdom = post_dominator_tree(chain3)
    assert pdom.idom == {"c": "c", "b": "c", "a": "b"}


def test_inverted_loop_post_dominators(inverted_loop):
    info = dominator_info(inverted_loop)
    for node in ("2", "3", "4"):
        assert info.post_dominates("5", node)
    assert not info.post_dominates("5", "6")


def test_dominates_relation_properties(diamond):
    info = dominator_info(diamond)
    for v in diamond.nodes:
        assert info.dominates(diamond.entry, v)
        assert info.dominates(v, v)
    pairs = [(a, b) for a in diamond.nodes for b in diamond.nodes if a != b]
    for a, b in pairs:
        assert not (info.dominates(a, b) and info.dominates(b, a))
    for a, b, c in itertools.permutations(diamond.nodes, 3):
        if info.dominates(a, b) and info.dominates(b, c):
            assert info.dominates(a, c)


def test_subtree_sizes_sum(diamond):
    tree = dominator_tree(diamond)
    for node, kids in tree.children.items():
        assert tree.subtree_size[node] == 1 + sum(tree.subtree_size[k] for k in kids)
    assert tree.subtree_size["a"] == 4


def test_post_dominators_reject_multi_sink():
    g = CfgGraph(nodes=["a", "x", "y"], edges=[("a", "x"), ("a", "y")], entry="a")
    with pytest.raises(PreconditionError, match="single-sink"):
        post_dominator_tree(g)


def test_random_graphs_match_path_enumeration():
    rng = random.Random(23)
    for _ in range(120):
        g = random_digraph(rng, rng.randint(2, 12))
        tree = dominator_tree(g)
        sets = enumerate_dom_sets(g.nodes, g.edges, g.entry)
        expected = idom_from_sets(sets)
        assert set(tree.idom) == set(expected)
        assert tree.idom == expected
        # dominates() must agree with membership in the enumerated sets.
        for b, doms in sets.items():
            for a in g.nodes:
                assert tree.dominates(a, b) == (a in doms)


def test_ipdom_matches_path_enumeration_on_reverse():
    rng = random.Random(29)
    for _ in range(60):
        g = ensure_single_sink_or_skip(random_digraph(rng, rng.randint(2, 10)))
        if g is None:
            continue
        pdom = post_dominator_tree(g)
        sink = g.sinks()[0]
        reversed_edges = [(b, a) for a, b in g.edges]
        sets = enumerate_dom_sets(g.nodes, reversed_edges, sink)
        expected = idom_from_sets(sets)
        assert pdom.idom == expected


def ensure_single_sink_or_skip(g: CfgGraph) -> CfgGraph | None:
    try:
        return ensure_single_sink(g)
    except PreconditionError:
        return None

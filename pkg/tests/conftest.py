from __future__ import annotations

import pytest

from veil import CfgGraph


@pytest.fixture
def chain3() -> CfgGraph:
    return CfgGraph(nodes=["a", "b", "c"], edges=[("a", "b"), ("b", "c")], entry="a")


@pytest.fixture
def diamond() -> CfgGraph:
    return CfgGraph(
        nodes=["a", "b", "c", "d"],
        edges=[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
        entry="a",
    )


@pytest.fixture
def inverted_loop() -> CfgGraph:
    """Do-while style loop: the condition check (node 5) sits at the end of
    the body and jumps back to the body start (node 2)."""
    return CfgGraph(
        nodes=["1", "2", "3", "4", "5", "6"],
        edges=[
            ("1", "2"),
            ("2", "3"),
            ("2", "4"),
            ("3", "5"),
            ("4", "5"),
            ("5", "2"),
            ("5", "6"),
        ],
        entry="1",
    )


@pytest.fixture
def while_loop() -> CfgGraph:
    """Regular for/while style loop: node 2 is the header, 3-5 the body,
    6 the exit reached straight from the header."""
    return CfgGraph(
        nodes=["1", "2", "3", "4", "5", "6"],
        edges=[
            ("1", "2"),
            ("2", "3"),
            ("3", "4"),
            ("4", "5"),
            ("5", "2"),
            ("2", "6"),
        ],
        entry="1",
    )


@pytest.fixture
def loop_nest() -> CfgGraph:
    """Two-level while nest: outer header oh, inner header ih, shared exit."""
    return CfgGraph(
        nodes=["a", "oh", "ih", "b", "ol", "x"],
        edges=[
            ("a", "oh"),
            ("oh", "ih"),
            ("ih", "b"),
            ("b", "ih"),
            ("ih", "ol"),
            ("ol", "oh"),
            ("oh", "x"),
        ],
        entry="a",
    )


@pytest.fixture
def irreducible() -> CfgGraph:
    """Goto-style graph: the cycle {a, b} has two entries, so the back edge
    target does not dominate its source."""
    return CfgGraph(
        nodes=["e", "a", "b", "x"],
        edges=[("e", "a"), ("e", "b"), ("a", "b"), ("b", "a"), ("a", "x")],
        entry="e",
    )

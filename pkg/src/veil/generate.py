"""Seeded generator of structured (reducible) CFGs for testing and benchmarks.

Graphs are composed from the classic structured-programming constructs:
straight-line sequences, if/else diamonds, single-exit while loops
(condition checked before the body), do-while loops (condition checked
after the body), and early exits that jump straight to the program exit.

Composition rules keep the emitted control flow column-clean, the way
compiler CFGs of structured loop kernels lay out: if/else branches are
straight-line sequences padded to equal length, loops and skip edges
never sit inside a branch, and exit jumps appear only in the top-level
chain. Construct spans mirror the rank arithmetic of layer assignment
(merges and loop exits land below the whole region they close, which can
exceed the region's node count), so siblings always cover each other's
ranks exactly.

The same seed always yields the same graph, and the builder records which
edges close a loop so tests have an independent back-edge oracle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graph import CfgGraph, Edge

ALL_CONSTRUCTS = ("sequence", "if_else", "while", "do_while", "early_exit")
SERIES_PARALLEL = ("sequence", "if_else", "while")
BRANCH_SAFE = ("sequence",)
LOOP_BODY_SAFE = ("sequence", "if_else", "while", "do_while")


@dataclass
class GeneratorInfo:
    """Construction bookkeeping: the loop-closing edges and construct trace."""

    back_edges: list[Edge] = field(default_factory=list)
    constructs: list[str] = field(default_factory=list)


@dataclass
class _Piece:
    first: str
    last: str
    span: int   # ranks the piece covers once laid out
    nodes: int  # nodes it contains; drives the merge and exit rank formulas


class _Builder:
    def __init__(self, rng: random.Random, max_depth: int, max_width: int,
                 constructs: tuple[str, ...], node_budget: int | None):
        self.rng = rng
        self.max_depth = max_depth
        self.max_width = max_width
        self.constructs = constructs
        self.node_budget = node_budget
        self.counter = 0
        self.nodes: list[str] = []
        self.edges: list[Edge] = []
        self.pending_exit_jumps: list[str] = []
        # A jump to the program exit spans every rank below it, so the
        # number of such edges is capped the way real functions cap early
        # returns; past the cap the construct degrades to a sequence.
        self.exit_jump_budget = 8
        self.info = GeneratorInfo()

    def new_node(self) -> str:
        name = f"n{self.counter}"
        self.counter += 1
        self.nodes.append(name)
        return name

    def edge(self, src: str, dst: str) -> None:
        self.edges.append((src, dst))

    def over_budget(self) -> bool:
        return self.node_budget is not None and len(self.nodes) >= self.node_budget

    def sequence(self, lo: int = 2) -> _Piece:
        length = self.rng.randint(lo, max(lo, self.max_width))
        first = self.new_node()
        last = first
        for _ in range(length - 1):
            nxt = self.new_node()
            self.edge(last, nxt)
            last = nxt
        return _Piece(first, last, length, length)

    def construct(self, depth: int, allowed: tuple[str, ...], skip_ok: bool) -> _Piece:
        choices = tuple(c for c in allowed if c in self.constructs) or ("sequence",)
        if depth <= 1 or self.over_budget():
            choices = ("sequence",)
        kind = self.rng.choice(choices)
        if kind == "early_exit" and self.exit_jump_budget <= 0:
            kind = "sequence"
        self.info.constructs.append(kind)
        if kind == "sequence":
            return self.sequence()
        if kind == "if_else":
            return self.if_else(depth, skip_ok)
        if kind == "while":
            return self.while_loop(depth)
        if kind == "do_while":
            return self.do_while_loop(depth)
        if kind == "early_exit":
            return self.early_exit()
        raise ValueError(f"unknown construct {kind!r}")

    def _pad_to_span(self, piece: _Piece, target: int) -> _Piece:
        last = piece.last
        extra = target - piece.span
        for _ in range(extra):
            nxt = self.new_node()
            self.edge(last, nxt)
            last = nxt
        return _Piece(piece.first, last, target, piece.nodes + max(extra, 0))

    def if_else(self, depth: int, skip_ok: bool) -> _Piece:
        split = self.new_node()
        if skip_ok and self.rng.random() < 0.25:
            # if-without-else: the skip edge runs straight to the merge.
            # Like loops, the long skip chain only stays clean where no
            # sibling column runs beside it, so branch bodies never get one.
            body = self.region(depth - 1, BRANCH_SAFE, skip_ok=False)
            merge = self.new_node()
            self.edge(split, body.first)
            self.edge(split, merge)
            self.edge(body.last, merge)
            drop = max(body.nodes + 2, body.span + 1)
            return _Piece(split, merge, drop + 1, body.nodes + 2)
        left = self.region(depth - 1, BRANCH_SAFE, skip_ok=False)
        right = self.region(depth - 1, BRANCH_SAFE, skip_ok=False)
        target = max(left.span, right.span)
        left = self._pad_to_span(left, target)
        right = self._pad_to_span(right, target)
        merge = self.new_node()
        self.edge(split, left.first)
        self.edge(split, right.first)
        self.edge(left.last, merge)
        self.edge(right.last, merge)
        drop = max(left.nodes + right.nodes + 2, target + 1)
        return _Piece(split, merge, drop + 1, left.nodes + right.nodes + 2)

    def while_loop(self, depth: int) -> _Piece:
        header = self.new_node()
        body = self.region(depth - 1, LOOP_BODY_SAFE, skip_ok=True)
        exit_node = self.new_node()
        self.edge(header, body.first)
        self.edge(header, exit_node)
        self.edge(body.last, header)
        self.info.back_edges.append((body.last, header))
        drop = max(body.nodes + 2, body.span + 1)
        return _Piece(header, exit_node, drop + 1, body.nodes + 2)

    def do_while_loop(self, depth: int) -> _Piece:
        body = self.region(depth - 1, LOOP_BODY_SAFE, skip_ok=True)
        cond = self.new_node()
        self.edge(body.last, cond)
        self.edge(cond, body.first)
        self.info.back_edges.append((cond, body.first))
        return _Piece(body.first, cond, body.span + 1, body.nodes + 1)

    def early_exit(self) -> _Piece:
        # The jump edge is appended after all chaining so the fallthrough
        # successor comes first in edge order.
        lead = self.sequence()
        branch = self.new_node()
        self.edge(lead.last, branch)
        self.pending_exit_jumps.append(branch)
        self.exit_jump_budget -= 1
        return _Piece(lead.first, branch, lead.span + 1, lead.nodes + 1)

    def region(self, depth: int, allowed: tuple[str, ...] = ALL_CONSTRUCTS,
               skip_ok: bool = True) -> _Piece:
        count = self.rng.randint(1, 2) if depth > 1 and not self.over_budget() else 1
        piece = self.construct(depth, allowed, skip_ok)
        first, last = piece.first, piece.last
        span, nodes = piece.span, piece.nodes
        for _ in range(count - 1):
            nxt = self.construct(depth, allowed, skip_ok)
            self.edge(last, nxt.first)
            last = nxt.last
            span += nxt.span
            nodes += nxt.nodes
        return _Piece(first, last, span, nodes)

    def build(self) -> CfgGraph:
        entry = self.new_node()
        piece = self.region(self.max_depth)
        first, last = piece.first, piece.last
        if self.node_budget is not None:
            while len(self.nodes) < self.node_budget:
                nxt = self.region(self.max_depth)
                self.edge(last, nxt.first)
                last = nxt.last
        exit_node = self.new_node()
        self.edge(entry, first)
        self.edge(last, exit_node)
        for branch in self.pending_exit_jumps:
            self.edge(branch, exit_node)
        return CfgGraph(nodes=self.nodes, edges=self.edges, entry=entry)


def generate_structured_cfg(
    seed: int,
    max_depth: int,
    max_width: int,
    constructs: tuple[str, ...] = ALL_CONSTRUCTS,
) -> CfgGraph:
    """Deterministic pseudo-random structured CFG; same seed, same graph."""
    graph, _ = generate_with_info(seed, max_depth, max_width, constructs)
    return graph


def generate_with_info(
    seed: int,
    max_depth: int,
    max_width: int,
    constructs: tuple[str, ...] = ALL_CONSTRUCTS,
    node_budget: int | None = None,
) -> tuple[CfgGraph, GeneratorInfo]:
    """Like generate_structured_cfg but also returns construction bookkeeping."""
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    if max_width < 2:
        raise ValueError("max_width must be at least 2")
    bad = [c for c in constructs if c not in ALL_CONSTRUCTS]
    if bad:
        raise ValueError(f"unknown constructs: {bad}")
    builder = _Builder(random.Random(seed), max_depth, max_width, tuple(constructs), node_budget)
    graph = builder.build()
    return graph, builder.info


def generate_sized_cfg(seed: int, target_nodes: int, max_depth: int = 5, max_width: int = 6) -> CfgGraph:
    """Structured CFG with at least target_nodes nodes, for scaling benchmarks."""
    graph, _ = generate_with_info(seed, max_depth, max_width, node_budget=target_nodes)
    return graph

"""DFS edge classification: tree, back, forward, and cross edges."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .graph import CfgGraph, Edge


class EdgeKind(str, enum.Enum):
    TREE = "tree"
    BACK = "back"
    FORWARD = "forward"
    CROSS = "cross"


@dataclass
class EdgeClassification:
    """Per-edge DFS category plus the discovery order that produced it.

    An edge is BACK exactly when its target was on the DFS stack at the
    moment the edge was explored; self-loops are therefore always BACK.
    """

    class_of: dict[Edge, EdgeKind]
    dfs_order: dict[str, int]
    unreachable: list[str] = field(default_factory=list)

    def kind(self, edge: Edge) -> EdgeKind:
        return self.class_of[edge]

    def is_back(self, edge: Edge) -> bool:
        return self.class_of[edge] is EdgeKind.BACK

    @property
    def back_edges(self) -> list[Edge]:
        return [e for e, k in self.class_of.items() if k is EdgeKind.BACK]


def classify_edges(g: CfgGraph) -> EdgeClassification:
    """Classify every edge with a deterministic iterative DFS from the entry.

    Successors are explored in edge-list order. Nodes unreachable from the
    entry are reported and classified by secondary DFS runs rooted at each
    still-unvisited node in id order; the discovery counter is shared so
    the whole classification stays deterministic.
    """
    class_of: dict[Edge, EdgeKind] = {}
    disc: dict[str, int] = {}
    finished: set[str] = set()
    on_stack: set[str] = set()
    counter = 0

    def visit(root: str) -> None:
        nonlocal counter
        disc[root] = counter
        counter += 1
        on_stack.add(root)
        stack: list[tuple[str, int]] = [(root, 0)]
        while stack:
            node, idx = stack[-1]
            succ = g.successors(node)
            if idx >= len(succ):
                stack.pop()
                on_stack.discard(node)
                finished.add(node)
                continue
            stack[-1] = (node, idx + 1)
            target = succ[idx]
            edge = (node, target)
            if target not in disc:
                class_of[edge] = EdgeKind.TREE
                disc[target] = counter
                counter += 1
                on_stack.add(target)
                stack.append((target, 0))
            elif target in on_stack:
                class_of[edge] = EdgeKind.BACK
            elif disc[target] > disc[node]:
                class_of[edge] = EdgeKind.FORWARD
            else:
                class_of[edge] = EdgeKind.CROSS

    visit(g.entry)
    unreachable = sorted(n for n in g.nodes if n not in disc)
    for root in unreachable:
        if root not in disc:
            visit(root)
    return EdgeClassification(class_of=class_of, dfs_order=disc, unreachable=unreachable)

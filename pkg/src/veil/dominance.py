"""Dominator and post-dominator trees.

Uses the iterative two-finger intersection algorithm over reverse
postorder (Cooper/Harvey/Kennedy style), which behaves effectively
linearly on control flow graphs. Ancestry queries answer in O(1) via
Euler-tour intervals on the tree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .graph import CfgGraph, PreconditionError


@dataclass
class DominatorTree:
    """One direction of dominance, rooted at the entry (forward) or the sink (reverse).

    The root's immediate dominator is itself. Only nodes that the root can
    reach (along the direction the tree was built for) appear in the maps.
    """

    root: str
    idom: dict[str, str]
    children: dict[str, list[str]] = field(default_factory=dict)
    subtree_size: dict[str, int] = field(default_factory=dict)
    depth: dict[str, int] = field(default_factory=dict)
    _tin: dict[str, int] = field(default_factory=dict)
    _tout: dict[str, int] = field(default_factory=dict)

    def __contains__(self, node: str) -> bool:
        return node in self.idom

    def dominates(self, a: str, b: str) -> bool:
        """True when every root-to-b path passes through a. Reflexive."""
        if a == b:
            return True
        if a not in self._tin or b not in self._tin:
            return False
        return self._tin[a] <= self._tin[b] < self._tout[a]

    def parent(self, node: str) -> str | None:
        got = self.idom.get(node)
        return None if got == node else got


def _postorder(root: str, succ: Callable[[str], list[str]]) -> list[str]:
    order: list[str] = []
    seen = {root}
    stack: list[tuple[str, int]] = [(root, 0)]
    while stack:
        node, idx = stack[-1]
        targets = succ(node)
        if idx >= len(targets):
            stack.pop()
            order.append(node)
            continue
        stack[-1] = (node, idx + 1)
        nxt = targets[idx]
        if nxt not in seen:
            seen.add(nxt)
            stack.append((nxt, 0))
    return order


def _build_tree(root: str, succ: Callable[[str], list[str]], pred: Callable[[str], list[str]]) -> DominatorTree:
    rpo = list(reversed(_postorder(root, succ)))
    rpo_num = {n: i for i, n in enumerate(rpo)}
    reachable = set(rpo)
    idom: dict[str, str] = {root: root}

    def intersect(a: str, b: str) -> str:
        while a != b:
            while rpo_num[a] > rpo_num[b]:
                a = idom[a]
            while rpo_num[b] > rpo_num[a]:
                b = idom[b]
        return a

    changed = True
    while changed:
        changed = False
        for node in rpo[1:]:
            new_idom: str | None = None
            for p in pred(node):
                if p in reachable and p in idom:
                    new_idom = p if new_idom is None else intersect(new_idom, p)
            if new_idom is not None and idom.get(node) != new_idom:
                idom[node] = new_idom
                changed = True

    children: dict[str, list[str]] = {n: [] for n in rpo}
    for node in rpo:
        parent = idom[node]
        if parent != node:
            children[parent].append(node)

    subtree_size = {n: 1 for n in rpo}
    for node in reversed(rpo):  # dominators precede their subtrees in RPO
        if idom[node] != node:
            subtree_size[idom[node]] += subtree_size[node]

    depth: dict[str, int] = {root: 0}
    tin: dict[str, int] = {}
    tout: dict[str, int] = {}
    clock = 0
    stack: list[tuple[str, int]] = [(root, 0)]
    tin[root] = clock
    clock += 1
    while stack:
        node, idx = stack[-1]
        kids = children[node]
        if idx >= len(kids):
            stack.pop()
            tout[node] = clock
            clock += 1
            continue
        stack[-1] = (node, idx + 1)
        kid = kids[idx]
        depth[kid] = depth[node] + 1
        tin[kid] = clock
        clock += 1
        stack.append((kid, 0))

    return DominatorTree(
        root=root,
        idom=idom,
        children=children,
        subtree_size=subtree_size,
        depth=depth,
        _tin=tin,
        _tout=tout,
    )


def dominator_tree(g: CfgGraph) -> DominatorTree:
    """Immediate dominators for every node reachable from the entry."""
    return _build_tree(g.entry, g.successors, g.predecessors)


def post_dominator_tree(g: CfgGraph) -> DominatorTree:
    """Immediate post-dominators, computed on the reversed graph rooted at the unique sink.

    The graph must be single-sink; run ensure_single_sink first. Nodes from
    which the sink is unreachable are absent from the result.
    """
    sinks = g.sinks()
    if len(sinks) != 1:
        raise PreconditionError(
            f"post-dominators need a single-sink graph, found {len(sinks)} sinks; "
            "run ensure_single_sink first"
        )
    return _build_tree(sinks[0], g.predecessors, g.successors)


@dataclass
class DominatorInfo:
    """Both dominance directions plus the subtree-size and ancestry queries."""

    dom: DominatorTree
    pdom: DominatorTree

    def idom(self, node: str) -> str | None:
        return self.dom.idom.get(node)

    def ipdom(self, node: str) -> str | None:
        got = self.pdom.idom.get(node)
        return None if got == node else got

    def dominates(self, a: str, b: str) -> bool:
        return self.dom.dominates(a, b)

    def post_dominates(self, a: str, b: str) -> bool:
        return self.pdom.dominates(a, b)

    def dom_subtree_size(self, node: str) -> int:
        """Count of nodes dominated by ``node``, including itself."""
        return self.dom.subtree_size.get(node, 1)


def dominator_info(g: CfgGraph) -> DominatorInfo:
    """Compute both halves for a single-sink graph."""
    return DominatorInfo(dom=dominator_tree(g), pdom=post_dominator_tree(g))

"""Layer assignment: dominator-guided breadth-first ranking.

Ranks grow downward from the entry at rank 0. The traversal pushes plain
successors one rank down, but when it meets a regular loop header it
pre-ranks the loop exit below the whole loop body, and when it meets a
conditional split it pre-ranks the merge point below both branches. Both
jumps are derived from dominator subtree sizes, so they can overshoot;
empty ranks are contracted afterwards.

A final repair pass restores strict rank monotonicity along non-back
edges. The traversal alone guarantees it for structured control flow, but
rank raises of already-visited nodes (common in irreducible, goto-style
graphs) do not re-propagate, so the repair handles the general case.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .classify import EdgeClassification, EdgeKind
from .dominance import DominatorInfo
from .graph import CfgGraph


@dataclass
class RankAssignment:
    """Layer index per node; 0 is the top rank."""

    rank: dict[str, int]
    num_ranks: int


@dataclass
class LayerContext:
    """Shared lookups for the loop and branch handlers during one traversal."""

    graph: CfgGraph
    cls: EdgeClassification
    dom: DominatorInfo
    rank: dict[str, int]
    tree_succ: dict[str, list[str]] = field(default_factory=dict)
    back_sources: dict[str, list[str]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.tree_succ:
            self.tree_succ = {n: [] for n in self.graph.nodes}
            self.back_sources = {n: [] for n in self.graph.nodes}
            for edge, kind in self.cls.class_of.items():
                src, dst = edge
                if kind is EdgeKind.TREE:
                    self.tree_succ[src].append(dst)
                elif kind is EdgeKind.BACK and src != dst:
                    self.back_sources[dst].append(src)

    def non_back_successors(self, v: str) -> list[str]:
        return [
            w for w in self.graph.successors(v)
            if self.cls.class_of[(v, w)] is not EdgeKind.BACK
        ]


def _loop_body_nodes(ctx: LayerContext, header: str, exit_node: str) -> set[str]:
    """Nodes of a DFS from the header along tree edges only, skipping the exit edge."""
    seen = {header}
    stack = [header]
    while stack:
        node = stack.pop()
        for child in ctx.tree_succ[node]:
            if node == header and child == exit_node:
                continue
            if child not in seen:
                seen.add(child)
                stack.append(child)
    return seen


def handle_loop(v: str, backs: list[str], ctx: LayerContext) -> tuple[str, int] | None:
    """Pick the exit of a regular loop headed at v and its pre-assigned rank.

    Candidates are non-back successors of v that no back-edge source
    post-dominates and that dominate no back-edge source; ties go to the
    candidate highest in the post-dominator tree. Returns None when the
    loop has no way out, in which case the caller just continues the
    plain traversal.
    """
    candidates = []
    for w in ctx.non_back_successors(v):
        if any(ctx.dom.post_dominates(u, w) for u in backs):
            continue
        if any(ctx.dom.dominates(w, u) for u in backs):
            continue
        if ctx.dom.dominates(w, v):
            continue  # an ancestor cannot be where the loop exits to
        candidates.append(w)
    if not candidates:
        return None
    pdom_depth = ctx.dom.pdom.depth
    exit_node = min(candidates, key=lambda w: (pdom_depth.get(w, len(ctx.graph.nodes) + 1), candidates.index(w)))
    size = len(_loop_body_nodes(ctx, v, exit_node))
    return exit_node, ctx.rank[v] + size + 1


def handle_branch(v: str, dom: DominatorInfo, ctx: LayerContext) -> tuple[str, int] | None:
    """Pick the merge point of a conditional split at v and its pre-assigned rank.

    The merge is v's immediate post-dominator; its rank clears the whole
    conditional region, sized as the difference of dominator subtree
    sizes. Returns None for nodes with no post-dominator (regions that
    never reach the exit).
    """
    merge = dom.ipdom(v)
    if merge is None:
        return None
    if dom.dominates(merge, v):
        # Branches that only rejoin upstream (goto-style cycles): there is
        # no merge below the split, and raising an ancestor would fold the
        # layout back on itself.
        return None
    cond_size = dom.dom_subtree_size(v) - dom.dom_subtree_size(merge)
    return merge, ctx.rank[v] + cond_size + 1


def _is_regular_loop(v: str, backs: list[str], ctx: LayerContext) -> bool:
    # A loop is regular when some non-back successor escapes every latch:
    # nobody on the back edges post-dominates it.
    return any(
        all(not ctx.dom.post_dominates(u, w) for u in backs)
        for w in ctx.non_back_successors(v)
    )


REPAIR_ROUNDS = 20


def _dom_region(dom: DominatorInfo, v: str, merge: str) -> set[str]:
    """Nodes dominated by v but not by the merge: the conditional's body."""
    region: set[str] = set()
    stack = [v]
    while stack:
        node = stack.pop()
        if node == merge:
            continue
        region.add(node)
        stack.extend(dom.dom.children.get(node, ()))
    region.discard(v)
    return region


def assign_layers(g: CfgGraph, cls: EdgeClassification, dom: DominatorInfo) -> RankAssignment:
    """Rank every node; the graph must be single-sink (see ensure_single_sink)."""
    rank = {n: 0 for n in g.nodes}
    ctx = LayerContext(graph=g, cls=cls, dom=dom, rank=rank)
    visited: set[str] = set()
    # Constraints re-checked after traversal: (node, set it must sit below).
    below: list[tuple[str, set[str]]] = []
    queue: deque[tuple[str, int]] = deque([(g.entry, 0)])
    while queue:
        v, r = queue.popleft()
        rank[v] = max(r, rank[v])
        if v in visited:
            continue
        visited.add(v)
        successors = ctx.non_back_successors(v)
        backs = ctx.back_sources[v]
        if backs and _is_regular_loop(v, backs, ctx):
            pushed = handle_loop(v, backs, ctx)
            if pushed is not None:
                queue.append(pushed)
                exit_node = pushed[0]
                below.append((exit_node, _loop_body_nodes(ctx, v, exit_node) - {exit_node}))
        elif len(successors) > 1:
            pushed = handle_branch(v, dom, ctx)
            if pushed is not None:
                queue.append(pushed)
                merge = pushed[0]
                below.append((merge, _dom_region(dom, v, merge)))
        for s in successors:
            queue.append((s, r + 1))

    # Unreachable nodes go below the reachable component, one rank each,
    # in id order. Their mutual edges are then repaired like any others.
    unreachable = [n for n in sorted(g.nodes) if n not in visited]
    if unreachable:
        base = max(rank[n] for n in visited) + 1 if visited else 0
        for i, n in enumerate(unreachable):
            rank[n] = base + i

    # The static rank jumps assume a construct's rank span equals its node
    # count, which nested jumps can exceed. Re-enforce edge monotonicity
    # and the below-the-body ordering of loop exits and merges until both
    # settle (bounded; contradictions are possible only in pathological
    # irreducible inputs, where monotonicity wins because it runs last).
    _repair_monotonicity(g, cls, rank)
    for _ in range(REPAIR_ROUNDS):
        changed = False
        for node, body in below:
            floor = max((rank[w] for w in body), default=-1) + 1
            if rank[node] < floor:
                rank[node] = floor
                changed = True
        if not changed:
            break
        _repair_monotonicity(g, cls, rank)

    sinks = g.sinks()
    if len(sinks) == 1:
        rank[sinks[0]] = max(rank[sinks[0]], max(rank.values()))

    return contract_empty_ranks(RankAssignment(rank=rank, num_ranks=max(rank.values()) + 1))


def _repair_monotonicity(g: CfgGraph, cls: EdgeClassification, rank: dict[str, int]) -> None:
    """Raise ranks until every non-back edge goes strictly downward.

    Non-back edges form a DAG, so one relaxation pass in topological
    order suffices. The entry is never raised; an edge into the entry can
    only come from an unreachable island and is left as it lies.
    """
    order_index = {n: i for i, n in enumerate(g.nodes)}
    indeg = {n: 0 for n in g.nodes}
    succ: dict[str, list[str]] = {n: [] for n in g.nodes}
    for edge, kind in cls.class_of.items():
        if kind is EdgeKind.BACK:
            continue
        src, dst = edge
        succ[src].append(dst)
        indeg[dst] += 1
    ready = sorted((n for n in g.nodes if indeg[n] == 0), key=order_index.__getitem__)
    queue = deque(ready)
    while queue:
        node = queue.popleft()
        for target in succ[node]:
            if target != g.entry and rank[target] <= rank[node]:
                rank[target] = rank[node] + 1
            indeg[target] -= 1
            if indeg[target] == 0:
                queue.append(target)


def contract_empty_ranks(assignment: RankAssignment) -> RankAssignment:
    """Renumber so every rank is occupied, preserving all rank orderings."""
    occupied = sorted(set(assignment.rank.values()))
    remap = {old: new for new, old in enumerate(occupied)}
    rank = {n: remap[r] for n, r in assignment.rank.items()}
    return RankAssignment(rank=rank, num_ranks=len(occupied))

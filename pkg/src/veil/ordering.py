"""Edge normalization and in-layer crossing minimization.

Multi-rank edges are sub-divided into chains of single-rank segments via
dummy slots, with back-edge dummies typed separately from forward ones.
Each layer is then pre-sorted to [back dummies | real nodes | forward
dummies], and barycenter sweeps reorder the movable portion while back
dummies stay pinned at the front. A final pass permutes only the back
dummy prefix, which settles nested loops into stable left-to-right order.
The ordering with the fewest total crossings seen at any point wins.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .classify import EdgeClassification, EdgeKind
from .graph import CfgGraph, Edge
from .layering import RankAssignment

MAX_SWEEPS = 8


@dataclass(frozen=True, eq=False)
class RealSlot:
    """Slot holding a real node. Compared by identity: normalize_edges
    creates exactly one per node, shared by every structure that needs it."""

    node: str


@dataclass(frozen=True, eq=False)
class DummySlot:
    """Virtual slot a multi-rank edge occupies on an intermediate rank."""

    edge: Edge
    hop: int  # 1-based index along the chain, counted from the source
    back: bool


Slot = Union[RealSlot, DummySlot]


def _group(slot: Slot) -> int:
    if isinstance(slot, DummySlot):
        return 0 if slot.back else 2
    return 1


@dataclass
class LayeredGraph:
    """Rank assignment plus the ordered slot sequences per rank."""

    graph: CfgGraph
    rank: dict[str, int]
    num_ranks: int
    layers: list[list[Slot]]
    chains: dict[Edge, list[DummySlot]]
    kinds: dict[Edge, EdgeKind]
    real: dict[str, RealSlot] = field(default_factory=dict)
    _segments: list[tuple[Slot, Slot]] | None = None
    _slot_ranks: dict[Slot, int] | None = None

    def __post_init__(self) -> None:
        if not self.real:
            self.real = {}
            for layer in self.layers:
                for slot in layer:
                    if isinstance(slot, RealSlot):
                        self.real[slot.node] = slot

    def ord_map(self) -> dict[Slot, int]:
        return {slot: i for layer in self.layers for i, slot in enumerate(layer)}

    def back_dummy_count(self, rank: int) -> int:
        return sum(1 for slot in self.layers[rank] if _group(slot) == 0)

    def real_slot(self, node: str) -> RealSlot:
        return self.real[node]

    def edge_path(self, edge: Edge) -> list[Slot]:
        """Slots along the edge from source to target, endpoints included."""
        return [self.real[edge[0]], *self.chains.get(edge, []), self.real[edge[1]]]

    def segments(self) -> list[tuple[Slot, Slot]]:
        """All single-rank segments as (upper slot, lower slot) pairs.

        Cached: reordering inside layers never changes the segment set.
        """
        if self._segments is not None:
            return self._segments
        rank = self.slot_ranks()
        out: list[tuple[Slot, Slot]] = []
        for edge in self.graph.edges:
            if edge[0] == edge[1]:
                continue
            if self.rank[edge[0]] == self.rank[edge[1]]:
                continue
            path = self.edge_path(edge)
            for a, b in zip(path, path[1:]):
                out.append((a, b) if rank[a] < rank[b] else (b, a))
        self._segments = out
        return out

    def slot_ranks(self) -> dict[Slot, int]:
        if self._slot_ranks is None:
            self._slot_ranks = {slot: r for r, layer in enumerate(self.layers) for slot in layer}
        return self._slot_ranks


def normalize_edges(g: CfgGraph, cls: EdgeClassification, ra: RankAssignment) -> LayeredGraph:
    """Insert one typed dummy per intermediate rank of every multi-rank edge."""
    layers: list[list[Slot]] = [[] for _ in range(ra.num_ranks)]
    real: dict[str, RealSlot] = {}
    for node in g.nodes:
        slot = RealSlot(node)
        real[node] = slot
        layers[ra.rank[node]].append(slot)
    chains: dict[Edge, list[DummySlot]] = {}
    kinds: dict[Edge, EdgeKind] = {}
    for edge in g.edges:
        src, dst = edge
        kind = cls.class_of[edge]
        kinds[edge] = kind
        r_src, r_dst = ra.rank[src], ra.rank[dst]
        if abs(r_src - r_dst) <= 1:
            continue
        step = 1 if r_dst > r_src else -1
        chain: list[DummySlot] = []
        for hop, r in enumerate(range(r_src + step, r_dst, step), start=1):
            slot = DummySlot(edge=edge, hop=hop, back=kind is EdgeKind.BACK)
            chain.append(slot)
            layers[r].append(slot)
        chains[edge] = chain
    return LayeredGraph(
        graph=g,
        rank=dict(ra.rank),
        num_ranks=ra.num_ranks,
        layers=layers,
        chains=chains,
        kinds=kinds,
        real=real,
    )


def count_bilayer_crossings(upper_positions: list[int], lower_positions: list[int]) -> int:
    """Crossings between two adjacent layers given segment endpoint indices.

    Segments i and j cross when their upper order and lower order disagree.
    Counted as inversions of the lower sequence after sorting by
    (upper, lower); pairs sharing an upper endpoint never cross.
    """
    segs = sorted(zip(upper_positions, lower_positions))
    lowers = [b for _, b in segs]
    return _count_inversions(lowers)


def _count_inversions(values: list[int]) -> int:
    if len(values) < 2:
        return 0
    ranks = {v: i + 1 for i, v in enumerate(sorted(set(values)))}
    tree = [0] * (len(ranks) + 1)

    def update(i: int) -> None:
        while i < len(tree):
            tree[i] += 1
            i += i & (-i)

    def query(i: int) -> int:
        total = 0
        while i > 0:
            total += tree[i]
            i -= i & (-i)
        return total

    inversions = 0
    seen = 0
    for v in values:
        r = ranks[v]
        inversions += seen - query(r)
        update(r)
        seen += 1
    return inversions


def total_crossings(lg: LayeredGraph) -> int:
    """Total segment crossings over all adjacent layer pairs."""
    ords = lg.ord_map()
    ranks = lg.slot_ranks()
    per_pair: dict[int, list[tuple[int, int]]] = {}
    for upper, lower in lg.segments():
        per_pair.setdefault(ranks[upper], []).append((ords[upper], ords[lower]))
    total = 0
    for pairs in per_pair.values():
        total += count_bilayer_crossings([a for a, _ in pairs], [b for _, b in pairs])
    return total


def presort_layers(lg: LayeredGraph) -> None:
    """Order each layer [back dummies | real nodes | forward dummies], stably."""
    for layer in lg.layers:
        layer.sort(key=_group)


def _neighbor_lists(lg: LayeredGraph) -> dict[Slot, tuple[list[Slot], list[Slot]]]:
    """For every slot: its segment neighbors in the layer above and below."""
    ranks = lg.slot_ranks()
    up: dict[Slot, list[Slot]] = {}
    down: dict[Slot, list[Slot]] = {}
    for upper, lower in lg.segments():
        down.setdefault(upper, []).append(lower)
        up.setdefault(lower, []).append(upper)
    return {
        slot: (up.get(slot, []), down.get(slot, []))
        for layer in lg.layers
        for slot in layer
    }


def minimize_crossings(lg: LayeredGraph) -> LayeredGraph:
    """Three-phase in-place reordering; returns the same LayeredGraph.

    The best ordering seen after any individual sweep pass is what
    survives: a pass that hurts (an upward pass can drag a chain across a
    column it should stay beside) still runs, since it may unlock a better
    state, but never worsens the result.
    """
    presort_layers(lg)
    neighbors = _neighbor_lists(lg)
    groups = {slot: _group(slot) for layer in lg.layers for slot in layer}

    best_layers = [list(layer) for layer in lg.layers]
    best_count = total_crossings(lg)

    for _ in range(MAX_SWEEPS):
        improved = False
        for r in range(1, lg.num_ranks):
            _reorder_movable(lg, r, neighbors, groups, use_upper=True)
        count = total_crossings(lg)
        if count < best_count:
            best_count, best_layers = count, [list(layer) for layer in lg.layers]
            improved = True
        for r in range(lg.num_ranks - 2, -1, -1):
            _reorder_movable(lg, r, neighbors, groups, use_upper=False)
        count = total_crossings(lg)
        if count < best_count:
            best_count, best_layers = count, [list(layer) for layer in lg.layers]
            improved = True
        if not improved or best_count == 0:
            break
    lg.layers = [list(layer) for layer in best_layers]

    for r in range(lg.num_ranks):
        _reorder_back_prefix(lg, r, neighbors)
    count = total_crossings(lg)
    if count > best_count:
        lg.layers = best_layers
    return lg


def _reorder_movable(
    lg: LayeredGraph,
    r: int,
    neighbors: dict[Slot, tuple[list[Slot], list[Slot]]],
    groups: dict[Slot, int],
    use_upper: bool,
) -> None:
    """Barycenter-sort the movable portion of layer r.

    Back dummies stay pinned at the front, and real nodes keep their
    place ahead of forward dummies: reordering happens within each group.
    Keeping chains strictly right of the real columns is what lets the
    straightening pass pick the chain maximum without ever landing on a
    column another rank routes through. Slots without neighbors on the
    swept side keep their current position value; ties keep the previous
    order.
    """
    layer = lg.layers[r]
    pinned = [slot for slot in layer if groups[slot] == 0]
    movable = [slot for slot in layer if groups[slot] != 0]
    adj = lg.layers[r - 1] if use_upper else (lg.layers[r + 1] if r + 1 < lg.num_ranks else [])
    adj_ords = {slot: i for i, slot in enumerate(adj)}
    keys: dict[Slot, float] = {}
    for i, slot in enumerate(layer):
        if groups[slot] == 0:
            continue
        up, down = neighbors[slot]
        pool = up if use_upper else down
        if pool:
            keys[slot] = sum(adj_ords[n] for n in pool) / len(pool)
        else:
            keys[slot] = float(i)
    movable.sort(key=lambda slot: (groups[slot], keys[slot]))
    lg.layers[r] = pinned + movable


def _reorder_back_prefix(
    lg: LayeredGraph,
    r: int,
    neighbors: dict[Slot, tuple[list[Slot], list[Slot]]],
) -> None:
    """Permute only the back-dummy prefix of layer r by mean neighbor position.

    Runs top to bottom using only the layer above, so the order settled
    near each loop header propagates down the whole chain; a tie keeps the
    current order. This is what stacks nested loops outermost-first.
    """
    layer = lg.layers[r]
    prefix = [slot for slot in layer if _group(slot) == 0]
    if len(prefix) < 2:
        return
    rest = [slot for slot in layer if _group(slot) != 0]
    ords_above = {slot: i for i, slot in enumerate(lg.layers[r - 1])} if r > 0 else {}
    keys: dict[Slot, tuple[float, int]] = {}
    for i, slot in enumerate(prefix):
        up, _ = neighbors[slot]
        positions = [ords_above[n] for n in up if n in ords_above]
        bary = sum(positions) / len(positions) if positions else float(i)
        # Chains anchored on the same header tie on barycenter; the chain
        # closing the larger loop goes further left.
        span = abs(lg.rank[slot.edge[0]] - lg.rank[slot.edge[1]])
        keys[slot] = (bary, -span)
    prefix.sort(key=lambda slot: keys[slot])
    lg.layers[r] = prefix + rest

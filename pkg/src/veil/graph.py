"""CFG data model, JSON ingestion, and sink normalization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

Edge = tuple[str, str]

DEFAULT_NODE_WIDTH = 100.0
DEFAULT_NODE_HEIGHT = 50.0


class CfgError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(CfgError):
    """Malformed input text or schema (DOT, CFG JSON, layout JSON)."""


class PreconditionError(CfgError):
    """Well-formed input that violates an operation's requirements."""


@dataclass
class CfgGraph:
    """Directed graph of basic blocks with a designated entry node.

    Node and edge lists keep ingestion order. That order fixes traversal
    tie-breaking in every downstream pass, so it is part of the graph's
    identity, not an implementation detail.
    """

    nodes: list[str]
    edges: list[Edge]
    entry: str
    labels: dict[str, str] = field(default_factory=dict)
    sizes: dict[str, tuple[float, float]] = field(default_factory=dict)
    virtual_sink: str | None = None

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for n in self.nodes:
            if n in seen:
                raise ParseError(f"duplicate node id {n!r}")
            seen.add(n)
        if self.entry not in seen:
            raise ParseError(f"entry node {self.entry!r} is not in the graph")
        deduped: list[Edge] = []
        edge_seen: set[Edge] = set()
        for src, dst in self.edges:
            if src not in seen:
                raise ParseError(f"edge source {src!r} is not a declared node")
            if dst not in seen:
                raise ParseError(f"edge target {dst!r} is not a declared node")
            if (src, dst) not in edge_seen:
                edge_seen.add((src, dst))
                deduped.append((src, dst))
        self.edges = deduped
        self._succ: dict[str, list[str]] = {n: [] for n in self.nodes}
        self._pred: dict[str, list[str]] = {n: [] for n in self.nodes}
        for src, dst in self.edges:
            self._succ[src].append(dst)
            self._pred[dst].append(src)

    def successors(self, n: str) -> list[str]:
        return self._succ[n]

    def predecessors(self, n: str) -> list[str]:
        return self._pred[n]

    def out_degree(self, n: str) -> int:
        return len(self._succ[n])

    def in_degree(self, n: str) -> int:
        return len(self._pred[n])

    def sinks(self) -> list[str]:
        """Nodes with out-degree 0, in node order."""
        return [n for n in self.nodes if not self._succ[n]]

    def size_of(self, n: str, default: tuple[float, float] | None = None) -> tuple[float, float]:
        if n == self.virtual_sink:
            return (0.0, 0.0)
        if n in self.sizes:
            return self.sizes[n]
        return default if default is not None else (DEFAULT_NODE_WIDTH, DEFAULT_NODE_HEIGHT)

    def has_edge(self, src: str, dst: str) -> bool:
        return dst in self._succ.get(src, ())


def parse_json(text: str) -> CfgGraph:
    """Parse the CFG JSON schema: entry, nodes [{id, label?, width?, height?}], edges [{src, dst}]."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParseError("CFG JSON must be an object")
    if "entry" not in raw:
        raise ParseError("CFG JSON is missing the required 'entry' key")
    raw_nodes = raw.get("nodes")
    raw_edges = raw.get("edges", [])
    if not isinstance(raw_nodes, list) or not raw_nodes:
        raise ParseError("CFG JSON needs a non-empty 'nodes' array (entry unresolvable)")
    if not isinstance(raw_edges, list):
        raise ParseError("CFG JSON 'edges' must be an array")
    nodes: list[str] = []
    labels: dict[str, str] = {}
    sizes: dict[str, tuple[float, float]] = {}
    for item in raw_nodes:
        if not isinstance(item, dict) or "id" not in item:
            raise ParseError("each node must be an object with an 'id'")
        nid = str(item["id"])
        nodes.append(nid)
        if "label" in item:
            labels[nid] = str(item["label"])
        if "width" in item or "height" in item:
            w = float(item.get("width", DEFAULT_NODE_WIDTH))
            h = float(item.get("height", DEFAULT_NODE_HEIGHT))
            sizes[nid] = (w, h)
    edges: list[Edge] = []
    for item in raw_edges:
        if not isinstance(item, dict) or "src" not in item or "dst" not in item:
            raise ParseError("each edge must be an object with 'src' and 'dst'")
        edges.append((str(item["src"]), str(item["dst"])))
    return CfgGraph(nodes=nodes, edges=edges, entry=str(raw["entry"]), labels=labels, sizes=sizes)


def write_json(g: CfgGraph) -> str:
    """Serialize a graph to CFG JSON with canonical key order for diff-stable fixtures."""
    nodes = []
    for n in g.nodes:
        item: dict = {"id": n}
        if n in g.labels:
            item["label"] = g.labels[n]
        if n in g.sizes:
            item["width"], item["height"] = g.sizes[n]
        nodes.append(item)
    doc = {
        "entry": g.entry,
        "nodes": nodes,
        "edges": [{"src": s, "dst": d} for s, d in g.edges],
    }
    return json.dumps(doc, indent=1)


def ensure_single_sink(g: CfgGraph) -> CfgGraph:
    """Funnel all sinks into one virtual sink node.

    Returns the graph unchanged when it already has exactly one sink.
    With several sinks, a fresh zero-sized node is appended and every
    former sink gets an edge into it. Zero sinks is an error: a CFG must
    have at least one exit point.
    """
    sinks = g.sinks()
    if not sinks:
        raise PreconditionError(
            "graph has no sink: a CFG needs at least one node with out-degree 0"
        )
    if len(sinks) == 1:
        return g
    name = "__exit__"
    suffix = 0
    existing = set(g.nodes)
    while name in existing:
        suffix += 1
        name = f"__exit__{suffix}"
    return CfgGraph(
        nodes=g.nodes + [name],
        edges=g.edges + [(s, name) for s in sinks],
        entry=g.entry,
        labels=dict(g.labels),
        sizes=dict(g.sizes),
        virtual_sink=name,
    )

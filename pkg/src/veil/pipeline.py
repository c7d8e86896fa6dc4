"""End-to-end layout pipeline: normalize, analyze, rank, order, place."""

from __future__ import annotations

from dataclasses import dataclass

from .classify import classify_edges
from .coords import Layout, assign_coordinates
from .dominance import dominator_info
from .graph import CfgGraph, ensure_single_sink
from .layering import assign_layers
from .ordering import minimize_crossings, normalize_edges

DEFAULT_DX = 120.0
DEFAULT_DY = 90.0


@dataclass
class LayoutConfig:
    dx: float = DEFAULT_DX
    dy: float = DEFAULT_DY
    mode: str = "grouped"


def layout(g: CfgGraph, config: LayoutConfig | None = None) -> Layout:
    """Lay out a CFG. Deterministic for a fixed graph and configuration."""
    cfg = config or LayoutConfig()
    g = ensure_single_sink(g)
    cls = classify_edges(g)
    dom = dominator_info(g)
    ranks = assign_layers(g, cls, dom)
    lg = normalize_edges(g, cls, ranks)
    lg = minimize_crossings(lg)
    return assign_coordinates(lg, cfg.dx, cfg.dy, cfg.mode)

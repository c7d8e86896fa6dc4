"""veil: layered control-flow-graph layout and layout aesthetics metrics."""

from .classify import EdgeClassification, EdgeKind, classify_edges
from .coords import (
    EdgeRoute,
    Layout,
    assign_coordinates,
    elide_collinear,
    layout_from_json,
    layout_to_json,
    straighten_edges,
)
from .dominance import (
    DominatorInfo,
    DominatorTree,
    dominator_info,
    dominator_tree,
    post_dominator_tree,
)
from .dot import parse_dot
from .generate import (
    ALL_CONSTRUCTS,
    SERIES_PARALLEL,
    GeneratorInfo,
    generate_sized_cfg,
    generate_structured_cfg,
    generate_with_info,
)
from .graph import (
    CfgError,
    CfgGraph,
    ParseError,
    PreconditionError,
    ensure_single_sink,
    parse_json,
    write_json,
)
from .layering import (
    RankAssignment,
    assign_layers,
    contract_empty_ranks,
    handle_branch,
    handle_loop,
)
from .gvimport import import_graphviz_plain
from .metrics import (
    MetricsReport,
    consistent_flow,
    count_bends,
    count_crossings,
    edge_grouping_distance,
    edge_length_stats,
    edge_orthogonality,
    graph_area,
    happens_before_score,
    metrics_report,
    node_orthogonality,
    symmetry_tension,
)
from .ordering import (
    DummySlot,
    LayeredGraph,
    RealSlot,
    minimize_crossings,
    normalize_edges,
    total_crossings,
)
from .pipeline import LayoutConfig, layout
from .svg import render_svg

__all__ = [
    "ALL_CONSTRUCTS",
    "CfgError",
    "CfgGraph",
    "DominatorInfo",
    "DominatorTree",
    "DummySlot",
    "EdgeClassification",
    "EdgeKind",
    "EdgeRoute",
    "GeneratorInfo",
    "LayeredGraph",
    "Layout",
    "LayoutConfig",
    "ParseError",
    "PreconditionError",
    "RankAssignment",
    "RealSlot",
    "SERIES_PARALLEL",
    "assign_coordinates",
    "assign_layers",
    "classify_edges",
    "contract_empty_ranks",
    "dominator_info",
    "dominator_tree",
    "elide_collinear",
    "ensure_single_sink",
    "generate_sized_cfg",
    "generate_structured_cfg",
    "generate_with_info",
    "handle_branch",
    "handle_loop",
    "MetricsReport",
    "consistent_flow",
    "count_bends",
    "count_crossings",
    "edge_grouping_distance",
    "edge_length_stats",
    "edge_orthogonality",
    "graph_area",
    "happens_before_score",
    "import_graphviz_plain",
    "layout",
    "layout_from_json",
    "layout_to_json",
    "metrics_report",
    "minimize_crossings",
    "node_orthogonality",
    "normalize_edges",
    "parse_dot",
    "parse_json",
    "post_dominator_tree",
    "render_svg",
    "straighten_edges",
    "symmetry_tension",
    "total_crossings",
    "write_json",
]

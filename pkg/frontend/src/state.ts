/**
 * Viewer state and its pure transitions.
 *
 * Every operation returns a new state; rendering is a pure function of
 * the state, so the scene for a given state never depends on history.
 * Scrolling is vertical-first, like reading a source file: the viewport
 * clamps to the layout's bounding box and jumps move only the scroll.
 */

import { Layout, LayoutEdge, LayoutNode, edgeId, isLongForward } from "./types.js";

export interface Viewport {
  /** World coordinate at the top-left of the screen. */
  scrollX: number;
  scrollY: number;
  zoom: number;
  width: number;
  height: number;
}

export type HighlightClass = "back" | "long-forward";

export interface Selection {
  kind: "node" | "edge";
  id: string;
}

export interface Breadcrumb {
  scrollX: number;
  scrollY: number;
  selection: Selection | null;
}

export interface ViewerState {
  layout: Layout;
  nodesById: Map<string, LayoutNode>;
  edgesById: Map<string, LayoutEdge>;
  viewport: Viewport;
  selection: Selection | null;
  highlights: Set<HighlightClass>;
  breadcrumbs: Breadcrumb[];
  error: string | null;
}

export const MARGIN = 40;

function clamp(value: number, lo: number, hi: number): number {
  return Math.min(Math.max(value, lo), Math.max(lo, hi));
}

export function clampViewport(state: ViewerState, viewport: Viewport): Viewport {
  const [x0, y0, x1, y1] = state.layout.bbox;
  const worldW = (x1 - x0) + 2 * MARGIN;
  const worldH = (y1 - y0) + 2 * MARGIN;
  const viewW = viewport.width / viewport.zoom;
  const viewH = viewport.height / viewport.zoom;
  return {
    ...viewport,
    zoom: Math.max(viewport.zoom, 1e-3),
    scrollX: clamp(viewport.scrollX, x0 - MARGIN, x0 - MARGIN + Math.max(0, worldW - viewW)),
    scrollY: clamp(viewport.scrollY, y0 - MARGIN, y0 - MARGIN + Math.max(0, worldH - viewH)),
  };
}

/** Build the initial state for a loaded layout: viewport at the entry (top). */
export function loadLayout(layout: Layout, width: number, height: number): ViewerState {
  const nodesById = new Map(layout.nodes.map((n) => [n.id, n]));
  const edgesById = new Map(layout.edges.map((e) => [edgeId(e), e]));
  const state: ViewerState = {
    layout,
    nodesById,
    edgesById,
    viewport: { scrollX: 0, scrollY: 0, zoom: 1, width, height },
    selection: null,
    highlights: new Set(),
    breadcrumbs: [],
    error: null,
  };
  const [x0, y0] = layout.bbox;
  state.viewport = clampViewport(state, {
    ...state.viewport,
    scrollX: x0 - MARGIN,
    scrollY: y0 - MARGIN,
  });
  return state;
}

export function scrollBy(state: ViewerState, dx: number, dy: number): ViewerState {
  const viewport = clampViewport(state, {
    ...state.viewport,
    scrollX: state.viewport.scrollX + dx,
    scrollY: state.viewport.scrollY + dy,
  });
  return { ...state, viewport };
}

export function zoomTo(state: ViewerState, zoom: number): ViewerState {
  const viewport = clampViewport(state, { ...state.viewport, zoom: Math.max(zoom, 1e-3) });
  return { ...state, viewport };
}

export function resize(state: ViewerState, width: number, height: number): ViewerState {
  const viewport = clampViewport(state, { ...state.viewport, width, height });
  return { ...state, viewport };
}

/** Center the viewport vertically on a node, keeping it horizontally visible. */
export function centerOnNode(state: ViewerState, node: LayoutNode): ViewerState {
  const viewH = state.viewport.height / state.viewport.zoom;
  const viewW = state.viewport.width / state.viewport.zoom;
  const viewport = clampViewport(state, {
    ...state.viewport,
    scrollY: node.y - viewH / 2,
    scrollX: node.x - viewW / 2,
  });
  return { ...state, viewport };
}

/**
 * Jump along an edge: given which end the user grabbed, center the
 * opposite endpoint and select it. A breadcrumb records where the jump
 * started so jumpBack can restore it. Self-loops only change selection.
 */
export function jumpToOppositeEndpoint(
  state: ViewerState,
  edge: LayoutEdge,
  currentEnd: "src" | "dst",
): ViewerState {
  const targetId = currentEnd === "src" ? edge.dst : edge.src;
  const target = state.nodesById.get(targetId);
  if (!target) return state;
  const selection: Selection = { kind: "node", id: targetId };
  if (edge.src === edge.dst) {
    return { ...state, selection };
  }
  const crumb: Breadcrumb = {
    scrollX: state.viewport.scrollX,
    scrollY: state.viewport.scrollY,
    selection: state.selection,
  };
  const centered = centerOnNode(state, target);
  return {
    ...centered,
    selection,
    breadcrumbs: [...state.breadcrumbs, crumb],
  };
}

export function jumpBack(state: ViewerState): ViewerState {
  const crumb = state.breadcrumbs[state.breadcrumbs.length - 1];
  if (!crumb) return state;
  const viewport = clampViewport(state, {
    ...state.viewport,
    scrollX: crumb.scrollX,
    scrollY: crumb.scrollY,
  });
  return {
    ...state,
    viewport,
    selection: crumb.selection,
    breadcrumbs: state.breadcrumbs.slice(0, -1),
  };
}

/** Toggle emphasis for an edge class; toggling twice restores the state. */
export function toggleEdgeClassHighlight(state: ViewerState, cls: HighlightClass): ViewerState {
  const highlights = new Set(state.highlights);
  if (highlights.has(cls)) {
    highlights.delete(cls);
  } else {
    highlights.add(cls);
  }
  return { ...state, highlights };
}

export function selectNode(state: ViewerState, id: string): ViewerState {
  if (!state.nodesById.has(id)) return state;
  return { ...state, selection: { kind: "node", id } };
}

export function selectEdge(state: ViewerState, id: string): ViewerState {
  if (!state.edgesById.has(id)) return state;
  return { ...state, selection: { kind: "edge", id } };
}

/** True when the edge should be emphasized under the active highlights. */
export function isHighlighted(state: ViewerState, edge: LayoutEdge): boolean {
  if (state.highlights.has("back") && edge.kind === "back") return true;
  return state.highlights.has("long-forward") && isLongForward(edge, state.layout.config.dy);
}

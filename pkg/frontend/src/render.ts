/**
 * Canvas scene painting with viewport culling.
 *
 * Only elements intersecting the padded viewport are drawn, which keeps
 * 10k-node layouts scrolling smoothly. Labels are not painted on the
 * canvas: visibleLabels() reports which nodes need DOM label overlays.
 * Polylines use exactly the points from the layout; the optional corner
 * rounding is a stroke effect (lineJoin) that never moves endpoints.
 */

import { ViewerState, isHighlighted } from "./state.js";
import { LayoutEdge, LayoutNode, edgeId, isVirtualSink } from "./types.js";

export const CULL_PADDING = 200;

export interface Box {
  left: number;
  top: number;
  right: number;
  bottom: number;
}

/** Minimal 2D context surface the renderer needs; tests pass a recorder. */
export interface Canvas2D {
  clearRect(x: number, y: number, w: number, h: number): void;
  save(): void;
  restore(): void;
  scale(x: number, y: number): void;
  translate(x: number, y: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  stroke(): void;
  strokeRect(x: number, y: number, w: number, h: number): void;
  fillRect(x: number, y: number, w: number, h: number): void;
  setLineDash(pattern: number[]): void;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  fillStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  lineJoin: string;
}

export function viewBox(state: ViewerState, padding: number = CULL_PADDING): Box {
  const { scrollX, scrollY, zoom, width, height } = state.viewport;
  const pad = padding / zoom;
  return {
    left: scrollX - pad,
    top: scrollY - pad,
    right: scrollX + width / zoom + pad,
    bottom: scrollY + height / zoom + pad,
  };
}

function nodeVisible(node: LayoutNode, box: Box): boolean {
  return (
    node.x + node.w / 2 >= box.left &&
    node.x - node.w / 2 <= box.right &&
    node.y + node.h / 2 >= box.top &&
    node.y - node.h / 2 <= box.bottom
  );
}

function edgeVisible(edge: LayoutEdge, box: Box): boolean {
  let minX = Infinity;
  let maxX = -Infinity;
  let minY = Infinity;
  let maxY = -Infinity;
  for (const [x, y] of edge.points) {
    minX = Math.min(minX, x);
    maxX = Math.max(maxX, x);
    minY = Math.min(minY, y);
    maxY = Math.max(maxY, y);
  }
  return maxX >= box.left && minX <= box.right && maxY >= box.top && minY <= box.bottom;
}

export function visibleNodes(state: ViewerState, padding: number = CULL_PADDING): LayoutNode[] {
  const box = viewBox(state, padding);
  return state.layout.nodes.filter((n) => !isVirtualSink(n) && nodeVisible(n, box));
}

export function visibleEdges(state: ViewerState, padding: number = CULL_PADDING): LayoutEdge[] {
  const box = viewBox(state, padding);
  const virtual = new Set(state.layout.nodes.filter(isVirtualSink).map((n) => n.id));
  return state.layout.edges.filter(
    (e) => !virtual.has(e.src) && !virtual.has(e.dst) && edgeVisible(e, box),
  );
}

/** Nodes needing a DOM label right now (same culling as the canvas pass). */
export function visibleLabels(state: ViewerState): LayoutNode[] {
  return visibleNodes(state, 0);
}

export const STYLE = {
  edge: "#555555",
  back: "#c0392b",
  highlight: "#e67e22",
  nodeFill: "#f2f4f7",
  nodeStroke: "#333333",
  selected: "#2980b9",
};

/** Paint the scene for the state; pure given (state, ctx). */
export function renderScene(ctx: Canvas2D, state: ViewerState): void {
  const { zoom, scrollX, scrollY, width, height } = state.viewport;
  ctx.clearRect(0, 0, width, height);
  ctx.save();
  ctx.scale(zoom, zoom);
  ctx.translate(-scrollX, -scrollY);
  ctx.lineJoin = "round";

  for (const edge of visibleEdges(state)) {
    const highlighted = isHighlighted(state, edge);
    const selected = state.selection?.kind === "edge" && state.selection.id === edgeId(edge);
    ctx.beginPath();
    ctx.moveTo(edge.points[0][0], edge.points[0][1]);
    for (let i = 1; i < edge.points.length; i += 1) {
      ctx.lineTo(edge.points[i][0], edge.points[i][1]);
    }
    ctx.setLineDash(edge.kind === "back" ? [6, 3] : []);
    ctx.strokeStyle = selected
      ? STYLE.selected
      : highlighted
        ? STYLE.highlight
        : edge.kind === "back"
          ? STYLE.back
          : STYLE.edge;
    ctx.lineWidth = highlighted || selected ? 3 : 1.5;
    ctx.stroke();
  }

  ctx.setLineDash([]);
  for (const node of visibleNodes(state)) {
    const selected = state.selection?.kind === "node" && state.selection.id === node.id;
    ctx.fillStyle = STYLE.nodeFill;
    ctx.fillRect(node.x - node.w / 2, node.y - node.h / 2, node.w, node.h);
    ctx.strokeStyle = selected ? STYLE.selected : STYLE.nodeStroke;
    ctx.lineWidth = selected ? 3 : 1.2;
    ctx.strokeRect(node.x - node.w / 2, node.y - node.h / 2, node.w, node.h);
  }
  ctx.restore();
}

/**
 * Hit-test an edge endpoint: returns which end of which edge lies within
 * `radius` world units of the point. Edges share center anchors, so ties
 * prefer back edges: jumping along a loop is the interaction that matters.
 */
export function pickEdgeEnd(
  state: ViewerState,
  x: number,
  y: number,
  radius: number = 12,
): { edge: LayoutEdge; end: "src" | "dst" } | null {
  let best: { edge: LayoutEdge; end: "src" | "dst"; key: [number, number] } | null = null;
  for (const edge of state.layout.edges) {
    const first = edge.points[0];
    const last = edge.points[edge.points.length - 1];
    const priority = edge.kind === "back" ? 0 : 1;
    const candidates: ["src" | "dst", number][] = [
      ["src", Math.hypot(first[0] - x, first[1] - y)],
      ["dst", Math.hypot(last[0] - x, last[1] - y)],
    ];
    for (const [end, d] of candidates) {
      const key: [number, number] = [d, priority];
      if (d <= radius && (best === null || key[0] < best.key[0]
          || (key[0] === best.key[0] && key[1] < best.key[1]))) {
        best = { edge, end, key };
      }
    }
  }
  return best === null ? null : { edge: best.edge, end: best.end };
}

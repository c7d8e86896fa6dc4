/**
 * The Layout JSON contract emitted by `veil layout`.
 * A zero-sized node (w === 0 && h === 0) is the virtual sink; it is not
 * drawn but still identifies the program exit.
 */

export interface LayoutNode {
  id: string;
  x: number;
  y: number;
  w: number;
  h: number;
  rank: number;
  ord: number;
}

export type EdgeKind = "tree" | "forward" | "cross" | "back";

export interface LayoutEdge {
  src: string;
  dst: string;
  kind: EdgeKind;
  points: [number, number][];
}

export interface Layout {
  config: { dx: number; dy: number; mode: string };
  bbox: [number, number, number, number];
  nodes: LayoutNode[];
  edges: LayoutEdge[];
}

export class LayoutFormatError extends Error {}

const EDGE_KINDS = new Set(["tree", "forward", "cross", "back"]);

function asNumber(value: unknown, what: string): number {
  if (typeof value !== "number" || !Number.isFinite(value)) {
    throw new LayoutFormatError(`${what} must be a finite number`);
  }
  return value;
}

/** Validate a parsed JSON document against the Layout schema. */
export function validateLayout(doc: unknown): Layout {
  if (typeof doc !== "object" || doc === null) {
    throw new LayoutFormatError("layout must be a JSON object");
  }
  const raw = doc as Record<string, unknown>;
  const config = raw.config as Record<string, unknown> | undefined;
  if (!config) throw new LayoutFormatError("missing config");
  const dx = asNumber(config.dx, "config.dx");
  const dy = asNumber(config.dy, "config.dy");
  const mode = String(config.mode ?? "");
  const bboxRaw = raw.bbox;
  if (!Array.isArray(bboxRaw) || bboxRaw.length !== 4) {
    throw new LayoutFormatError("bbox must be [x0, y0, x1, y1]");
  }
  const bbox = bboxRaw.map((v, i) => asNumber(v, `bbox[${i}]`)) as [number, number, number, number];
  if (!Array.isArray(raw.nodes) || !Array.isArray(raw.edges)) {
    throw new LayoutFormatError("nodes and edges must be arrays");
  }
  const ids = new Set<string>();
  const nodes: LayoutNode[] = raw.nodes.map((item) => {
    const n = item as Record<string, unknown>;
    const id = String(n.id ?? "");
    if (!id) throw new LayoutFormatError("node without id");
    if (ids.has(id)) throw new LayoutFormatError(`duplicate node id ${id}`);
    ids.add(id);
    return {
      id,
      x: asNumber(n.x, `node ${id} x`),
      y: asNumber(n.y, `node ${id} y`),
      w: asNumber(n.w, `node ${id} w`),
      h: asNumber(n.h, `node ${id} h`),
      rank: asNumber(n.rank, `node ${id} rank`),
      ord: asNumber(n.ord, `node ${id} ord`),
    };
  });
  const edges: LayoutEdge[] = raw.edges.map((item, index) => {
    const e = item as Record<string, unknown>;
    const src = String(e.src ?? "");
    const dst = String(e.dst ?? "");
    if (!ids.has(src) || !ids.has(dst)) {
      throw new LayoutFormatError(`edge ${index} references unknown nodes ${src}->${dst}`);
    }
    const kind = String(e.kind ?? "");
    if (!EDGE_KINDS.has(kind)) {
      throw new LayoutFormatError(`edge ${index} has unknown kind ${kind}`);
    }
    const pointsRaw = e.points;
    if (!Array.isArray(pointsRaw) || pointsRaw.length < 2) {
      throw new LayoutFormatError(`edge ${index} needs at least 2 points`);
    }
    const points = pointsRaw.map((p, j) => {
      if (!Array.isArray(p) || p.length !== 2) {
        throw new LayoutFormatError(`edge ${index} point ${j} must be [x, y]`);
      }
      return [asNumber(p[0], "x"), asNumber(p[1], "y")] as [number, number];
    });
    return { src, dst, kind: kind as EdgeKind, points };
  });
  return { config: { dx, dy, mode }, bbox, nodes, edges };
}

export function parseLayout(text: string): Layout {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (err) {
    throw new LayoutFormatError(`not valid JSON: ${(err as Error).message}`);
  }
  return validateLayout(doc);
}

export function isVirtualSink(node: LayoutNode): boolean {
  return node.w === 0 && node.h === 0;
}

/** Edge id used for selection: "src->dst" (edges are unique per pair). */
export function edgeId(edge: LayoutEdge): string {
  return `${edge.src}->${edge.dst}`;
}

export function edgeSpanY(edge: LayoutEdge): number {
  const ys = edge.points.map((p) => p[1]);
  return Math.max(...ys) - Math.min(...ys);
}

/** Long forward edges span at least two rank gaps vertically. */
export function isLongForward(edge: LayoutEdge, dy: number): boolean {
  return edge.kind !== "back" && edgeSpanY(edge) >= 2 * dy;
}

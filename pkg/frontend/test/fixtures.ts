import { Layout } from "../src/types.js";

const DX = 120;
const DY = 90;

/** Small while-loop layout: header n1, body n2..n3, exit n4, back edge n3->n1. */
export function loopLayout(): Layout {
  return {
    config: { dx: DX, dy: DY, mode: "grouped" },
    bbox: [-170, -25, 50, 385],
    nodes: [
      { id: "n0", x: 0, y: 0, w: 100, h: 50, rank: 0, ord: 0 },
      { id: "n1", x: 0, y: 90, w: 100, h: 50, rank: 1, ord: 0 },
      { id: "n2", x: 0, y: 180, w: 100, h: 50, rank: 2, ord: 1 },
      { id: "n3", x: 0, y: 270, w: 100, h: 50, rank: 3, ord: 1 },
      { id: "n4", x: 0, y: 360, w: 100, h: 50, rank: 4, ord: 0 },
    ],
    edges: [
      { src: "n0", dst: "n1", kind: "tree", points: [[0, 0], [0, 90]] },
      { src: "n1", dst: "n2", kind: "tree", points: [[0, 90], [0, 180]] },
      { src: "n2", dst: "n3", kind: "tree", points: [[0, 180], [0, 270]] },
      { src: "n3", dst: "n1", kind: "back", points: [[0, 270], [-120, 180], [0, 90]] },
      { src: "n1", dst: "n4", kind: "tree", points: [[0, 90], [120, 180], [120, 270], [0, 360]] },
    ] as Layout["edges"],
  };
}

/**
 * Synthetic 10k-node layout: one long column with a back edge from the
 * bottom to the top (a giant loop), so jump tests traverse the full span.
 */
export function largeLayout(n: number = 10000): Layout {
  const nodes = [];
  const edges: Layout["edges"] = [];
  for (let i = 0; i < n; i += 1) {
    nodes.push({ id: `n${i}`, x: 0, y: i * DY, w: 100, h: 50, rank: i, ord: i === 0 ? 0 : 1 });
    if (i > 0) {
      edges.push({
        src: `n${i - 1}`,
        dst: `n${i}`,
        kind: "tree",
        points: [[0, (i - 1) * DY], [0, i * DY]],
      });
    }
  }
  edges.push({
    src: `n${n - 1}`,
    dst: "n0",
    kind: "back",
    points: [[0, (n - 1) * DY], [-DX, (n - 2) * DY], [-DX, DY], [0, 0]],
  });
  return {
    config: { dx: DX, dy: DY, mode: "grouped" },
    bbox: [-DX - 50, -25, 50, (n - 1) * DY + 25],
    nodes,
    edges,
  };
}

/**
 * DOM wiring: file/URL ingestion, canvas + label overlay, scroll, zoom,
 * click-to-jump, breadcrumb back, and highlight toggles. All state lives
 * in one immutable ViewerState; every handler swaps it and repaints.
 */

import { pickEdgeEnd, renderScene, visibleLabels, Canvas2D } from "./render.js";
import {
  ViewerState,
  jumpBack,
  jumpToOppositeEndpoint,
  loadLayout,
  resize,
  scrollBy,
  selectNode,
  toggleEdgeClassHighlight,
  zoomTo,
} from "./state.js";
import { Layout, parseLayout } from "./types.js";

let state: ViewerState | null = null;

const canvas = document.getElementById("scene") as HTMLCanvasElement;
const labels = document.getElementById("labels") as HTMLDivElement;
const banner = document.getElementById("banner") as HTMLDivElement;
const fileInput = document.getElementById("file") as HTMLInputElement;
const urlInput = document.getElementById("url") as HTMLInputElement;
const urlButton = document.getElementById("load-url") as HTMLButtonElement;
const backButton = document.getElementById("jump-back") as HTMLButtonElement;
const toggleBack = document.getElementById("toggle-back") as HTMLButtonElement;
const toggleForward = document.getElementById("toggle-forward") as HTMLButtonElement;

function showError(message: string): void {
  banner.textContent = message;
  banner.style.display = "block";
}

function clearError(): void {
  banner.style.display = "none";
}

function repaint(): void {
  if (!state) return;
  const ctx = canvas.getContext("2d") as unknown as Canvas2D;
  renderScene(ctx, state);
  labels.textContent = "";
  const { zoom, scrollX, scrollY } = state.viewport;
  for (const node of visibleLabels(state)) {
    const div = document.createElement("div");
    div.className = "label";
    div.textContent = node.id;
    div.style.left = `${(node.x - scrollX) * zoom}px`;
    div.style.top = `${(node.y - scrollY) * zoom}px`;
    labels.appendChild(div);
  }
}

function setState(next: ViewerState): void {
  state = next;
  repaint();
}

function acceptLayout(layout: Layout): void {
  clearError();
  setState(loadLayout(layout, canvas.width, canvas.height));
}

function parseInWorker(text: string): void {
  if (typeof Worker === "undefined") {
    try {
      acceptLayout(parseLayout(text));
    } catch (err) {
      showError((err as Error).message);
    }
    return;
  }
  const worker = new Worker(new URL("./worker.js", import.meta.url), { type: "module" });
  worker.onmessage = (event: MessageEvent<{ ok: boolean; layout?: Layout; error?: string }>) => {
    worker.terminate();
    if (event.data.ok && event.data.layout) {
      acceptLayout(event.data.layout);
    } else {
      showError(event.data.error ?? "unknown parse failure");
    }
  };
  worker.postMessage(text);
}

fileInput.addEventListener("change", () => {
  const file = fileInput.files?.[0];
  if (!file) return;
  file.text().then(parseInWorker, (err) => showError(String(err)));
});

urlButton.addEventListener("click", () => {
  fetch(urlInput.value)
    .then((response) => {
      if (!response.ok) throw new Error(`fetch failed: ${response.status}`);
      return response.text();
    })
    .then(parseInWorker)
    .catch((err) => showError(String(err)));
});

canvas.addEventListener("wheel", (event) => {
  if (!state) return;
  event.preventDefault();
  if (event.ctrlKey) {
    const factor = event.deltaY < 0 ? 1.1 : 1 / 1.1;
    setState(zoomTo(state, state.viewport.zoom * factor));
  } else {
    setState(scrollBy(state, event.deltaX / state.viewport.zoom, event.deltaY / state.viewport.zoom));
  }
});

canvas.addEventListener("click", (event) => {
  if (!state) return;
  const rect = canvas.getBoundingClientRect();
  const { zoom, scrollX, scrollY } = state.viewport;
  const x = (event.clientX - rect.left) / zoom + scrollX;
  const y = (event.clientY - rect.top) / zoom + scrollY;
  const hit = pickEdgeEnd(state, x, y);
  if (hit) {
    setState(jumpToOppositeEndpoint(state, hit.edge, hit.end));
    return;
  }
  for (const node of state.layout.nodes) {
    if (Math.abs(node.x - x) <= node.w / 2 && Math.abs(node.y - y) <= node.h / 2) {
      setState(selectNode(state, node.id));
      return;
    }
  }
});

backButton.addEventListener("click", () => {
  if (state) setState(jumpBack(state));
});
toggleBack.addEventListener("click", () => {
  if (state) setState(toggleEdgeClassHighlight(state, "back"));
});
toggleForward.addEventListener("click", () => {
  if (state) setState(toggleEdgeClassHighlight(state, "long-forward"));
});

window.addEventListener("resize", () => {
  canvas.width = canvas.clientWidth;
  canvas.height = canvas.clientHeight;
  if (state) setState(resize(state, canvas.width, canvas.height));
});

canvas.width = canvas.clientWidth || 960;
canvas.height = canvas.clientHeight || 720;

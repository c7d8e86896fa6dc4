/// <reference lib="webworker" />
/**
 * Background parser for large layout files: the UI thread hands over the
 * raw text and receives either a validated layout (structured clone is
 * the immutable handoff) or the validation error message.
 */

import { parseLayout } from "./types.js";

self.onmessage = (event: MessageEvent<string>) => {
  try {
    const layout = parseLayout(event.data);
    (self as unknown as Worker).postMessage({ ok: true, layout });
  } catch (err) {
    (self as unknown as Worker).postMessage({ ok: false, error: (err as Error).message });
  }
};

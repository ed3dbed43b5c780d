/** ViewState: a pure function of the last session payload. */

import type { SessionState } from "./api.js";

export interface VertexView {
  id: number;
  sign: string;
  x: number;
  y: number;
}

export interface ArrowView {
  from: number;
  to: number;
  mult: number;
}

export interface ViewState {
  sessionId: string;
  vertices: VertexView[];
  arrows: ArrowView[];
  cMatrix: number[][];
  history: { vertex: number; eps: number }[];
  reddening: { image: number[]; cycles: string } | null;
}

/** Cycle notation for a 1-based permutation image; "id" for the identity. */
export function formatCycles(image: number[]): string {
  const n = image.length;
  const seen = new Set<number>();
  const parts: string[] = [];
  const sep = n >= 10 ? " " : "";
  for (let i = 1; i <= n; i++) {
    if (seen.has(i)) continue;
    const cyc: number[] = [];
    let j = i;
    while (!seen.has(j)) {
      seen.add(j);
      cyc.push(j);
      j = image[j - 1];
    }
    if (cyc.length > 1) parts.push("(" + cyc.join(sep) + ")");
  }
  return parts.length ? parts.join("") : "id";
}

/** Fixed circular layout by vertex index: deterministic, no simulation. */
export function layout(n: number, width: number, height: number): { x: number; y: number }[] {
  const cx = width / 2;
  const cy = height / 2;
  const r = Math.min(width, height) * 0.38;
  const out = [];
  for (let i = 0; i < n; i++) {
    const angle = -Math.PI / 2 + (2 * Math.PI * i) / n;
    out.push({
      x: Math.round((cx + r * Math.cos(angle)) * 100) / 100,
      y: Math.round((cy + r * Math.sin(angle)) * 100) / 100,
    });
  }
  return out;
}

export function buildViewState(
  state: SessionState,
  width = 420,
  height = 420,
): ViewState {
  const n = state.ice_quiver.n;
  const pos = layout(n, width, height);
  return {
    sessionId: state.id,
    vertices: state.signs.map((sign, i) => ({
      id: i + 1,
      sign,
      x: pos[i].x,
      y: pos[i].y,
    })),
    arrows: state.ice_quiver.arrows.map(([from, to, mult]) => ({ from, to, mult })),
    cMatrix: state.ice_quiver.c_matrix ?? [],
    history: state.history.map((h) => ({ vertex: h.vertex, eps: h.eps })),
    reddening: state.reddening
      ? { image: state.reddening, cycles: formatCycles(state.reddening) }
      : null,
  };
}

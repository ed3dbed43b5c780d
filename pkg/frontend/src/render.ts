/** DOM-free string renderers so every view is testable in node. */

import type { SeriesPayload } from "./api.js";
import type { ViewState } from "./state.js";

const SIGN_FILL: Record<string, string> = {
  green: "#3fa34d",
  red: "#d64545",
  incoherent: "#9e9e9e",
};

const R = 17;

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/** SVG for the quiver: circles per vertex (sign-colored), arrows with multiplicity. */
export function renderGraph(view: ViewState, width = 420, height = 420): string {
  const byId = new Map(view.vertices.map((v) => [v.id, v]));
  const parts: string[] = [];
  parts.push(
    `<svg viewBox="0 0 ${width} ${height}" xmlns="http://www.w3.org/2000/svg">`,
    `<defs><marker id="arr" viewBox="0 0 10 10" refX="9" refY="5" ` +
      `markerWidth="7" markerHeight="7" orient="auto-start-reverse">` +
      `<path d="M 0 0 L 10 5 L 0 10 z" fill="#555"/></marker></defs>`,
  );
  for (const a of view.arrows) {
    const s = byId.get(a.from)!;
    const t = byId.get(a.to)!;
    const dx = t.x - s.x;
    const dy = t.y - s.y;
    const len = Math.hypot(dx, dy) || 1;
    const x1 = s.x + (dx / len) * (R + 2);
    const y1 = s.y + (dy / len) * (R + 2);
    const x2 = t.x - (dx / len) * (R + 4);
    const y2 = t.y - (dy / len) * (R + 4);
    parts.push(
      `<line x1="${x1.toFixed(1)}" y1="${y1.toFixed(1)}" x2="${x2.toFixed(1)}" ` +
        `y2="${y2.toFixed(1)}" stroke="#555" stroke-width="1.6" marker-end="url(#arr)"/>`,
    );
    if (a.mult > 1) {
      const mx = (x1 + x2) / 2;
      const my = (y1 + y2) / 2;
      parts.push(
        `<text x="${mx.toFixed(1)}" y="${(my - 5).toFixed(1)}" ` +
          `font-size="12" fill="#333" text-anchor="middle">${a.mult}</text>`,
      );
    }
  }
  for (const v of view.vertices) {
    const fill = SIGN_FILL[v.sign] ?? SIGN_FILL.incoherent;
    const disabled = v.sign === "incoherent";
    parts.push(
      `<g class="vertex${disabled ? " disabled" : ""}" data-vertex="${v.id}">` +
        (disabled ? `<title>sign-incoherent vertex</title>` : "") +
        `<circle cx="${v.x}" cy="${v.y}" r="${R}" fill="${fill}" stroke="#222"/>` +
        `<text x="${v.x}" y="${v.y + 4}" text-anchor="middle" font-size="14" ` +
        `fill="#fff">${v.id}</text></g>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}

export function renderCMatrix(view: ViewState): string {
  const rows = view.cMatrix
    .map(
      (row, i) =>
        `<tr><th>c<sub>${i + 1}</sub></th>` +
        row.map((c) => `<td class="${c > 0 ? "pos" : c < 0 ? "neg" : ""}">${c}</td>`).join("") +
        "</tr>",
    )
    .join("");
  return `<table class="cmatrix"><tbody>${rows}</tbody></table>`;
}

export function renderHistory(view: ViewState): string {
  if (!view.history.length) return `<span class="muted">no mutations yet</span>`;
  return view.history
    .map(
      (h) =>
        `<span class="chip ${h.eps === 1 ? "green" : "red"}">&mu;<sub>${h.vertex}</sub></span>`,
    )
    .join("");
}

export function renderBanner(view: ViewState): string {
  if (!view.reddening) {
    return `<div class="banner idle">mutate until every vertex is red to close the loop</div>`;
  }
  return `<div class="banner done">reddening reached, &phi; = ${esc(view.reddening.cycles)}</div>`;
}

/** beta -> coefficient table from the exact series payload sent by the server. */
export function renderSeriesTable(payload: SeriesPayload): string {
  const rows = payload.terms
    .map(
      (t) =>
        `<tr><td>(${t.beta.join(", ")})</td><td><code>${esc(t.pretty)}</code></td></tr>`,
    )
    .join("");
  return (
    `<table class="series"><thead><tr><th>&beta;</th><th>coefficient</th></tr></thead>` +
    `<tbody>${rows}</tbody></table>`
  );
}

export function renderToasts(toasts: string[]): string {
  return toasts.map((t) => `<div class="toast">${esc(t)}</div>`).join("");
}

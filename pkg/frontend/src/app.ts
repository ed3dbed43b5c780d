/** Browser bootstrap: wires the controller to the page. */

import { ApiClient } from "./api.js";
import { Explorer } from "./controller.js";
import {
  renderBanner,
  renderCMatrix,
  renderGraph,
  renderHistory,
  renderSeriesTable,
  renderToasts,
} from "./render.js";

const DEFAULT_QUIVER = { n: 2, arrows: [[1, 2, 1]] };

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

function apiBase(): string {
  const params = new URLSearchParams(window.location.search);
  return params.get("api") ?? "http://127.0.0.1:8000";
}

async function main(): Promise<void> {
  const app = new Explorer(new ApiClient(apiBase()));

  const draw = () => {
    const view = app.view;
    if (!view) return;
    el("graph").innerHTML = renderGraph(view);
    el("cmatrix").innerHTML = renderCMatrix(view);
    el("history").innerHTML = renderHistory(view);
    el("banner").innerHTML = renderBanner(view);
    el("toasts").innerHTML = renderToasts(app.toasts.slice(-3));
    (el("series-btn") as HTMLButtonElement).disabled = !view.reddening;
    el("series").innerHTML = app.seriesPayload
      ? renderSeriesTable(app.seriesPayload)
      : `<span class="muted">${
          view.reddening ? "request the series for the closed loop" : "no closed loop yet"
        }</span>`;
    for (const g of el("graph").querySelectorAll("g.vertex:not(.disabled)")) {
      g.addEventListener("click", () => {
        const v = Number((g as SVGGElement).dataset.vertex);
        app.clickVertex(v).then(draw);
      });
    }
  };

  el("undo-btn").addEventListener("click", () => app.undo().then(draw));
  el("series-btn").addEventListener("click", () => {
    const degree = Number((el("degree") as HTMLInputElement).value) || 4;
    app.requestSeries(degree).then(draw);
  });
  el("load-btn").addEventListener("click", () => {
    try {
      const quiver = JSON.parse((el("quiver-input") as HTMLTextAreaElement).value);
      app.start(quiver).then(draw);
    } catch (err) {
      el("toasts").innerHTML = renderToasts([`bad quiver JSON: ${err}`]);
    }
  });

  (el("quiver-input") as HTMLTextAreaElement).value = JSON.stringify(DEFAULT_QUIVER);
  await app.start(DEFAULT_QUIVER);
  draw();
}

main();

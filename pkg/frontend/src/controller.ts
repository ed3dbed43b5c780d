/** UI controller: every transition goes through the HTTP API (no client math).
 *  DOM-free so the pentagon click-through is testable under node. */

import { ApiClient, type SeriesPayload, type SessionState } from "./api.js";
import { buildViewState, type ViewState } from "./state.js";

export class Explorer {
  view: ViewState | null = null;
  /** Exact response text of the last q-series request. */
  seriesText: string | null = null;
  seriesPayload: SeriesPayload | null = null;
  toasts: string[] = [];
  busy = false;

  constructor(private api: ApiClient) {}

  private accept(state: SessionState): void {
    this.view = buildViewState(state);
    if (!this.view.reddening) {
      this.seriesText = null;
      this.seriesPayload = null;
    }
  }

  private toast(message: string): void {
    this.toasts.push(message);
  }

  async start(quiver: unknown): Promise<void> {
    const res = await this.api.createSession(quiver);
    if (res.status !== 200 || !res.json) {
      this.toast(`could not create session (${res.status})`);
      return;
    }
    this.accept(res.json.state);
  }

  get bannerText(): string {
    if (!this.view) return "";
    return this.view.reddening
      ? `reddening reached, φ = ${this.view.reddening.cycles}`
      : "";
  }

  async clickVertex(vertex: number): Promise<void> {
    if (!this.view || this.busy) return;
    this.busy = true;
    try {
      const res = await this.api.mutate(this.view.sessionId, vertex);
      if (res.status === 200 && res.json) {
        this.accept(res.json);
      } else {
        this.toast(res.json ? (res.json as any).error : `mutate failed (${res.status})`);
      }
    } catch (err) {
      this.toast(`network error: ${err}`);
    } finally {
      this.busy = false;
    }
  }

  async undo(): Promise<void> {
    if (!this.view || this.busy) return;
    this.busy = true;
    try {
      const res = await this.api.undo(this.view.sessionId);
      if (res.status === 200 && res.json) {
        this.accept(res.json);
      } else {
        this.toast(res.json ? (res.json as any).error : `undo failed (${res.status})`);
      }
    } finally {
      this.busy = false;
    }
  }

  async requestSeries(degree: number): Promise<void> {
    if (!this.view) return;
    const res = await this.api.qseries(this.view.sessionId, degree);
    if (res.status === 409) {
      this.toast("close the loop first: the q-series needs a reddening state");
      return;
    }
    if (res.status !== 200 || !res.json) {
      this.toast(res.json ? (res.json as any).error : `q-series failed (${res.status})`);
      return;
    }
    this.seriesText = res.text;
    this.seriesPayload = res.json;
  }
}

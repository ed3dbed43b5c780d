/** Thin typed client for the session service. No math happens here. */

export interface QuiverJson {
  n: number;
  arrows: [number, number, number][];
  c_matrix?: number[][];
}

export interface HistoryStep {
  vertex: number;
  eps: number;
}

export interface SessionState {
  id: string;
  ice_quiver: QuiverJson;
  signs: string[];
  history: HistoryStep[];
  reddening: number[] | null;
}

export interface SeriesTerm {
  beta: number[];
  coeff: { L: number; num: number[]; den: number[] };
  pretty: string;
}

export interface SeriesPayload {
  n: number;
  D: number;
  L: number;
  terms: SeriesTerm[];
}

export interface ApiResult<T> {
  status: number;
  /** Exact body text as sent by the server. */
  text: string;
  json: T | null;
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

async function wrap<T>(resp: Response): Promise<ApiResult<T>> {
  const text = await resp.text();
  let json: T | null = null;
  try {
    json = JSON.parse(text) as T;
  } catch {
    json = null;
  }
  return { status: resp.status, text, json };
}

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private post<T>(path: string, body: unknown): Promise<ApiResult<T>> {
    return this.fetchImpl(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    }).then((r) => wrap<T>(r));
  }

  private get<T>(path: string): Promise<ApiResult<T>> {
    return this.fetchImpl(this.baseUrl + path).then((r) => wrap<T>(r));
  }

  createSession(quiver: unknown): Promise<ApiResult<{ id: string; state: SessionState }>> {
    return this.post("/sessions", { quiver });
  }

  getSession(id: string): Promise<ApiResult<SessionState>> {
    return this.get(`/sessions/${id}`);
  }

  mutate(id: string, vertex: number): Promise<ApiResult<SessionState>> {
    return this.post(`/sessions/${id}/mutate`, { vertex });
  }

  undo(id: string): Promise<ApiResult<SessionState>> {
    return this.post(`/sessions/${id}/undo`, {});
  }

  qseries(id: string, degree: number): Promise<ApiResult<SeriesPayload>> {
    return this.post(`/sessions/${id}/qseries`, { degree });
  }

  exportTrace(id: string): Promise<ApiResult<unknown>> {
    return this.get(`/sessions/${id}/export`);
  }
}

// Typed client for the chunkmind HTTP service. The console holds no KB
// logic; everything rendered comes from these endpoints.

export interface TranscriptTurn {
  utterance: string;
  response: string;
  timestamp: string;
}

export interface KbDelta {
  entity: string;
  space: string;
  old_quantity: number | null;
  new_quantity: number | null;
  at: string;
}

export interface UtteranceResult {
  response: string;
  kb_delta: KbDelta[];
}

export interface SessionInfo {
  session_id: string;
  speaker: string;
  addressee: string;
  kb: string;
}

export interface GraphNode {
  id: string;
  name: string;
  proper: boolean;
}

export interface GraphEdge {
  from: string;
  to: string;
  space: string;
  style: "solid" | "dashed";
}

export interface GraphDoc {
  center: string | null;
  vice_centers: string[];
  nodes: GraphNode[];
  edges: GraphEdge[];
}

export interface SpmLayer {
  layer: number;
  vertices: string[];
  matrix: Record<string, Record<string, string | null>>;
}

export interface SpmDoc {
  layers: SpmLayer[];
  tree: { child: string; parent: string }[];
}

export interface EntityRecord {
  space: string;
  value: unknown;
  quantity: number | null;
  cts: string;
  tts: string; // "OPEN" for the live record
}

export interface EntityDoc {
  id: string;
  name: string;
  proper: boolean;
  records: EntityRecord[];
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  private fetchFn: FetchLike;

  constructor(readonly base: string, fetchFn?: FetchLike) {
    this.fetchFn = fetchFn ?? ((url, init) => globalThis.fetch(url, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await this.fetchFn(this.base + path, init);
    if (!res.ok) {
      throw new ApiError(res.status, `${res.status}: ${await res.text()}`);
    }
    return (await res.json()) as T;
  }

  createSession(body: Record<string, unknown> = {}): Promise<SessionInfo> {
    return this.request("/session", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  sendUtterance(sessionId: string, text: string): Promise<UtteranceResult> {
    return this.request(`/session/${sessionId}/utterance`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ text }),
    });
  }

  getGraph(sessionId: string): Promise<GraphDoc> {
    return this.request(`/session/${sessionId}/graph`);
  }

  getSpm(sessionId: string): Promise<SpmDoc> {
    return this.request(`/session/${sessionId}/spm`);
  }

  getEntity(sessionId: string, name: string): Promise<EntityDoc> {
    return this.request(`/session/${sessionId}/entity/${encodeURIComponent(name)}`);
  }

  async getTranscript(sessionId: string): Promise<TranscriptTurn[]> {
    const doc = await this.request<{ transcript: TranscriptTurn[] }>(
      `/session/${sessionId}/transcript`,
    );
    return doc.transcript;
  }
}

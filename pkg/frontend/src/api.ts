/**
 * Thin typed client over the review service HTTP API. The fetch
 * implementation is injectable so tests can run against a recording
 * stub instead of a live server.
 */

import type {
  Bank,
  Importance,
  SessionRecord,
  SpanText,
  TranscriptDetail,
  TranscriptListItem,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let code = "unknown";
  let message = response.statusText || `HTTP ${response.status}`;
  try {
    const body = await response.json();
    if (body && typeof body.code === "string") code = body.code;
    if (body && typeof body.message === "string") message = body.message;
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(response.status, code, message);
}

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (url, init) => globalThis.fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, init);
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as T;
  }

  listTranscripts(): Promise<{ transcripts: TranscriptListItem[] }> {
    return this.request("/api/transcripts");
  }

  getTranscript(transcriptId: string): Promise<TranscriptDetail> {
    return this.request(`/api/transcripts/${encodeURIComponent(transcriptId)}`);
  }

  getSpan(transcriptId: string, ref: string): Promise<SpanText> {
    const tid = encodeURIComponent(transcriptId);
    return this.request(`/api/transcripts/${tid}/span?ref=${encodeURIComponent(ref)}`);
  }

  getSession(sessionId: string): Promise<SessionRecord> {
    return this.request(`/api/sessions/${encodeURIComponent(sessionId)}`);
  }

  createSession(
    kind: "comparison" | "refinement",
    transcriptId: string,
    summaries: string[],
  ): Promise<{ session_id: string; status: string }> {
    return this.request("/api/sessions", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ kind, transcript_id: transcriptId, summaries }),
    });
  }

  patchImportance(sessionId: string, nuggetId: string, importance: Importance): Promise<Bank> {
    const sid = encodeURIComponent(sessionId);
    const nid = encodeURIComponent(nuggetId);
    return this.request(`/api/sessions/${sid}/nuggets/${nid}`, {
      method: "PATCH",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ importance }),
    });
  }
}

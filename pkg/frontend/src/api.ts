/**
 * Typed client for the review API.
 *
 * Every request the interface makes goes through this class, so the
 * full surface it touches is the handful of `/api` routes below.  The
 * fetch implementation is injectable for tests.
 */

import type {
  Correction,
  DocumentSummary,
  LabelVocabularies,
  MetricsReportPayload,
  ScatterPoint,
  SearchHit,
  StatementRecord,
  StatementsPayload,
  ValidationDetail,
} from "./types.js";

/** Minimal fetch signature the client depends on. */
export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

/** Error carrying the HTTP status and the server's `detail` payload. */
export class ApiError extends Error {
  readonly status: number;
  readonly detail: ValidationDetail | string;

  constructor(status: number, detail: ValidationDetail | string) {
    const text = typeof detail === "string" ? detail : detail.message;
    super(`HTTP ${status}: ${text}`);
    this.name = "ApiError";
    this.status = status;
    this.detail = detail;
  }

  /** Labels the server refused, when it said which ones. */
  get offending(): string[] {
    if (typeof this.detail === "string") return [];
    return this.detail.offending ?? [];
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let detail: ValidationDetail | string = response.statusText;
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (typeof body.detail === "string") {
      detail = body.detail;
    } else if (body.detail && typeof body.detail === "object") {
      detail = body.detail as ValidationDetail;
    }
  } catch {
    // Non-JSON error body; keep the status text.
  }
  return new ApiError(response.status, detail);
}

export class ApiClient {
  private readonly fetchImpl: FetchLike;
  private readonly base: string;

  constructor(fetchImpl?: FetchLike, base = "") {
    this.fetchImpl =
      fetchImpl ?? ((input, init) => globalThis.fetch(input, init));
    this.base = base.replace(/\/$/, "");
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.base + path, init);
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  /** `GET /api/documents` */
  documents(): Promise<DocumentSummary[]> {
    return this.request("GET", "/api/documents");
  }

  /** `GET /api/documents/{id}/statements` */
  statements(documentId: string): Promise<StatementsPayload> {
    return this.request(
      "GET",
      `/api/documents/${encodeURIComponent(documentId)}/statements`,
    );
  }

  /**
   * `PUT /api/statements/{id}/labels`
   *
   * Statement ids contain a slash (`doc/s3`), which the route expects
   * verbatim, so the id is not percent-encoded.  The body carries only
   * labels, statement type, and reviewer note — the three fields a
   * reviewer may write.
   */
  correct(statementId: string, correction: Correction): Promise<StatementRecord> {
    const body: Correction = {};
    if (correction.labels !== undefined) body.labels = correction.labels;
    if (correction.stype !== undefined) body.stype = correction.stype;
    if (correction.note !== undefined) body.note = correction.note;
    return this.request("PUT", `/api/statements/${statementId}/labels`, body);
  }

  /** `POST /api/metrics/recompute` */
  recompute(): Promise<MetricsReportPayload> {
    return this.request("POST", "/api/metrics/recompute");
  }

  /** `GET /api/metrics/scatter` */
  scatter(): Promise<ScatterPoint[]> {
    return this.request("GET", "/api/metrics/scatter");
  }

  /** `GET /api/labels` */
  labels(): Promise<LabelVocabularies> {
    return this.request("GET", "/api/labels");
  }

  /** `GET /api/search` */
  search(
    q: string,
    options: { country?: string; legalAct?: boolean } = {},
  ): Promise<SearchHit[]> {
    const params = new URLSearchParams({ q });
    if (options.country !== undefined) params.set("country", options.country);
    if (options.legalAct !== undefined) {
      params.set("legal_act", String(options.legalAct));
    }
    return this.request("GET", `/api/search?${params.toString()}`);
  }
}

/**
 * Shapes of the JSON payloads served by the review API.
 *
 * The interface renders exclusively from these payloads: every label,
 * status badge, and scatter position shown on screen comes from a
 * field defined here, never from client-side bookkeeping.
 */

/** The two statement layers; each has its own label vocabulary. */
export type StatementLayer = "regulative" | "constitutive";

/** Row of `GET /api/documents`. */
export interface DocumentSummary {
  id: string;
  metadata: Record<string, unknown>;
  sentences: number;
}

/** Token surface forms attached to each statement payload. */
export interface TokenInfo {
  index: number;
  surface: string;
}

/**
 * One annotated statement as served by
 * `GET /api/documents/{id}/statements` and returned by
 * `PUT /api/statements/{id}/labels`.
 *
 * `labels` is the untouched automatic annotation; `corrected_labels`
 * is the reviewer overlay (or null); `effective_labels` is the merged
 * view the server computes from both.  The PUT response omits
 * `tokens`, so clients keep the token list from the original fetch.
 */
export interface StatementRecord {
  document: string;
  statement: string;
  stype: string;
  labels: Record<string, string>;
  provenance: Record<string, string>;
  flags: string[];
  atomics: Array<Record<string, unknown>>;
  status: string;
  note: string;
  corrected_labels: Record<string, string> | null;
  effective_labels: Record<string, string>;
  tokens?: TokenInfo[];
}

/** Envelope of `GET /api/documents/{id}/statements`. */
export interface StatementsPayload {
  document: string;
  statements: StatementRecord[];
}

/**
 * Body of `PUT /api/statements/{id}/labels`.
 *
 * These three fields are the only ones the interface ever writes;
 * everything else in a {@link StatementRecord} is server-owned.
 */
export interface Correction {
  labels?: Record<string, string>;
  stype?: string;
  note?: string;
}

/** Validation detail the server attaches to a 422 response. */
export interface ValidationDetail {
  message: string;
  offending?: string[];
}

/** Row of `GET /api/metrics/scatter`: one entity, plot-ready. */
export interface ScatterPoint {
  entity: string;
  kind: string;
  visibility: number;
  centrality: number;
}

/** Quadrant block inside the recompute report. */
export interface QuadrantsPayload {
  defined: boolean;
  diagnostic?: string | null;
  visibility_median: number | null;
  centrality_median: number | null;
  rows: Array<Record<string, unknown>>;
}

/** Response of `POST /api/metrics/recompute`. */
export interface MetricsReportPayload {
  statement_count: number;
  s: number;
  rows: Array<Record<string, unknown>>;
  quadrants: QuadrantsPayload;
}

/** Response of `GET /api/labels`: legal labels per layer. */
export interface LabelVocabularies {
  regulative: string[];
  constitutive: string[];
}

/** Row of `GET /api/search`. */
export interface SearchHit {
  id: string;
  score: number;
}

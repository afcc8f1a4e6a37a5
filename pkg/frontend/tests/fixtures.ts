/**
 * Shared fixtures: the label vocabularies as `/api/labels` serves
 * them, a dashboard-sized scatter payload (9 actors + 7 objects), and
 * a statement-record builder matching the API shapes.
 */

import type {
  LabelVocabularies,
  ScatterPoint,
  StatementRecord,
  TokenInfo,
} from "../src/types.js";

/** Mirror of `GET /api/labels` (sorted, like the server sends). */
export const VOCAB: LabelVocabularies = {
  regulative: [
    "A",
    "A-prop",
    "B-dir",
    "B-ind",
    "B-prop",
    "CTX",
    "D",
    "I",
    "NONE",
  ],
  constitutive: ["CTX", "E", "E-prop", "F", "M", "NONE", "P", "P-prop"],
};

/**
 * A full-lexicon scatter payload: all sixteen entities the default
 * lexicon tracks, nine actors and seven objects, with visibility and
 * centrality values in the ranges the measures actually produce.
 */
export const DASHBOARD_PAYLOAD: ScatterPoint[] = [
  { entity: "State Party", kind: "Actor", visibility: 3.2, centrality: 1.0 },
  { entity: "General Assembly", kind: "Actor", visibility: 0.4, centrality: 0.55 },
  { entity: "Secretariat", kind: "Actor", visibility: 1.1, centrality: 0.8 },
  {
    entity: "States Members of the Committee",
    kind: "Actor",
    visibility: 0.3,
    centrality: 0.5,
  },
  { entity: "Individual", kind: "Actor", visibility: 0.15, centrality: 0.35 },
  {
    entity: "Intergovernmental Committee",
    kind: "Actor",
    visibility: 2.4,
    centrality: 0.9,
  },
  {
    entity: "Non-governmental organization",
    kind: "Actor",
    visibility: 0.5,
    centrality: 0.6,
  },
  { entity: "Community", kind: "Actor", visibility: 0.9, centrality: 0.7 },
  { entity: "Group", kind: "Actor", visibility: 0.45, centrality: 0.65 },
  { entity: "Convention", kind: "Object", visibility: 1.6, centrality: 0.75 },
  { entity: "Fund", kind: "Object", visibility: 0.8, centrality: 0.6 },
  {
    entity: "Intangible cultural heritage",
    kind: "Object",
    visibility: 2.1,
    centrality: 0.85,
  },
  { entity: "List", kind: "Object", visibility: 1.3, centrality: 0.7 },
  { entity: "Report", kind: "Object", visibility: 0.7, centrality: 0.55 },
  { entity: "Inventory", kind: "Object", visibility: 0.6, centrality: 0.5 },
  { entity: "Directive", kind: "Object", visibility: 0.1, centrality: 0.2 },
];

export const ACTOR_COUNT = 9;
export const OBJECT_COUNT = 7;

export function tokens(surfaces: string[]): TokenInfo[] {
  return surfaces.map((surface, position) => ({
    index: position + 1,
    surface,
  }));
}

/** Build a statement record the way the API serializes one. */
export function statementRecord(
  overrides: Partial<StatementRecord> & {
    statement: string;
    stype: string;
    labels: Record<string, string>;
  },
): StatementRecord {
  return {
    document: overrides.statement.split("/")[0] ?? "doc",
    provenance: {},
    flags: [],
    atomics: [],
    status: "auto",
    note: "",
    corrected_labels: null,
    effective_labels: { ...overrides.labels },
    ...overrides,
  };
}

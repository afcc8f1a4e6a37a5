/**
 * In-memory stand-in for the review API, serving the three-sentence
 * fixture corpus the backend's own tests pin down:
 *
 *   conv/s0  The Secretariat shall review the report through the
 *            Committee.                  (regulative; "the Committee"
 *                                         machine-labeled CTX)
 *   conv/s1  The State Party shall submit the report to the
 *            Committee.                  (regulative; "the Committee"
 *                                         machine-labeled B-ind)
 *   conv/s2  The Fund must include the inventory.  (constitutive)
 *
 * The Committee's visibility is hand-derived: each indirect-object
 * occurrence carries weight 4, and the corpus expands to 3 atomic
 * statements, so one occurrence gives 4/3 and correcting s0's CTX to
 * B-ind adds a second for 8/3 — a move of exactly 4/3.  The backend
 * computes the same numbers for this corpus, so a client driven
 * against this fake sees the payloads the real server would send.
 *
 * Corrections live in an overlay, like the real store: machine labels
 * stay untouched underneath, `effective_labels` merges the overlay on
 * top, and any accepted correction flips the statement's status to
 * "expert-corrected".
 */

import type { FetchLike } from "../src/api.js";
import type {
  Correction,
  ScatterPoint,
  StatementRecord,
} from "../src/types.js";
import { statementRecord, tokens, VOCAB } from "./fixtures.js";

interface Fixture {
  surfaces: string[];
  stype: string;
  labels: Record<string, string>;
}

const FIXTURES: Record<string, Fixture> = {
  "conv/s0": {
    surfaces: "The Secretariat shall review the report through the Committee ."
      .split(" "),
    stype: "regulative",
    labels: {
      "1": "A",
      "2": "A",
      "3": "D",
      "4": "I",
      "5": "B-dir",
      "6": "B-dir",
      "7": "CTX",
      "8": "CTX",
      "9": "CTX",
      "10": "NONE",
    },
  },
  "conv/s1": {
    surfaces: "The State Party shall submit the report to the Committee ."
      .split(" "),
    stype: "regulative",
    labels: {
      "1": "A",
      "2": "A",
      "3": "A",
      "4": "D",
      "5": "I",
      "6": "B-dir",
      "7": "B-dir",
      "8": "NONE",
      "9": "B-ind",
      "10": "B-ind",
      "11": "NONE",
    },
  },
  "conv/s2": {
    surfaces: "The Fund must include the inventory .".split(" "),
    stype: "constitutive",
    labels: {
      "1": "E",
      "2": "E",
      "3": "M",
      "4": "F",
      "5": "P",
      "6": "P",
      "7": "NONE",
    },
  },
};

/** Token index of "Committee" in each regulative sentence. */
const COMMITTEE_TOKENS: Record<string, string> = {
  "conv/s0": "9",
  "conv/s1": "10",
};

const ATOMIC_COUNT = 3;
const INDIRECT_OBJECT_WEIGHT = 4;

function json(payload: unknown, status = 200): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

export class FakeBackend {
  /** Every PUT body the client sent, in order. */
  puts: Array<{ statementId: string; body: Correction }> = [];
  recomputeCalls = 0;
  /** When set, the next PUT fails with this 422 detail, then clears. */
  failNextPut: { message: string; offending?: string[] } | null = null;

  private corrected = new Map<string, Record<string, string>>();
  private stypes = new Map<string, string>();
  private notes = new Map<string, string>();
  private statuses = new Map<string, string>();

  readonly fetch: FetchLike = async (input, init) => {
    const path = input.split("?")[0] ?? input;
    const method = init?.method ?? "GET";
    if (method === "GET" && path === "/api/labels") {
      return json(VOCAB);
    }
    if (method === "GET" && path === "/api/documents") {
      return json([
        { id: "conv", metadata: { country: "XY" }, sentences: 3 },
      ]);
    }
    if (method === "GET" && path === "/api/documents/conv/statements") {
      return json({
        document: "conv",
        statements: Object.keys(FIXTURES).map((id) => this.record(id, true)),
      });
    }
    if (method === "PUT" && path.startsWith("/api/statements/")) {
      return this.handlePut(path, init?.body);
    }
    if (method === "POST" && path === "/api/metrics/recompute") {
      this.recomputeCalls += 1;
      return json({
        statement_count: ATOMIC_COUNT,
        s: 1,
        rows: [],
        quadrants: {
          defined: true,
          visibility_median: 1,
          centrality_median: 1,
          rows: [],
        },
      });
    }
    if (method === "GET" && path === "/api/metrics/scatter") {
      return json(this.scatter());
    }
    return json("no such route", 404);
  };

  private effectiveStype(id: string): string {
    return this.stypes.get(id) ?? FIXTURES[id]?.stype ?? "regulative";
  }

  private effectiveLabels(id: string): Record<string, string> {
    const fixture = FIXTURES[id];
    if (fixture === undefined) return {};
    // A layer switch resets the machine labels underneath the overlay.
    const base = this.stypes.has(id)
      ? Object.fromEntries(Object.keys(fixture.labels).map((k) => [k, "NONE"]))
      : { ...fixture.labels };
    return { ...base, ...this.corrected.get(id) };
  }

  private record(id: string, withTokens: boolean): StatementRecord {
    const fixture = FIXTURES[id];
    if (fixture === undefined) throw new Error(`no fixture ${id}`);
    const overlay = this.corrected.get(id);
    const payload = statementRecord({
      statement: id,
      stype: this.effectiveStype(id),
      labels: { ...fixture.labels },
      status: this.statuses.get(id) ?? "auto",
      note: this.notes.get(id) ?? "",
      corrected_labels: overlay === undefined ? null : { ...overlay },
      effective_labels: this.effectiveLabels(id),
    });
    if (withTokens) {
      payload.tokens = tokens(fixture.surfaces);
    } else {
      delete payload.tokens;
    }
    return payload;
  }

  private handlePut(path: string, rawBody: unknown): Response {
    const id = path
      .replace("/api/statements/", "")
      .replace(/\/labels$/, "");
    const fixture = FIXTURES[id];
    if (fixture === undefined) {
      return json({ detail: `no statement ${id}` }, 404);
    }
    const body = JSON.parse(String(rawBody)) as Correction;
    this.puts.push({ statementId: id, body });

    if (this.failNextPut !== null) {
      const detail = this.failNextPut;
      this.failNextPut = null;
      return json({ detail }, 422);
    }

    const stype = body.stype ?? this.effectiveStype(id);
    const legal =
      stype === "regulative" ? VOCAB.regulative : VOCAB.constitutive;
    const offending = Object.values(body.labels ?? {}).filter(
      (label) => !legal.includes(label),
    );
    if (offending.length > 0) {
      return json(
        {
          detail: {
            message: `labels not legal for ${stype} statements`,
            offending,
          },
        },
        422,
      );
    }

    if (body.stype !== undefined) {
      this.stypes.set(id, body.stype);
      this.corrected.set(id, { ...(body.labels ?? {}) });
    } else if (body.labels !== undefined) {
      this.corrected.set(id, {
        ...(this.corrected.get(id) ?? {}),
        ...body.labels,
      });
    }
    if (body.note !== undefined) {
      this.notes.set(id, body.note);
    }
    this.statuses.set(id, "expert-corrected");
    return json(this.record(id, false));
  }

  /** Committee moves with its B-ind occurrences; the rest sit still. */
  private scatter(): ScatterPoint[] {
    let occurrences = 0;
    for (const [id, token] of Object.entries(COMMITTEE_TOKENS)) {
      if (this.effectiveLabels(id)[token] === "B-ind") {
        occurrences += 1;
      }
    }
    const committee =
      (INDIRECT_OBJECT_WEIGHT * occurrences) / ATOMIC_COUNT;
    return [
      { entity: "Secretariat", kind: "Actor", visibility: 2, centrality: 1 },
      { entity: "State Party", kind: "Actor", visibility: 2, centrality: 1 },
      {
        entity: "Intergovernmental Committee",
        kind: "Actor",
        visibility: committee,
        centrality: 0.75,
      },
      { entity: "Report", kind: "Object", visibility: 10 / 3, centrality: 1 },
      { entity: "Fund", kind: "Object", visibility: 2, centrality: 0.5 },
    ];
  }
}

export function committeePoint(
  points: Array<{ entity: string; x: number }>,
): number {
  const row = points.find(
    (point) => point.entity === "Intergovernmental Committee",
  );
  if (row === undefined) throw new Error("Committee missing from scatter");
  return row.x;
}
